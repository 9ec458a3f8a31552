//! Acceptance criteria 1 to 10. Each criterion prints one PASS/FAIL line;
//! run with `--nocapture` to see them.

use std::collections::BTreeSet;
use std::time::Instant;

use tensec::cli::{cmd_check, cmd_conditions, RunConfig};
use tensec::format::{framework_file, graph_file};
use tensec_core::analysis::{self, oracle, pairing_identity_holds, sample_placement, CheckOptions, Draw};
use tensec_core::conditions::{failed_conditions, generate_system, witness_from_quantization, ProjectionOrder};
use tensec_core::cycles::{
    choose_aux_line, cycle_equilibrium_basis, is_trivial, monodromy, project_cycle, FramedCycle,
};
use tensec_core::fixtures;
use tensec_core::framework::{
    equilibrium_forceload_basis, find_non_parallelizable, forceload_from_stress, hf_surgery_framework,
    self_stress_basis, Framework,
};
use tensec_core::projective::{AffineChart, ProjLine};
use tensec_core::quantization::{
    construct_forceload, default_trees, induced_stress, is_consistent, quantization_from_stress, CycleMode,
};
use tensec_core::rng::derive;
use tensec_core::sampling;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn chart() -> AffineChart {
    AffineChart::standard()
}

fn stress_dims(pos: &Framework, neg: &Framework) -> Outcome {
    let p = self_stress_basis(pos, &chart()).map_err(|e| e.to_string())?;
    let n = self_stress_basis(neg, &chart()).map_err(|e| e.to_string())?;
    ensure(p.len() == 1, || format!("positive dimension {}", p.len()))?;
    ensure(p[0].weights.iter().all(|w| *w != numeric_zero()), || "a zero edge weight".into())?;
    ensure(n.is_empty(), || format!("negative dimension {}", n.len()))?;
    Ok("dimensions 1 and 0, all weights nonzero".into())
}

fn numeric_zero() -> tensec_core::numeric::Scalar {
    tensec_core::numeric::int(0)
}

fn criterion_1() -> Outcome {
    stress_dims(&fixtures::desargues_pos(), &fixtures::desargues_neg())
}

fn criterion_2() -> Outcome {
    stress_dims(&fixtures::pascal_pos(), &fixtures::pascal_neg())
}

fn cycle_sample(i: u64) -> FramedCycle {
    let k = 3 + (i % 5) as usize;
    let seed = derive(0xacce, i);
    if i % 2 == 0 {
        sampling::random_framed_cycle(k, seed)
    } else {
        sampling::random_balanced_framed_cycle(k, seed)
    }
}

fn criterion_3() -> Outcome {
    let (mut agree, mut trivial) = (0, 0);
    for i in 0..500 {
        let c = cycle_sample(i);
        let aux = choose_aux_line(&c, derive(i, 7));
        let t = is_trivial(&monodromy(&c, 0, &aux).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let eq = !cycle_equilibrium_basis(&c).is_empty();
        ensure(t == eq, || format!("cycle {i} (k = {}): monodromy {t}, equilibrium {eq}", c.len()))?;
        agree += 1;
        trivial += t as usize;
    }
    ensure(trivial > 0 && trivial < 500, || "only one verdict occurred".into())?;
    Ok(format!("{agree}/500 agree ({trivial} trivial)"))
}

fn criterion_4() -> Outcome {
    let mut projections = 0;
    for i in 0..200 {
        let c = cycle_sample(1000 + i);
        let k = c.len();
        let a1 = choose_aux_line(&c, derive(i, 1));
        let a2 = choose_aux_line(&c, derive(i, 2));
        let err = |e: tensec_core::Error| format!("cycle {i}: {e}");
        let t1 = is_trivial(&monodromy(&c, 0, &a1).map_err(err)?).map_err(err)?;
        let t2 = is_trivial(&monodromy(&c, 0, &a2).map_err(err)?).map_err(err)?;
        ensure(t1 == t2, || format!("cycle {i}: aux lines disagree"))?;
        for base in 1..k {
            let t = is_trivial(&monodromy(&c, base, &a1).map_err(err)?).map_err(err)?;
            ensure(t == t1, || format!("cycle {i}: base {base} disagrees"))?;
        }
        if k < 4 {
            continue;
        }
        let at = (i as usize) % k;
        let Ok(p) = project_cycle(&c, at) else { continue };
        let drop = (at + 1) % k;
        for j in (0..k).filter(|&j| j != at && j != drop) {
            let nj = if j > drop { j - 1 } else { j };
            let before = monodromy(&c, j, &a1).map_err(err)?;
            let after = monodromy(&p, nj, &a1).map_err(err)?;
            ensure(before.projectively_equal(&after), || format!("cycle {i}: projection at {at} changes the monodromy at {j}"))?;
        }
        projections += 1;
    }
    ensure(projections >= 100, || format!("only {projections} projections were defined"))?;
    Ok(format!("200/200 invariant, {projections} projections compared"))
}

fn criterion_5() -> Outcome {
    let mut stressed = 0;
    for i in 0..100u64 {
        let (fw, roles) = if i % 2 == 0 {
            sampling::random_h_framework(derive(0x5e, i))
        } else {
            sampling::desargues_h_framework(derive(0x5e, i))
        };
        let after = hf_surgery_framework(&fw, roles).map_err(|e| format!("sample {i}: {e}"))?;
        // The moved points may leave the standard chart.
        let ch = (0..)
            .map(|a| AffineChart::new(ProjLine::from_i64([a, 1, 97]).unwrap()))
            .find(|c| fw.check_chart(c).is_ok() && after.check_chart(c).is_ok())
            .unwrap();
        let before_dim = self_stress_basis(&fw, &ch).map_err(|e| e.to_string())?.len();
        let after_dim = self_stress_basis(&after, &ch).map_err(|e| e.to_string())?.len();
        ensure(before_dim == after_dim, || format!("sample {i}: dimension {before_dim} became {after_dim}"))?;
        stressed += (before_dim > 0) as usize;
    }
    Ok(format!("100/100 unchanged ({stressed} with a stress)"))
}

/// Unrooted binary trees on `s` leaves counted as sets of `s − 3` pairwise
/// compatible nontrivial splits.
fn brute_force_topologies(s: usize) -> usize {
    let full: u32 = (1 << s) - 1;
    let splits: Vec<u32> = (1..full)
        .filter(|m| m & 1 == 0 && (2..=s - 2).contains(&(m.count_ones() as usize)))
        .collect();
    let compatible = |a: u32, b: u32| {
        let (ca, cb) = (full & !a, full & !b);
        a & b == 0 || a & cb == 0 || ca & b == 0 || ca & cb == 0
    };
    let mut count = 0;
    for mask in 0u64..(1 << splits.len()) {
        if mask.count_ones() as usize != s - 3 {
            continue;
        }
        let chosen: Vec<u32> = (0..splits.len()).filter(|k| mask >> k & 1 == 1).map(|k| splits[k]).collect();
        if chosen.iter().enumerate().all(|(x, &a)| chosen[x + 1..].iter().all(|&b| compatible(a, b))) {
            count += 1;
        }
    }
    count
}

fn criterion_6() -> Outcome {
    let k6 = fixtures::place(
        fixtures::complete_graph(6),
        &[[0, 0, 1], [7, 1, 1], [9, 6, 1], [4, 11, 1], [-3, 7, 1], [3, 4, 1]],
    );
    let mut seen = BTreeSet::new();
    for fw in [fixtures::desargues_pos(), fixtures::wheel5(), k6] {
        let fl = find_non_parallelizable(&fw, &equilibrium_forceload_basis(&fw), 1)
            .ok_or_else(|| "fixture has no non-parallelizable stress".to_string())?;
        let q = quantization_from_stress(&fw, &fl, default_trees(fw.graph()).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        for s in q.schemes() {
            let n = s.tree().leaf_count();
            let got = s.enumerate_equivalent().map_err(|e| e.to_string())?.len();
            let want = brute_force_topologies(n);
            ensure(got == want, || format!("{n} leaves: {got} schemes, {want} topologies"))?;
            seen.insert((n, got));
        }
    }
    let sizes: Vec<_> = seen.iter().map(|&(n, c)| format!("{n}:{c}")).collect();
    ensure(seen.len() == 3, || format!("leaf counts covered: {sizes:?}"))?;
    Ok(format!("sizes {}", sizes.join(" ")))
}

fn criterion_7() -> Outcome {
    let mut notes = vec![];
    for (name, g) in [("desargues", fixtures::desargues_graph()), ("pascal", fixtures::pascal_graph())] {
        let rep = analysis::verify(&g, 200, CycleMode::All, 0x7e57).map_err(|e| e.to_string())?;
        ensure(rep.compared == 200, || format!("{name}: compared {}", rep.compared))?;
        ensure(rep.mismatches.is_empty(), || format!("{name}: mismatches {:?}", rep.mismatches))?;
        ensure(rep.oracle_positive >= 20 && rep.oracle_negative >= 20, || {
            format!("{name}: {} positive, {} negative", rep.oracle_positive, rep.oracle_negative)
        })?;
        notes.push(format!("{name} 200/200 (+{} -{})", rep.oracle_positive, rep.oracle_negative));
    }
    Ok(notes.join(", "))
}

fn criterion_8() -> Outcome {
    let g = fixtures::wheel5_graph();
    let trees = default_trees(&g).map_err(|e| e.to_string())?;
    let system = generate_system(&g, &trees, CycleMode::All, ProjectionOrder::Leading).map_err(|e| e.to_string())?;
    ensure(system.xi.dimension() > 0, || "free lines expected".into())?;
    let (mut positive, mut index) = (0, 0u64);
    while positive < 100 {
        ensure(index < 1000, || format!("only {positive} oracle-positive placements in 1000 draws"))?;
        let s = derive(0x8, index);
        index += 1;
        let (fw, draw) = sample_placement(&g, None, 0, s).map_err(|e| e.to_string())?;
        debug_assert_eq!(draw, Draw::Generic);
        let Some(fl) = oracle(&fw, &chart(), derive(s, 1)).map_err(|e| e.to_string())?.1 else { continue };
        positive += 1;
        let q = quantization_from_stress(&fw, &fl, trees.clone()).map_err(|e| e.to_string())?;
        let failed = failed_conditions(&system, &fw, &witness_from_quantization(&q), derive(s, 4))
            .map_err(|e| e.to_string())?;
        ensure(failed.is_empty(), || format!("seed {s}: conditions {failed:?} fail"))?;
        ensure(pairing_identity_holds(&q).map_err(|e| e.to_string())?, || format!("seed {s}: pairing identity fails"))?;
    }
    Ok(format!("100/100 fulfilled, pairing identity on all ({index} draws)"))
}

fn criterion_9() -> Outcome {
    let all = [
        ("desargues+", fixtures::desargues_pos(), true),
        ("desargues-", fixtures::desargues_neg(), false),
        ("pascal+", fixtures::pascal_pos(), true),
        ("pascal-", fixtures::pascal_neg(), false),
        ("wheel5", fixtures::wheel5(), true),
    ];
    for (name, fw, positive) in all {
        let err = |e: tensec_core::Error| format!("{name}: {e}");
        let basis = self_stress_basis(&fw, &chart()).map_err(err)?;
        if positive {
            let fl = forceload_from_stress(&fw, &basis[0], &chart()).map_err(err)?;
            let q = quantization_from_stress(&fw, &fl, default_trees(fw.graph()).map_err(err)?).map_err(err)?;
            ensure(is_consistent(&q, CycleMode::All, 3).map_err(err)?, || format!("{name}: inconsistent"))?;
            let (rg, load) = construct_forceload(&q, 5).map_err(err)?;
            ensure(load.is_equilibrium(&rg), || format!("{name}: constructed load not in equilibrium"))?;
            let back = induced_stress(&q, &rg, &load);
            ensure(back.ratio_to(&fl).is_some(), || format!("{name}: induced stress not proportional"))?;
        } else {
            let rep = analysis::check(&fw, &CheckOptions::default()).map_err(err)?;
            ensure(basis.is_empty() && rep.consistent == Some(false), || format!("{name}: expected inconsistency"))?;
        }
    }
    Ok("5/5 fixtures in both directions".into())
}

fn criterion_10() -> Outcome {
    let cfg = RunConfig { seed: 42, ..RunConfig::default() };
    let fws = [fixtures::desargues_pos(), fixtures::pascal_neg(), fixtures::wheel5()];
    for fw in &fws {
        let text = serde_json::to_string(&framework_file(fw)).unwrap();
        let a = cmd_check(&text, &cfg).map_err(|e| e.to_string())?;
        let b = cmd_check(&text, &cfg).map_err(|e| e.to_string())?;
        ensure(a == b, || "check output differs between runs".into())?;
    }
    for (name, g) in [("desargues", fixtures::desargues_graph()), ("pascal", fixtures::pascal_graph())] {
        let text = serde_json::to_string(&graph_file(&g)).unwrap();
        let a = cmd_conditions(&text, &cfg).map_err(|e| e.to_string())?;
        let b = cmd_conditions(&text, &cfg).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{name}: conditions output differs between runs"))?;
        let path = format!("{}/tests/golden/{name}.sexpr", env!("CARGO_MANIFEST_DIR"));
        let golden = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
        ensure(a == golden, || format!("{name}: output differs from {path}"))?;
    }
    Ok("byte-identical reruns, golden files match".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("desargues stress dimensions", criterion_1),
        ("pascal stress dimensions", criterion_2),
        ("monodromy vs equilibrium", criterion_3),
        ("monodromy invariance", criterion_4),
        ("surgery keeps stress dimension", criterion_5),
        ("scheme enumeration", criterion_6),
        ("conditions vs oracle, flat", criterion_7),
        ("derived witness, wheel", criterion_8),
        ("quantization round trip", criterion_9),
        ("determinism and golden files", criterion_10),
    ];
    let mut failed = vec![];
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
