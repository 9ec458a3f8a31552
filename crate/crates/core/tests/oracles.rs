//! Independent oracles for derived values: brute-force cycle and tree
//! topology counts, a second route to the stress space, and exact checks
//! against hand-computed incidences.

use std::collections::BTreeSet;

use tensec_core::fixtures;
use tensec_core::framework::{
    equilibrium_forceload_basis, find_non_parallelizable, forceload_from_stress, self_stress_basis, Framework,
};
use tensec_core::graph::Graph;
use tensec_core::projective::{AffineChart, ProjPoint};
use tensec_core::quantization::{default_trees, quantization_from_stress};
use tensec_core::sampling;

/// Simple cycles as edge sets: connected subsets where every touched vertex has degree 2.
fn brute_force_cycles(g: &Graph) -> Vec<usize> {
    let m = g.edge_count();
    let n = g.vertex_count();
    let mut by_len = vec![0; n + 1];
    for mask in 1u32..(1 << m) {
        let mut deg = vec![0; n];
        let chosen: Vec<(usize, usize)> = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| g.edges()[k]).collect();
        for &(a, b) in &chosen {
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let start = chosen[0].0;
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b) in &chosen {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        if seen.len() == chosen.len() {
            by_len[chosen.len()] += 1;
        }
    }
    by_len
}

#[test]
fn cycle_enumeration_matches_brute_force() {
    let graphs = [
        fixtures::desargues_graph(),
        fixtures::pascal_graph(),
        fixtures::wheel5_graph(),
        fixtures::complete_graph(4),
        fixtures::complete_graph(5),
    ];
    for g in graphs {
        let n = g.vertex_count();
        let want = brute_force_cycles(&g);
        let mut got = vec![0; n + 1];
        for c in g.simple_cycles(n) {
            assert!(g.is_simple_cycle(&c));
            got[c.len()] += 1;
        }
        assert_eq!(got, want);
    }
    let k33 = brute_force_cycles(&fixtures::pascal_graph());
    assert_eq!((k33[4], k33[6]), (9, 6));
}

/// Unrooted binary trees on `s` leaves as sets of `s − 3` pairwise
/// compatible nontrivial splits.
fn brute_force_topologies(s: usize) -> usize {
    let full: u32 = (1 << s) - 1;
    let splits: Vec<u32> = (1..full)
        .filter(|m| m & 1 == 0)
        .filter(|m| (2..=s - 2).contains(&(m.count_ones() as usize)))
        .collect();
    let compatible = |a: u32, b: u32| {
        let (ca, cb) = (full & !a, full & !b);
        a & b == 0 || a & cb == 0 || ca & b == 0 || ca & cb == 0
    };
    let k = s - 3;
    let mut count = 0;
    let mut pick = vec![];
    fn rec(i: usize, k: usize, splits: &[u32], pick: &mut Vec<u32>, ok: &dyn Fn(u32, u32) -> bool, count: &mut usize) {
        if pick.len() == k {
            *count += 1;
            return;
        }
        for j in i..splits.len() {
            if pick.iter().all(|&p| ok(p, splits[j])) {
                pick.push(splits[j]);
                rec(j + 1, k, splits, pick, ok, count);
                pick.pop();
            }
        }
    }
    rec(0, k, &splits, &mut pick, &compatible, &mut count);
    count
}

fn stressed_scheme_sizes() -> Vec<(usize, usize)> {
    let fw = fixtures::place(
        fixtures::complete_graph(6),
        &[[0, 0, 1], [7, 1, 1], [9, 6, 1], [4, 11, 1], [-3, 7, 1], [3, 4, 1]],
    );
    let mut out = vec![];
    for fw in [fixtures::desargues_pos(), fixtures::wheel5(), fw] {
        let fl = find_non_parallelizable(&fw, &equilibrium_forceload_basis(&fw), 1).unwrap();
        let q = quantization_from_stress(&fw, &fl, default_trees(fw.graph()).unwrap()).unwrap();
        for s in q.schemes() {
            let schemes = s.enumerate_equivalent().unwrap();
            let tops: BTreeSet<_> = schemes.iter().map(|x| x.tree().topology()).collect();
            assert_eq!(tops.len(), schemes.len());
            out.push((s.tree().leaf_count(), schemes.len()));
        }
    }
    out
}

#[test]
fn scheme_enumeration_matches_topology_count() {
    assert_eq!([3, 4, 5].map(brute_force_topologies), [1, 3, 15]);
    let sizes = stressed_scheme_sizes();
    for s in [3, 4, 5] {
        assert!(sizes.contains(&(s, brute_force_topologies(s))), "{sizes:?}");
    }
    assert!(sizes.iter().all(|&(s, n)| n == brute_force_topologies(s)));
}

#[test]
fn stress_space_has_two_routes() {
    for seed in 0..12 {
        let (fw, _) = sampling::random_h_framework(seed);
        let chart = AffineChart::standard();
        let w = self_stress_basis(&fw, &chart).unwrap();
        let free = equilibrium_forceload_basis(&fw);
        assert_eq!(w.len(), free.len());
        let g = fw.graph();
        assert!(w.len() as i64 >= g.edge_count() as i64 - 2 * g.vertex_count() as i64 + 3);
        for s in &w {
            assert!(forceload_from_stress(&fw, s, &chart).unwrap().is_equilibrium(g));
        }
    }
}

#[test]
fn desargues_weights_all_nonzero() {
    let fw = fixtures::desargues_pos();
    let w = self_stress_basis(&fw, &AffineChart::standard()).unwrap();
    assert_eq!(w.len(), 1);
    assert!(w[0].weights.iter().all(|x| *x != tensec_core::numeric::int(0)));
}

#[test]
fn chart_choice_does_not_change_dimension() {
    let charts = [AffineChart::standard(), AffineChart::new(tensec_core::projective::ProjLine::from_i64([1, 1, 97]).unwrap())];
    for fw in [fixtures::desargues_pos(), fixtures::desargues_neg(), fixtures::pascal_pos(), fixtures::wheel5()] {
        let dims: Vec<usize> = charts.iter().map(|c| self_stress_basis(&fw, c).unwrap().len()).collect();
        assert_eq!(dims[0], dims[1]);
    }
}

#[test]
fn points_at_infinity_are_rejected_by_the_chart() {
    let g = fixtures::desargues_graph();
    let mut pts: Vec<ProjPoint> = fixtures::desargues_pos().points().to_vec();
    pts[0] = ProjPoint::from_i64([1, 0, 0]).unwrap();
    let fw = Framework::new(g, pts).unwrap();
    assert!(self_stress_basis(&fw, &AffineChart::standard()).is_err());
}
