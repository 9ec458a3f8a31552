//! End-to-end pipelines: the decision run on one placement, comparing the
//! stress oracle, quantization consistency and the condition system, and the
//! randomized comparison of condition verdicts against the oracle.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::conditions::{
    failed_conditions, generate_system, generate_system_for, witness_from_quantization, ConditionSystem,
    ProjectionOrder, Witness,
};
use crate::fixtures::{self, Family};
use crate::framework::{
    find_non_parallelizable, forceload_from_stress, general_position_violation, self_stress_basis,
    stress_from_forceload, ForceLoad, Framework, Stress,
};
use crate::graph::Graph;
use crate::projective::AffineChart;
use crate::quantization::{
    construct_forceload, default_trees, induced_stress, is_consistent, quantization_from_stress, CycleMode,
    Quantization,
};
use crate::resolution::BinaryTree;
use crate::rng::derive;
use crate::sampling;
use crate::{Error, Result};

/// Where the free lines used to evaluate the conditions came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    /// Supplied by the caller, or empty because there are no free lines.
    Provided,
    /// Interior labels of the quantization built from an oracle stress.
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionVerdict {
    Fulfilled(WitnessSource),
    /// Some condition fails and there are no free lines to vary.
    Refuted,
    /// Some free lines exist and no fulfilling choice is known.
    Unknown,
}

impl fmt::Display for ConditionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionVerdict::Fulfilled(WitnessSource::Provided) => "fulfilled with provided witness",
            ConditionVerdict::Fulfilled(WitnessSource::Derived) => "fulfilled with derived witness",
            ConditionVerdict::Refuted => "refuted for all-degree-3 graphs",
            ConditionVerdict::Unknown => "unknown (existential over Ξ)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub stress_basis: Vec<Stress>,
    /// A non-parallelizable self-stress, if the oracle finds one.
    pub non_parallelizable: Option<Stress>,
    /// Consistency of the quantization: the unique one when there are no
    /// free lines, otherwise the one built from the oracle stress.
    pub consistent: Option<bool>,
    /// The construction on the resolution graph reproduces the oracle stress.
    pub round_trip: Option<bool>,
    pub system: ConditionSystem,
    pub failed_conditions: Vec<usize>,
    /// The free lines the conditions were evaluated with, if any.
    pub witness: Option<WitnessSource>,
    pub condition_verdict: ConditionVerdict,
}

impl CheckReport {
    pub fn tensegrity(&self) -> bool {
        self.non_parallelizable.is_some()
    }

    /// The oracle, consistency and condition verdicts do not contradict each other.
    pub fn sources_agree(&self) -> bool {
        let t = self.tensegrity();
        let consistency = self.consistent.is_none_or(|c| c == t);
        let round_trip = self.round_trip.is_none_or(|r| r);
        let conditions = match self.condition_verdict {
            ConditionVerdict::Fulfilled(_) => t,
            ConditionVerdict::Refuted => !t,
            // A derived witness must fulfil the system whenever the oracle succeeds.
            ConditionVerdict::Unknown => self.witness != Some(WitnessSource::Derived),
        };
        consistency && round_trip && conditions
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub chart: AffineChart,
    pub mode: CycleMode,
    pub order: ProjectionOrder,
    /// Resolution trees per vertex; caterpillars over sorted neighbours if absent.
    pub trees: Option<Vec<BinaryTree>>,
    pub witness: Option<Witness>,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            chart: AffineChart::standard(),
            mode: CycleMode::All,
            order: ProjectionOrder::Leading,
            trees: None,
            witness: None,
            seed: 0,
        }
    }
}

/// The oracle verdict: a non-parallelizable equilibrium load in the span of
/// the self-stresses, if one exists.
pub fn oracle(fw: &Framework, chart: &AffineChart, seed: u64) -> Result<(Vec<Stress>, Option<ForceLoad>)> {
    let basis = self_stress_basis(fw, chart)?;
    let loads = basis
        .iter()
        .map(|w| forceload_from_stress(fw, w, chart))
        .collect::<Result<Vec<_>>>()?;
    let found = find_non_parallelizable(fw, &loads, seed);
    Ok((basis, found))
}

fn unique_quantization(fw: &Framework, trees: Vec<BinaryTree>) -> Result<Quantization> {
    let n = fw.graph().vertex_count();
    Quantization::new(fw.clone(), trees, vec![Vec::new(); n])
}

/// Runs every verdict source on `fw`.
pub fn check(fw: &Framework, opts: &CheckOptions) -> Result<CheckReport> {
    let g = fw.graph();
    g.check_condition_ready()?;
    if let Some(c) = general_position_violation(fw) {
        return Err(Error::GeneralPosition { cycle: g.cycle_ids(&c) });
    }
    fw.check_chart(&opts.chart)?;
    let (stress_basis, found) = oracle(fw, &opts.chart, derive(opts.seed, 1))?;
    let trees = match &opts.trees {
        Some(t) => t.clone(),
        None => default_trees(g)?,
    };
    let system = generate_system_for(fw, &trees, opts.mode, opts.order)?;
    let flat = system.xi.dimension() == 0;

    let mut consistent = None;
    let mut round_trip = None;
    let mut derived = None;
    let mut non_parallelizable = None;
    if let Some(fl) = &found {
        non_parallelizable = Some(stress_from_forceload(fw, fl, &opts.chart)?);
        let q = quantization_from_stress(fw, fl, trees.clone())?;
        consistent = is_consistent(&q, opts.mode, derive(opts.seed, 2)).ok();
        round_trip = Some(match construct_forceload(&q, derive(opts.seed, 3)) {
            Ok((rg, load)) => induced_stress(&q, &rg, &load).ratio_to(fl).is_some(),
            Err(_) => false,
        });
        derived = Some(witness_from_quantization(&q));
    } else if flat {
        let q = unique_quantization(fw, trees.clone())?;
        consistent = is_consistent(&q, opts.mode, derive(opts.seed, 2)).ok();
    }

    let eval_seed = derive(opts.seed, 4);
    let (witness, source) = match (&opts.witness, flat, derived) {
        (Some(w), _, _) => (Some(w.clone()), WitnessSource::Provided),
        (None, true, _) => (Some(Witness::new()), WitnessSource::Provided),
        (None, false, Some(w)) => (Some(w), WitnessSource::Derived),
        (None, false, None) => (None, WitnessSource::Provided),
    };
    let used = witness.as_ref().map(|_| source);
    let (failed, condition_verdict) = match witness {
        Some(w) => {
            let failed = failed_conditions(&system, fw, &w, eval_seed)?;
            let verdict = if failed.is_empty() {
                ConditionVerdict::Fulfilled(source)
            } else if flat {
                ConditionVerdict::Refuted
            } else {
                ConditionVerdict::Unknown
            };
            (failed, verdict)
        }
        None => (Vec::new(), ConditionVerdict::Unknown),
    };
    Ok(CheckReport {
        stress_basis,
        non_parallelizable,
        consistent,
        round_trip,
        system,
        failed_conditions: failed,
        witness: used,
        condition_verdict,
    })
}

/// How a verification sample was placed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Draw {
    Generic,
    /// Constrained to the incidence that makes the bundled graph stressed.
    OnVariety,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub seed: u64,
    pub draw: Draw,
    pub oracle: bool,
    pub conditions: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub samples: usize,
    pub oracle_positive: usize,
    pub oracle_negative: usize,
    pub on_variety: usize,
    /// Samples where the conditions could be evaluated against the oracle.
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
    /// Degree-4 vertices whose complementary pairs gave different framings.
    pub pairing_failures: Vec<Mismatch>,
}

fn relabel(g: &Graph, fixture: &Framework, perm: &[usize]) -> Result<Framework> {
    let mut pts = fixture.points().to_vec();
    for (k, &v) in perm.iter().enumerate() {
        pts[v] = fixture.point(k).clone();
    }
    Framework::new(g.clone(), pts)
}

/// The placement used for sample `index`: fixture-isomorphic graphs with a
/// known stressing incidence alternate generic and on-variety draws.
pub fn sample_placement(g: &Graph, family: Option<&(Family, Vec<usize>)>, index: usize, seed: u64) -> Result<(Framework, Draw)> {
    let on_variety = match family {
        Some((Family::Desargues, perm)) if index % 2 == 1 => Some(relabel(g, &sampling::desargues_on_variety(seed), perm)?),
        Some((Family::Pascal, perm)) if index % 2 == 1 => Some(relabel(g, &sampling::pascal_on_variety(seed), perm)?),
        _ => None,
    };
    Ok(match on_variety {
        Some(fw) => (fw, Draw::OnVariety),
        None => (sampling::random_placement(g, seed), Draw::Generic),
    })
}

/// Compares condition verdicts with the oracle on `samples` seeded
/// placements of `g`. Without free lines both directions are compared;
/// otherwise the witness derived from an oracle stress must fulfil the system.
pub fn verify(g: &Graph, samples: usize, mode: CycleMode, seed: u64) -> Result<VerifyReport> {
    let trees = default_trees(g)?;
    let system = generate_system(g, &trees, mode, ProjectionOrder::Leading)?;
    let flat = system.xi.dimension() == 0;
    let family = fixtures::recognize(g);
    let chart = AffineChart::standard();
    let mut rep = VerifyReport { samples, ..VerifyReport::default() };
    for index in 0..samples {
        let s = derive(seed, index as u64);
        let (fw, draw) = sample_placement(g, family.as_ref(), index, s)?;
        if draw == Draw::OnVariety {
            rep.on_variety += 1;
        }
        let (_, found) = oracle(&fw, &chart, derive(s, 1))?;
        let positive = found.is_some();
        if positive {
            rep.oracle_positive += 1;
        } else {
            rep.oracle_negative += 1;
        }
        let mismatch = |conditions| Mismatch { index, seed: s, draw, oracle: positive, conditions };
        if flat {
            let ok = failed_conditions(&system, &fw, &Witness::new(), derive(s, 4))?.is_empty();
            rep.compared += 1;
            if ok != positive {
                rep.mismatches.push(mismatch(ok));
            }
        } else if let Some(fl) = found {
            let q = quantization_from_stress(&fw, &fl, trees.clone())?;
            let ok = failed_conditions(&system, &fw, &witness_from_quantization(&q), derive(s, 4))?.is_empty();
            rep.compared += 1;
            if !ok {
                rep.mismatches.push(mismatch(ok));
            }
            if !pairing_identity_holds(&q)? {
                rep.pairing_failures.push(mismatch(ok));
            }
        }
    }
    Ok(rep)
}

/// At every degree-4 vertex the associated framings of complementary
/// neighbour pairs coincide.
pub fn pairing_identity_holds(q: &Quantization) -> Result<bool> {
    let g = q.framework().graph();
    for v in 0..g.vertex_count() {
        let nb = g.neighbors(v);
        if nb.len() != 4 {
            continue;
        }
        let s = q.scheme(v);
        for (a, b, c, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
            if s.associated_framing(nb[a], nb[b])? != s.associated_framing(nb[c], nb[d])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
