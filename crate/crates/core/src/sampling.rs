//! Seeded random placements, on-variety placements for the bundled graphs,
//! random framed cycles and random frameworks with an H-shaped edge.
//! All coordinates are small integers, so heights stay far below 1000.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::cycles::FramedCycle;
use crate::fixtures;
use crate::framework::{framework_in_general_position, hf_surgery_framework, Framework, HRoles};
use crate::graph::Graph;
use crate::numeric::int;
use crate::projective::{cross, scale3, sub3, Force, Homography, ProjPoint};
use crate::rng::{self, Rng};

/// Affine coordinates are drawn from `-BOUND..=BOUND`.
pub const BOUND: i64 = 40;

pub fn random_point(r: &mut Rng) -> ProjPoint {
    let x = r.random_range(-BOUND..=BOUND);
    let y = r.random_range(-BOUND..=BOUND);
    ProjPoint::from_i64([x, y, 1]).expect("affine point")
}

fn distinct_points(r: &mut Rng, n: usize) -> Vec<ProjPoint> {
    let mut pts: Vec<ProjPoint> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = random_point(r);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

/// A placement of `g` in general position.
pub fn random_placement(g: &Graph, seed: u64) -> Framework {
    let mut r = rng::from_seed(seed);
    loop {
        let pts = distinct_points(&mut r, g.vertex_count());
        if let Ok(fw) = Framework::new(g.clone(), pts) {
            if framework_in_general_position(&fw) {
                return fw;
            }
        }
    }
}

fn nonzero(r: &mut Rng, bound: i64) -> i64 {
    loop {
        let v = r.random_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// A general-position placement of the Desargues graph with the lines
/// `p1p2, p3p4, p5p6` through one point.
pub fn desargues_on_variety(seed: u64) -> Framework {
    let mut r = rng::from_seed(seed);
    loop {
        let c = [r.random_range(-10..=10), r.random_range(-10..=10)];
        let mut pts = Vec::with_capacity(6);
        for _ in 0..3 {
            let d = [nonzero(&mut r, 6), r.random_range(-6..=6)];
            for _ in 0..2 {
                let t = nonzero(&mut r, 5);
                pts.push(ProjPoint::from_i64([c[0] + t * d[0], c[1] + t * d[1], 1]).expect("affine point"));
            }
        }
        if let Ok(fw) = Framework::new(fixtures::desargues_graph(), pts) {
            if framework_in_general_position(&fw) {
                return fw;
            }
        }
    }
}

/// A general-position placement of the Pascal graph with all six points on
/// one conic: the image of `(t : t² : 1)` under a random homography.
pub fn pascal_on_variety(seed: u64) -> Framework {
    let mut r = rng::from_seed(seed);
    loop {
        let mut m = [[0i64; 3]; 3];
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = r.random_range(-4..=4);
            }
        }
        let Ok(h) = Homography::new(m) else { continue };
        let mut ts: Vec<i64> = (-5..=5).collect();
        ts.shuffle(&mut r);
        let pts: Vec<ProjPoint> = ts[..6]
            .iter()
            .map(|&t| h.apply_point(&ProjPoint::from_i64([t, t * t, 1]).expect("conic point")))
            .collect();
        if pts.iter().any(|p| p.ints()[2] == BigInt::from(0)) {
            continue;
        }
        if let Ok(fw) = Framework::new(fixtures::pascal_graph(), pts) {
            if framework_in_general_position(&fw) {
                return fw;
            }
        }
    }
}

/// A framed cycle of length `k` in general position with random framings.
pub fn random_framed_cycle(k: usize, seed: u64) -> FramedCycle {
    let mut r = rng::from_seed(seed);
    loop {
        let pts = distinct_points(&mut r, k);
        let framings: Option<Vec<_>> = pts.iter().map(|p| p.join(&random_point(&mut r))).collect();
        let Some(framings) = framings else { continue };
        if let Ok(c) = FramedCycle::new(pts, framings) {
            if c.is_in_general_position() {
                return c;
            }
        }
    }
}

/// A framed cycle of length `k` in general position carrying an
/// equilibrium load: random edge tensions, each framing along the balancing
/// force at its point.
pub fn random_balanced_framed_cycle(k: usize, seed: u64) -> FramedCycle {
    let mut r = rng::from_seed(seed);
    loop {
        let pts = distinct_points(&mut r, k);
        let edges: Vec<_> = (0..k)
            .map(|i| scale3(&int(nonzero(&mut r, 9)), &cross(&pts[i].coords(), &pts[(i + 1) % k].coords())))
            .collect();
        let framings: Result<Vec<_>, _> = (0..k)
            .map(|i| Force::from_dual(sub3(&edges[(i + k - 1) % k], &edges[i])).line())
            .collect();
        let Ok(framings) = framings else { continue };
        if let Ok(c) = FramedCycle::new(pts, framings) {
            if c.is_in_general_position() {
                return c;
            }
        }
    }
}

/// A random framework whose first six vertices form an H around the edge
/// `v0 v1`, together with roles on which the surgery is defined.
pub fn random_h_framework(seed: u64) -> (Framework, HRoles) {
    let mut r = rng::from_seed(seed);
    loop {
        let n = r.random_range(6..=8);
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)];
        let mut rest: Vec<(usize, usize)> = Vec::new();
        for a in 2..n {
            for b in a + 1..n {
                rest.push((a, b));
            }
        }
        rest.shuffle(&mut r);
        let extra = 2 * n - 3 - edges.len() + r.random_range(0..=2);
        edges.extend(rest.into_iter().take(extra));
        let Ok(g) = Graph::new((1..=n).map(|i| alloc::format!("p{i}")).collect(), &edges) else {
            continue;
        };
        if !g.is_connected() || (2..n).any(|v| g.degree(v) < 2) {
            continue;
        }
        let pts = distinct_points(&mut r, n);
        let Ok(fw) = Framework::new(g, pts) else { continue };
        let roles = HRoles { q1: 0, q2: 1, q3: 2, q4: 3, q5: 4, q6: 5 };
        if hf_surgery_framework(&fw, roles).is_ok() {
            return (fw, roles);
        }
    }
}

/// A Desargues placement with the concurrent triple, as an H around `p1p2`:
/// `p1` has neighbours `p4, p5` and `p2` has `p3, p6`.
pub fn desargues_h_framework(seed: u64) -> (Framework, HRoles) {
    let mut s = seed;
    loop {
        let fw = desargues_on_variety(s);
        let roles = HRoles { q1: 0, q2: 1, q3: 3, q4: 4, q5: 2, q6: 5 };
        if hf_surgery_framework(&fw, roles).is_ok() {
            return (fw, roles);
        }
        s = rng::derive(s, 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{cycle_equilibrium_basis, monodromy_is_trivial};
    use crate::projective::collinear;

    #[test]
    fn on_variety_placements_satisfy_their_incidence() {
        for seed in 0..5 {
            let fw = desargues_on_variety(seed);
            let l = |a: usize, b: usize| fw.edge_line(a, b);
            assert!(crate::projective::concurrent(&l(0, 1), &l(2, 3), &l(4, 5)));
            let fw = pascal_on_variety(seed);
            let p = |i: usize| fw.point(i).clone();
            // Pascal: opposite sides of the hexagon meet on one line.
            let a = l_meet(&p(0), &p(1), &p(3), &p(4));
            let b = l_meet(&p(1), &p(2), &p(4), &p(5));
            let c = l_meet(&p(2), &p(3), &p(5), &p(0));
            assert!(collinear(&a, &b, &c));
        }
    }

    fn l_meet(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> ProjPoint {
        a.join(b).unwrap().meet(&c.join(d).unwrap()).unwrap()
    }

    #[test]
    fn balanced_cycles_are_balanced() {
        for k in 3..7 {
            let c = random_balanced_framed_cycle(k, k as u64);
            assert!(!cycle_equilibrium_basis(&c).is_empty());
            assert!(monodromy_is_trivial(&c, 0).unwrap());
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(random_placement(&fixtures::wheel5_graph(), 3), random_placement(&fixtures::wheel5_graph(), 3));
        assert_eq!(random_h_framework(2), random_h_framework(2));
    }
}
