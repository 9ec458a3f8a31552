//! Frameworks, stresses, force-loads and the exact self-stress oracle.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::Rng as _;

use crate::graph::Graph;
use crate::numeric::{int, nullspace_basis, Matrix, Scalar};
use crate::projective::{cross, is_zero3, scale3, star_is_non_parallelizable, AffineChart, Force, ProjLine, ProjPoint, Vec3};
use crate::rng;
use crate::{Error, Result};

/// A graph together with a placement of its vertices in the projective plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Framework {
    graph: Graph,
    points: Vec<ProjPoint>,
}

impl Framework {
    /// Rejects placements with the wrong length or with coincident points.
    pub fn new(graph: Graph, points: Vec<ProjPoint>) -> Result<Self> {
        if points.len() != graph.vertex_count() {
            return Err(Error::Degenerate(format!(
                "{} points for {} vertices",
                points.len(),
                graph.vertex_count()
            )));
        }
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                if points[a] == points[b] {
                    return Err(Error::Degenerate(format!(
                        "vertices {} and {} are placed at the same point {}",
                        graph.id(a),
                        graph.id(b),
                        points[a]
                    )));
                }
            }
        }
        Ok(Framework { graph, points })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn point(&self, v: usize) -> &ProjPoint {
        &self.points[v]
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// The line through the endpoints of edge `(a, b)`.
    pub fn edge_line(&self, a: usize, b: usize) -> ProjLine {
        self.points[a].join(&self.points[b]).expect("placed points are distinct")
    }

    /// Errors if a point lies on the chart's line at infinity.
    pub fn check_chart(&self, chart: &AffineChart) -> Result<()> {
        match (0..self.points.len()).find(|&v| chart.at_infinity(&self.points[v])) {
            Some(v) => Err(Error::PointAtInfinity { vertex: self.graph.id(v).into() }),
            None => Ok(()),
        }
    }
}

/// Edge weights in a chart, indexed like `Graph::edges`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stress {
    pub weights: Vec<Scalar>,
}

impl Stress {
    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }

    /// `s` with `self = s * other`, if the two are proportional and `other ≠ 0`.
    pub fn ratio_to(&self, other: &Stress) -> Option<Scalar> {
        let k = other.weights.iter().position(|w| !w.is_zero())?;
        let s = &self.weights[k] / &other.weights[k];
        self.weights
            .iter()
            .zip(&other.weights)
            .all(|(a, b)| *a == &s * b)
            .then_some(s)
    }
}

/// Forces on edges: entry `k` is `F_{i,j}` for `edges()[k] = (i, j)`, `i < j`.
/// The opposite orientation is implied by antisymmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForceLoad {
    pub forces: Vec<Force>,
}

impl ForceLoad {
    pub fn zero(g: &Graph) -> Self {
        ForceLoad { forces: vec![Force::zero(); g.edge_count()] }
    }

    /// `F_{from,to}`.
    pub fn force(&self, g: &Graph, from: usize, to: usize) -> Force {
        let k = g.edge_index(from, to).expect("edge exists");
        if from < to {
            self.forces[k].clone()
        } else {
            -&self.forces[k]
        }
    }

    /// Forces acting at `v`, in neighbour order.
    pub fn star(&self, g: &Graph, v: usize) -> Vec<Force> {
        g.neighbors(v).iter().map(|&u| self.force(g, v, u)).collect()
    }

    pub fn is_equilibrium(&self, g: &Graph) -> bool {
        (0..g.vertex_count()).all(|v| {
            self.star(g, v).iter().fold(Force::zero(), |acc, f| &acc + f).is_zero()
        })
    }

    /// Checks that every nonzero force lies on its edge line.
    pub fn is_along_edges(&self, fw: &Framework) -> bool {
        fw.graph.edges().iter().zip(&self.forces).all(|(&(a, b), f)| {
            f.is_zero() || f.line().expect("nonzero") == fw.edge_line(a, b)
        })
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        ForceLoad { forces: self.forces.iter().map(|f| f.scaled(s)).collect() }
    }

    /// `s` with `self = s * other`, if the two are proportional and `other ≠ 0`.
    pub fn ratio_to(&self, other: &ForceLoad) -> Option<Scalar> {
        let k = other.forces.iter().position(|f| !f.is_zero())?;
        let s = self.forces[k].ratio_to(&other.forces[k])?;
        (*self == other.scaled(&s)).then_some(s)
    }

    pub fn combine(basis: &[ForceLoad], coeffs: &[Scalar]) -> Self {
        let m = basis[0].forces.len();
        let mut forces = vec![Force::zero(); m];
        for (b, c) in basis.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (acc, f) in forces.iter_mut().zip(&b.forces) {
                *acc = &*acc + &f.scaled(c);
            }
        }
        ForceLoad { forces }
    }
}

/// Basis of the self-stresses of `fw` computed in `chart`: the kernel of the
/// `2n × |E|` equilibrium matrix.
pub fn self_stress_basis(fw: &Framework, chart: &AffineChart) -> Result<Vec<Stress>> {
    fw.check_chart(chart)?;
    let g = &fw.graph;
    let hat: Vec<Vec3> = fw.points.iter().map(|p| chart.normalize(p).expect("checked")).collect();
    let drop = chart.dropped_axis();
    let axes: Vec<usize> = (0..3).filter(|&c| c != drop).collect();
    let mut m = Matrix::zeros(2 * g.vertex_count(), g.edge_count());
    for (e, &(i, j)) in g.edges().iter().enumerate() {
        for (r, &c) in axes.iter().enumerate() {
            let d = &hat[i][c] - &hat[j][c];
            m[(2 * j + r, e)] = -d.clone();
            m[(2 * i + r, e)] = d;
        }
    }
    Ok(nullspace_basis(&m).into_iter().map(|weights| Stress { weights }).collect())
}

/// The force-load whose chart vectors are `w_{i,j}(p_i − p_j)`.
pub fn forceload_from_stress(fw: &Framework, w: &Stress, chart: &AffineChart) -> Result<ForceLoad> {
    fw.check_chart(chart)?;
    let g = &fw.graph;
    if w.weights.len() != g.edge_count() {
        return Err(Error::Precondition(format!(
            "stress has {} weights for {} edges",
            w.weights.len(),
            g.edge_count()
        )));
    }
    let forces = g
        .edges()
        .iter()
        .zip(&w.weights)
        .map(|(&(i, j), wij)| {
            let a = chart.normalize(&fw.points[i]).expect("checked");
            let b = chart.normalize(&fw.points[j]).expect("checked");
            Force::from_dual(scale3(&-wij.clone(), &cross(&a, &b)))
        })
        .collect();
    Ok(ForceLoad { forces })
}

/// Reads the chart weights of a force-load directed along the edges.
pub fn stress_from_forceload(fw: &Framework, fl: &ForceLoad, chart: &AffineChart) -> Result<Stress> {
    fw.check_chart(chart)?;
    let mut weights = Vec::with_capacity(fl.forces.len());
    for (&(i, j), f) in fw.graph.edges().iter().zip(&fl.forces) {
        let a = chart.normalize(&fw.points[i]).expect("checked");
        let b = chart.normalize(&fw.points[j]).expect("checked");
        let unit = Force::from_dual(cross(&a, &b));
        let s = f.ratio_to(&unit).ok_or_else(|| {
            Error::Precondition(format!(
                "force on {}-{} is not along the edge",
                fw.graph.id(i),
                fw.graph.id(j)
            ))
        })?;
        weights.push(-s);
    }
    Ok(Stress { weights })
}

/// Chart-free basis of the equilibrium force-loads directed along edges:
/// one unknown scale per edge, three equations per vertex.
pub fn equilibrium_forceload_basis(fw: &Framework) -> Vec<ForceLoad> {
    let g = &fw.graph;
    let dirs: Vec<Vec3> = g
        .edges()
        .iter()
        .map(|&(i, j)| cross(&fw.points[i].coords(), &fw.points[j].coords()))
        .collect();
    let mut m = Matrix::zeros(3 * g.vertex_count(), g.edge_count());
    for (e, &(i, j)) in g.edges().iter().enumerate() {
        for c in 0..3 {
            m[(3 * i + c, e)] = dirs[e][c].clone();
            m[(3 * j + c, e)] = -dirs[e][c].clone();
        }
    }
    nullspace_basis(&m)
        .into_iter()
        .map(|s| ForceLoad {
            forces: s.iter().zip(&dirs).map(|(x, d)| Force::from_dual(scale3(x, d))).collect(),
        })
        .collect()
}

pub fn is_non_parallelizable(fw: &Framework, fl: &ForceLoad) -> bool {
    first_parallelizable_vertex(fw, fl).is_none()
}

pub fn first_parallelizable_vertex(fw: &Framework, fl: &ForceLoad) -> Option<usize> {
    let g = &fw.graph;
    (0..g.vertex_count()).find(|&v| !star_is_non_parallelizable(&fl.star(g, v)))
}

/// Decides exactly whether the span of `basis` contains a non-parallelizable
/// force-load and returns one if so.
///
/// Every bad event is the vanishing of a polynomial in the coefficients: a
/// subset sum (linear) or the cross product of two partial sums (quadratic).
/// The span contains a good load iff none of these polynomials vanishes
/// identically, which is checked on the basis. A witness is then drawn at
/// random; failures are retried with fresh coefficients.
pub fn find_non_parallelizable(fw: &Framework, basis: &[ForceLoad], seed: u64) -> Option<ForceLoad> {
    match basis.len() {
        0 => return None,
        1 => return is_non_parallelizable(fw, &basis[0]).then(|| basis[0].clone()),
        _ => {}
    }
    let mut r = rng::from_seed(seed);
    let draw = |r: &mut rng::Rng| {
        let c: Vec<Scalar> = basis.iter().map(|_| int(r.random_range(-1000..=1000))).collect();
        ForceLoad::combine(basis, &c)
    };
    for _ in 0..4 {
        let fl = draw(&mut r);
        if is_non_parallelizable(fw, &fl) {
            return Some(fl);
        }
    }
    if some_condition_vanishes(fw, basis) {
        return None;
    }
    loop {
        let fl = draw(&mut r);
        if is_non_parallelizable(fw, &fl) {
            return Some(fl);
        }
    }
}

fn subset_sum(forces: &[Force], mask: u32) -> Vec3 {
    forces
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .fold(Force::zero(), |acc, (_, f)| &acc + f)
        .dual
}

fn some_condition_vanishes(fw: &Framework, basis: &[ForceLoad]) -> bool {
    let g = &fw.graph;
    for v in 0..g.vertex_count() {
        let stars: Vec<Vec<Force>> = basis.iter().map(|b| b.star(g, v)).collect();
        let s = g.degree(v);
        let full = (1u32 << s) - 1;
        let sums: Vec<Vec<Vec3>> = (0..=full)
            .map(|mask| stars.iter().map(|st| subset_sum(st, mask)).collect())
            .collect();
        for mask in 1..full {
            if sums[mask as usize].iter().all(is_zero3) {
                return true;
            }
        }
        let with_first: Vec<u32> = (1..full).filter(|m| m & 1 == 1).collect();
        for (x, &m1) in with_first.iter().enumerate() {
            for &m2 in &with_first[x + 1..] {
                let (g1, g2) = (&sums[m1 as usize], &sums[m2 as usize]);
                let mut identically_zero = true;
                'pairs: for a in 0..basis.len() {
                    for b in a..basis.len() {
                        let mut c = cross(&g1[a], &g2[b]);
                        if a != b {
                            c = crate::projective::add3(&c, &cross(&g1[b], &g2[a]));
                        }
                        if !is_zero3(&c) {
                            identically_zero = false;
                            break 'pairs;
                        }
                    }
                }
                if identically_zero {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether the edge lines of `cycle` are pairwise distinct with no three
/// concurrent, i.e. they have `k(k−1)/2` distinct pairwise intersections.
pub fn cycle_in_general_position(fw: &Framework, cycle: &[usize]) -> bool {
    let k = cycle.len();
    let lines: Vec<ProjLine> = (0..k).map(|i| fw.edge_line(cycle[i], cycle[(i + 1) % k])).collect();
    lines_in_general_position(&lines)
}

pub fn lines_in_general_position(lines: &[ProjLine]) -> bool {
    let k = lines.len();
    let mut meets = BTreeSet::new();
    for a in 0..k {
        for b in a + 1..k {
            match lines[a].meet(&lines[b]) {
                Some(p) => {
                    meets.insert(p);
                }
                None => return false,
            }
        }
    }
    meets.len() == k * (k - 1) / 2
}

/// The first simple cycle on at most `n − 1` vertices that is not in
/// general position.
pub fn general_position_violation(fw: &Framework) -> Option<Vec<usize>> {
    let n = fw.graph.vertex_count();
    fw.graph
        .simple_cycles(n.saturating_sub(1))
        .into_iter()
        .find(|c| !cycle_in_general_position(fw, c))
}

pub fn framework_in_general_position(fw: &Framework) -> bool {
    general_position_violation(fw).is_none()
}

/// Roles in an H-shaped neighbourhood: `q1 q2` is the middle edge, `q3, q4`
/// are the other neighbours of `q1`, and `q5, q6` those of `q2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HRoles {
    pub q1: usize,
    pub q2: usize,
    pub q3: usize,
    pub q4: usize,
    pub q5: usize,
    pub q6: usize,
}

/// H→Φ surgery: `q1` moves to `q1q3 ∩ q2q5` and `q2` to `q1q4 ∩ q2q6`;
/// the edges `q1q4, q2q5` are replaced by `q1q5, q2q4`.
pub fn hf_surgery_framework(fw: &Framework, r: HRoles) -> Result<Framework> {
    let g = &fw.graph;
    let fail = |m: String| Err(Error::Precondition(m));
    let name = |v: usize| String::from(g.id(v));
    if !g.has_edge(r.q1, r.q2) {
        return fail(format!("{}-{} is not an edge", name(r.q1), name(r.q2)));
    }
    if g.degree(r.q1) != 3 || g.degree(r.q2) != 3 {
        return fail(format!("{} and {} must both have degree 3", name(r.q1), name(r.q2)));
    }
    let mut n1 = vec![r.q2, r.q3, r.q4];
    let mut n2 = vec![r.q1, r.q5, r.q6];
    n1.sort_unstable();
    n2.sort_unstable();
    if g.neighbors(r.q1) != n1.as_slice() || g.neighbors(r.q2) != n2.as_slice() {
        return fail("roles do not match the neighbourhoods of q1 and q2".into());
    }
    let l13 = fw.edge_line(r.q1, r.q3);
    let l14 = fw.edge_line(r.q1, r.q4);
    let l25 = fw.edge_line(r.q2, r.q5);
    let l26 = fw.edge_line(r.q2, r.q6);
    let Some(a) = l13.meet(&l25) else {
        return fail("line q1q3 coincides with line q2q5".into());
    };
    let Some(b) = l14.meet(&l26) else {
        return fail("line q1q4 coincides with line q2q6".into());
    };
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| e != (r.q1.min(r.q4), r.q1.max(r.q4)) && e != (r.q2.min(r.q5), r.q2.max(r.q5)))
        .collect();
    edges.push((r.q1, r.q5));
    edges.push((r.q2, r.q4));
    let graph = Graph::new(g.ids().to_vec(), &edges)?;
    let mut points = fw.points.clone();
    points[r.q1] = a;
    points[r.q2] = b;
    Framework::new(graph, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn triangle_has_no_stress() {
        let g = Graph::numbered(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let pts = [[0, 0, 1], [1, 0, 1], [0, 1, 1]].map(|c| ProjPoint::from_i64(c).unwrap());
        let fw = Framework::new(g, pts.to_vec()).unwrap();
        assert!(self_stress_basis(&fw, &AffineChart::standard()).unwrap().is_empty());
    }

    #[test]
    fn rejects_coincident_points() {
        let g = Graph::numbered(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let pts = [[0, 0, 1], [0, 0, 2], [0, 1, 1]].map(|c| ProjPoint::from_i64(c).unwrap());
        assert!(Framework::new(g, pts.to_vec()).is_err());
    }

    #[test]
    fn desargues_stress_round_trip() {
        let fw = fixtures::desargues_pos();
        let chart = AffineChart::standard();
        let basis = self_stress_basis(&fw, &chart).unwrap();
        assert_eq!(basis.len(), 1);
        let fl = forceload_from_stress(&fw, &basis[0], &chart).unwrap();
        assert!(fl.is_equilibrium(fw.graph()));
        assert!(fl.is_along_edges(&fw));
        assert!(is_non_parallelizable(&fw, &fl));
        assert_eq!(stress_from_forceload(&fw, &fl, &chart).unwrap(), basis[0]);
    }

    #[test]
    fn zero_force_is_parallelizable() {
        let fw = fixtures::desargues_pos();
        let chart = AffineChart::standard();
        let basis = self_stress_basis(&fw, &chart).unwrap();
        let mut fl = forceload_from_stress(&fw, &basis[0], &chart).unwrap();
        fl.forces[0] = Force::zero();
        assert!(!is_non_parallelizable(&fw, &fl));
    }

    #[test]
    fn collinear_edges_make_a_star_parallelizable() {
        // Three forces at the origin, two of them along the x-axis.
        let o = ProjPoint::from_i64([0, 0, 1]).unwrap();
        let a = ProjPoint::from_i64([1, 0, 1]).unwrap();
        let b = ProjPoint::from_i64([-1, 0, 1]).unwrap();
        let c = ProjPoint::from_i64([0, 1, 1]).unwrap();
        let f = |q: &ProjPoint, s: i64| crate::projective::force_between(&o, q, &int(s)).unwrap();
        assert!(!star_is_non_parallelizable(&[f(&a, 1), f(&b, 1), f(&c, 0)]));
        assert!(!star_is_non_parallelizable(&[f(&a, 1), f(&b, 2), f(&c, 3)]));
    }

    #[test]
    fn chart_free_basis_matches_oracle() {
        for fw in [fixtures::desargues_pos(), fixtures::desargues_neg(), fixtures::pascal_pos(), fixtures::pascal_neg()] {
            let a = self_stress_basis(&fw, &AffineChart::standard()).unwrap().len();
            let b = equilibrium_forceload_basis(&fw).len();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn desargues_general_position() {
        assert!(framework_in_general_position(&fixtures::desargues_pos()));
        assert!(framework_in_general_position(&fixtures::desargues_neg()));
        assert!(framework_in_general_position(&fixtures::pascal_pos()));
    }

    #[test]
    fn surgery_rejects_bad_roles() {
        let fw = fixtures::desargues_pos();
        // p1's neighbours are p2, p4, p5.
        let r = HRoles { q1: 0, q2: 1, q3: 3, q4: 4, q5: 2, q6: 5 };
        assert!(hf_surgery_framework(&fw, r).is_ok());
        let bad = HRoles { q1: 0, q2: 1, q3: 2, q4: 4, q5: 3, q6: 5 };
        assert!(hf_surgery_framework(&fw, bad).is_err());
    }

    #[test]
    fn exact_existence_in_wheel() {
        let fw = fixtures::wheel5();
        let basis = equilibrium_forceload_basis(&fw);
        assert!(!basis.is_empty());
        let fl = find_non_parallelizable(&fw, &basis, 11).unwrap();
        assert!(is_non_parallelizable(&fw, &fl));
        assert!(fl.is_equilibrium(fw.graph()));
    }
}
