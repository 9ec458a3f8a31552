//! Framed cycles, shift maps between framing lines, monodromy and the
//! projection moves that shorten a framed cycle.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng as _;

use crate::framework::lines_in_general_position;
use crate::numeric::{nullspace_basis, Matrix, Scalar};
use crate::projective::{cross, pick_generic_line_through, scale3, Force, ProjLine, ProjPoint, Vec3};
use crate::rng;
use crate::{Error, Result};

/// A cyclic sequence of points, each carrying a line through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedCycle {
    points: Vec<ProjPoint>,
    framings: Vec<ProjLine>,
}

impl FramedCycle {
    pub fn new(points: Vec<ProjPoint>, framings: Vec<ProjLine>) -> Result<Self> {
        let k = points.len();
        if k < 3 {
            return Err(Error::Precondition(format!("a framed cycle needs at least 3 points, got {k}")));
        }
        if framings.len() != k {
            return Err(Error::Precondition(format!("{k} points but {} framing lines", framings.len())));
        }
        for i in 0..k {
            if !points[i].on(&framings[i]) {
                return Err(Error::Precondition(format!(
                    "framing line {} does not pass through point {} at position {}",
                    framings[i],
                    points[i],
                    i + 1
                )));
            }
            if points[i] == points[(i + 1) % k] {
                return Err(Error::Degenerate(format!("consecutive points coincide at position {}", i + 1)));
            }
        }
        Ok(FramedCycle { points, framings })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn framings(&self) -> &[ProjLine] {
        &self.framings
    }

    pub fn point(&self, i: usize) -> &ProjPoint {
        &self.points[i % self.len()]
    }

    pub fn framing(&self, i: usize) -> &ProjLine {
        &self.framings[i % self.len()]
    }

    /// Line through `p_i` and `p_{i+1}`.
    pub fn edge_line(&self, i: usize) -> ProjLine {
        self.point(i).join(self.point(i + 1)).expect("consecutive points are distinct")
    }

    pub fn edge_lines(&self) -> Vec<ProjLine> {
        (0..self.len()).map(|i| self.edge_line(i)).collect()
    }

    /// Edge lines in general position, and no framing line through a
    /// neighbouring vertex.
    pub fn is_in_general_position(&self) -> bool {
        let k = self.len();
        lines_in_general_position(&self.edge_lines())
            && (0..k).all(|i| !self.point(i + k - 1).on(&self.framings[i]) && !self.point(i + 1).on(&self.framings[i]))
    }

    fn check_general_position(&self) -> Result<()> {
        if self.is_in_general_position() {
            Ok(())
        } else {
            Err(Error::GeneralPosition { cycle: (1..=self.len()).map(|i| i.to_string()).collect() })
        }
    }

    /// Every vertex and every intersection of two distinct edge lines.
    pub fn forbidden_points(&self) -> Vec<ProjPoint> {
        let lines = self.edge_lines();
        let mut set: BTreeSet<ProjPoint> = self.points.iter().cloned().collect();
        for a in 0..lines.len() {
            for b in a + 1..lines.len() {
                if let Some(p) = lines[a].meet(&lines[b]) {
                    set.insert(p);
                }
            }
        }
        set.into_iter().collect()
    }
}

/// An ordered basis of a line: a distinguished origin and a second point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBasis {
    pub line: ProjLine,
    pub origin: ProjPoint,
    pub second: ProjPoint,
}

impl LineBasis {
    /// Basis at `origin`; the second point is where `line` meets the first
    /// coordinate line `x_k = 0` with `origin_k ≠ 0`.
    pub fn at(line: &ProjLine, origin: &ProjPoint) -> Result<Self> {
        if !origin.on(line) {
            return Err(Error::Precondition(format!("{origin} is not on {line}")));
        }
        let k = origin.ints().iter().position(|x| !x.is_zero()).expect("nonzero point");
        let mut e = [0i64; 3];
        e[k] = 1;
        let axis = ProjLine::from_i64(e).expect("unit vector");
        let second = line.meet(&axis).expect("origin is off the axis, so the lines differ");
        Ok(LineBasis { line: line.clone(), origin: origin.clone(), second })
    }

    /// Coordinates `(s, t)` with `p = s·origin + t·second` on canonical representatives.
    pub fn coords_of_vec(&self, p: &Vec3) -> Result<[Scalar; 2]> {
        let o = self.origin.coords();
        let s = self.second.coords();
        let (a, b, det) = (0..3)
            .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
            .map(|(a, b)| (a, b, &o[a] * &s[b] - &o[b] * &s[a]))
            .find(|(_, _, d)| !d.is_zero())
            .expect("basis points are distinct");
        let alpha = (&p[a] * &s[b] - &p[b] * &s[a]) / &det;
        let beta = (&o[a] * &p[b] - &o[b] * &p[a]) / &det;
        let back: Vec3 = core::array::from_fn(|c| &alpha * &o[c] + &beta * &s[c]);
        if &back != p {
            return Err(Error::Precondition(format!("vector is not on {}", self.line)));
        }
        Ok([alpha, beta])
    }

    pub fn coords_of(&self, p: &ProjPoint) -> Result<[Scalar; 2]> {
        self.coords_of_vec(&p.coords())
    }

    pub fn point_at(&self, st: &[Scalar; 2]) -> Result<ProjPoint> {
        let o = self.origin.coords();
        let s = self.second.coords();
        ProjPoint::new(&core::array::from_fn(|c| &st[0] * &o[c] + &st[1] * &s[c]))
    }
}

/// A projective map between two lines, as a 2×2 matrix in explicit bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineMap {
    pub source: LineBasis,
    pub target: LineBasis,
    pub matrix: [[Scalar; 2]; 2],
}

impl LineMap {
    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let [s, t] = self.source.coords_of(p)?;
        let m = &self.matrix;
        self.target.point_at(&[&m[0][0] * &s + &m[0][1] * &t, &m[1][0] * &s + &m[1][1] * &t])
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &LineMap) -> Result<LineMap> {
        if self.target != next.source {
            return Err(Error::BasisMismatch);
        }
        let (a, b) = (&next.matrix, &self.matrix);
        let matrix = core::array::from_fn(|i| core::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j]));
        Ok(LineMap { source: self.source.clone(), target: next.target.clone(), matrix })
    }

    pub fn determinant(&self) -> Scalar {
        let m = &self.matrix;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    /// Equality as projective maps: same bases and proportional matrices.
    pub fn projectively_equal(&self, other: &LineMap) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        let a: Vec<&Scalar> = self.matrix.iter().flatten().collect();
        let b: Vec<&Scalar> = other.matrix.iter().flatten().collect();
        (0..4).all(|i| (i + 1..4).all(|j| a[i] * b[j] == a[j] * b[i]))
            && (0..4).all(|i| a[i].is_zero() == b[i].is_zero())
    }
}

/// True iff the map is a nonzero multiple of the identity.
pub fn is_trivial(m: &LineMap) -> Result<bool> {
    if m.source != m.target {
        return Err(Error::BasisMismatch);
    }
    let a = &m.matrix;
    Ok(a[0][1].is_zero() && a[1][0].is_zero() && a[0][0] == a[1][1] && !a[0][0].is_zero())
}

/// The perspectivity `ℓ_i → ℓ_{i+1}` with centre `p_i p_{i+1} ∩ aux`.
pub fn shift_map(p_i: &ProjPoint, p_j: &ProjPoint, l_i: &ProjLine, l_j: &ProjLine, aux: &ProjLine) -> Result<LineMap> {
    if p_i.on(aux) || p_j.on(aux) {
        return Err(Error::Precondition("auxiliary line passes through a cycle vertex".into()));
    }
    let edge = p_i
        .join(p_j)
        .ok_or_else(|| Error::Degenerate("shift between coincident points".into()))?;
    if &edge == l_i || &edge == l_j {
        return Err(Error::Precondition("framing line coincides with the edge line".into()));
    }
    let source = LineBasis::at(l_i, p_i)?;
    let target = LineBasis::at(l_j, p_j)?;
    let centre = edge.meet(aux).expect("aux misses p_i so it differs from the edge").coords();
    let lj = l_j.coords();
    let image = |x: &ProjPoint| cross(&lj, &cross(&centre, &x.coords()));
    let c0 = target.coords_of_vec(&image(&source.origin))?;
    let c1 = target.coords_of_vec(&image(&source.second))?;
    let [a, c] = c0;
    let [b, d] = c1;
    let m = LineMap { source, target, matrix: [[a, b], [c, d]] };
    if m.determinant().is_zero() {
        return Err(Error::InvariantViolation("degenerate shift map".into()));
    }
    Ok(m)
}

/// Composition of the shift maps once around the cycle, based at `ℓ_start`.
pub fn monodromy(c: &FramedCycle, start: usize, aux: &ProjLine) -> Result<LineMap> {
    c.check_general_position()?;
    let k = c.len();
    let mut acc: Option<LineMap> = None;
    for step in 0..k {
        let i = start + step;
        let m = shift_map(c.point(i), c.point(i + 1), c.framing(i), c.framing(i + 1), aux)?;
        acc = Some(match acc {
            None => m,
            Some(prev) => prev.then(&m)?,
        });
    }
    let m = acc.expect("k ≥ 3");
    let base = c.point(start);
    let on_aux = c.framing(start).meet(aux).expect("aux misses the base point");
    if &m.apply(base)? != base || m.apply(&on_aux)? != on_aux {
        return Err(Error::InvariantViolation("monodromy does not fix its two known points".into()));
    }
    Ok(m)
}

/// A line avoiding every vertex and every intersection of two edge lines.
pub fn choose_aux_line(c: &FramedCycle, seed: u64) -> ProjLine {
    let forbidden = c.forbidden_points();
    let mut r = rng::from_seed(seed);
    let centre = loop {
        let v: [i64; 3] = core::array::from_fn(|_| r.random_range(-1000..=1000));
        if let Ok(p) = ProjPoint::from_i64(v) {
            if !forbidden.contains(&p) {
                break p;
            }
        }
    };
    let avoid: Vec<ProjLine> = forbidden.iter().map(|f| centre.join(f).expect("centre is not forbidden")).collect();
    pick_generic_line_through(&centre, &avoid, rng::derive(seed, 1))
}

/// Monodromy triviality at `ℓ_0` with an auxiliary line drawn from `seed`.
pub fn monodromy_is_trivial(c: &FramedCycle, seed: u64) -> Result<bool> {
    let aux = choose_aux_line(c, seed);
    is_trivial(&monodromy(c, 0, &aux)?)
}

/// The projection move at position `i`: `p_i` and `p_{i+1}` merge into
/// `p_{i-1}p_i ∩ p_{i+1}p_{i+2}` with framing through `ℓ_i ∩ ℓ_{i+1}`.
pub fn project_cycle(c: &FramedCycle, i: usize) -> Result<FramedCycle> {
    let k = c.len();
    if k < 4 {
        return Err(Error::Precondition("projection needs at least 4 vertices".into()));
    }
    c.check_general_position()?;
    let i = i % k;
    let p = c.edge_line(i + k - 1).meet(&c.edge_line(i + 1)).expect("general position");
    let q = c.framing(i).meet(c.framing(i + 1)).expect("general position");
    let l = p
        .join(&q)
        .ok_or_else(|| Error::Degenerate("merged point lies on both framing lines".into()))?;
    let mut points = c.points.clone();
    let mut framings = c.framings.clone();
    points[i] = p;
    framings[i] = l;
    let drop = (i + 1) % k;
    points.remove(drop);
    framings.remove(drop);
    let out = FramedCycle::new(points, framings)?;
    out.check_general_position()?;
    Ok(out)
}

/// An equilibrium load on a framed cycle: `edges[i] = F_{i,i+1}` and
/// `framings[i]` the force along `ℓ_i` at `p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleLoad {
    pub edges: Vec<Force>,
    pub framings: Vec<Force>,
}

impl CycleLoad {
    pub fn vertex_sum(&self, i: usize) -> Force {
        let k = self.edges.len();
        &(&self.edges[i] - &self.edges[(i + k - 1) % k]) + &self.framings[i]
    }

    pub fn is_equilibrium(&self) -> bool {
        (0..self.edges.len()).all(|i| self.vertex_sum(i).is_zero())
    }
}

fn load_system(c: &FramedCycle, skip: Option<usize>) -> (Matrix, Vec<Vec3>, Vec<Vec3>) {
    let k = c.len();
    let edges: Vec<Vec3> = (0..k).map(|i| cross(&c.point(i).coords(), &c.point(i + 1).coords())).collect();
    let frames: Vec<Vec3> = c.framings.iter().map(ProjLine::coords).collect();
    let rows: Vec<usize> = (0..k).filter(|&i| Some(i) != skip).collect();
    let mut m = Matrix::zeros(3 * rows.len(), 2 * k);
    for (r, &i) in rows.iter().enumerate() {
        let prev = (i + k - 1) % k;
        for a in 0..3 {
            m[(3 * r + a, i)] = edges[i][a].clone();
            m[(3 * r + a, prev)] = -edges[prev][a].clone();
            m[(3 * r + a, k + i)] = frames[i][a].clone();
        }
    }
    (m, edges, frames)
}

fn loads_from_kernel(c: &FramedCycle, skip: Option<usize>) -> Vec<CycleLoad> {
    let k = c.len();
    let (m, edges, frames) = load_system(c, skip);
    nullspace_basis(&m)
        .into_iter()
        .map(|x| CycleLoad {
            edges: (0..k).map(|i| Force::from_dual(scale3(&x[i], &edges[i]))).collect(),
            framings: (0..k).map(|i| Force::from_dual(scale3(&x[k + i], &frames[i]))).collect(),
        })
        .collect()
}

/// Basis of the equilibrium loads: one scale per edge along its line and one
/// per framing line, three equations per vertex.
pub fn cycle_equilibrium_basis(c: &FramedCycle) -> Vec<CycleLoad> {
    loads_from_kernel(c, None)
}

/// Basis of the loads balanced at every vertex except `skip`.
pub fn cycle_almost_equilibrium_basis(c: &FramedCycle, skip: usize) -> Vec<CycleLoad> {
    loads_from_kernel(c, Some(skip % c.len()))
}

/// A scalar-matrix check helper used by tests and callers comparing maps.
pub fn scalar_identity(lambda: Scalar) -> [[Scalar; 2]; 2] {
    [[lambda.clone(), Scalar::zero()], [Scalar::zero(), lambda]]
}

impl LineMap {
    pub fn identity_on(basis: &LineBasis) -> LineMap {
        LineMap { source: basis.clone(), target: basis.clone(), matrix: scalar_identity(Scalar::one()) }
    }
}

/// Framed triangle helper used by tests: framings through the given points.
pub fn framed_triangle(points: [ProjPoint; 3], through: [&ProjPoint; 3]) -> Result<FramedCycle> {
    let framings = (0..3)
        .map(|i| {
            points[i]
                .join(through[i])
                .ok_or_else(|| Error::Degenerate("framing through its own point".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    FramedCycle::new(points.to_vec(), framings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use alloc::vec;

    fn p(a: i64, b: i64, c: i64) -> ProjPoint {
        ProjPoint::from_i64([a, b, c]).unwrap()
    }

    fn triangle(concurrent: bool) -> FramedCycle {
        let pts = [p(0, 0, 1), p(6, 0, 1), p(0, 6, 1)];
        let r = p(1, 1, 1);
        let s = p(3, 1, 1);
        let third = if concurrent { r.clone() } else { s };
        framed_triangle(pts, [&r, &r, &third]).unwrap()
    }

    #[test]
    fn triangle_concurrency_decides_triviality() {
        for seed in 0..5 {
            assert!(monodromy_is_trivial(&triangle(true), seed).unwrap());
            assert!(!monodromy_is_trivial(&triangle(false), seed).unwrap());
        }
        assert!(!cycle_equilibrium_basis(&triangle(true)).is_empty());
        assert!(cycle_equilibrium_basis(&triangle(false)).is_empty());
    }

    #[test]
    fn shift_map_fixed_images() {
        let c = triangle(false);
        let aux = choose_aux_line(&c, 3);
        let m = shift_map(c.point(0), c.point(1), c.framing(0), c.framing(1), &aux).unwrap();
        assert_eq!(&m.apply(c.point(0)).unwrap(), c.point(1));
        let a = c.framing(0).meet(&aux).unwrap();
        let b = c.framing(1).meet(&aux).unwrap();
        assert_eq!(m.apply(&a).unwrap(), b);
    }

    #[test]
    fn shift_map_rejects_aux_through_vertex() {
        let c = triangle(true);
        let aux = c.point(0).join(&p(5, 7, 1)).unwrap();
        assert!(shift_map(c.point(0), c.point(1), c.framing(0), c.framing(1), &aux).is_err());
    }

    #[test]
    fn trivial_matrices() {
        let b = LineBasis::at(&ProjLine::from_i64([0, 1, 0]).unwrap(), &p(0, 0, 1)).unwrap();
        let mut m = LineMap::identity_on(&b);
        assert!(is_trivial(&m).unwrap());
        m.matrix = scalar_identity(int(2));
        assert!(is_trivial(&m).unwrap());
        m.matrix[1][1] = int(1);
        assert!(!is_trivial(&m).unwrap());
        let other = LineBasis::at(&ProjLine::from_i64([1, 0, 0]).unwrap(), &p(0, 0, 1)).unwrap();
        m.target = other;
        assert_eq!(is_trivial(&m), Err(Error::BasisMismatch));
    }

    #[test]
    fn projection_of_square() {
        let pts = vec![p(0, 0, 1), p(5, 1, 1), p(6, 7, 1), p(-1, 4, 1)];
        let through = [p(2, 9, 1), p(-3, 2, 1), p(1, -5, 1), p(7, 3, 1)];
        let fr = (0..4).map(|i| pts[i].join(&through[i]).unwrap()).collect();
        let c = FramedCycle::new(pts, fr).unwrap();
        assert!(c.is_in_general_position());
        let t = project_cycle(&c, 0).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.is_in_general_position());
    }
}
