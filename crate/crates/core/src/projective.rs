//! Points, lines and forces in the real projective plane with exact
//! homogeneous coordinates.
//!
//! A force `dp ∧ dq` is stored through its Hodge dual, which is the cross
//! product of the homogeneous triples of `p` and `q`. Forces then add as
//! 3-vectors and the line of a force has the dual as its coefficients.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng as _;

use crate::numeric::{int, primitive_integer, Scalar};
use crate::rng;
use crate::{Error, Result};

pub type Vec3 = [Scalar; 3];

/// Range of the integer parameters used for generic draws.
const DRAW_RANGE: i64 = 1000;

pub fn zero3() -> Vec3 {
    [Scalar::zero(), Scalar::zero(), Scalar::zero()]
}

pub fn is_zero3(a: &Vec3) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot(a: &Vec3, b: &Vec3) -> Scalar {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> Scalar {
    dot(a, &cross(b, c))
}

pub fn add3(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn sub3(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn scale3(s: &Scalar, a: &Vec3) -> Vec3 {
    [s * &a[0], s * &a[1], s * &a[2]]
}

fn int_cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn int_dot(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn canonical(v: &Vec3) -> Result<[BigInt; 3]> {
    if is_zero3(v) {
        return Err(Error::Degenerate("all homogeneous coordinates are zero".into()));
    }
    let p = primitive_integer(v);
    Ok([p[0].clone(), p[1].clone(), p[2].clone()])
}

fn canonical_int(v: [BigInt; 3]) -> Option<[BigInt; 3]> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let s: Vec3 = [
        Scalar::from_integer(v[0].clone()),
        Scalar::from_integer(v[1].clone()),
        Scalar::from_integer(v[2].clone()),
    ];
    canonical(&s).ok()
}

fn to_scalars(v: &[BigInt; 3]) -> Vec3 {
    [
        Scalar::from_integer(v[0].clone()),
        Scalar::from_integer(v[1].clone()),
        Scalar::from_integer(v[2].clone()),
    ]
}

macro_rules! homogeneous {
    ($name:ident, $open:literal, $sep:literal, $close:literal) => {
        impl $name {
            /// Canonical representative of the projective class of `v`.
            pub fn new(v: &Vec3) -> Result<Self> {
                canonical(v).map($name)
            }

            pub fn from_i64(v: [i64; 3]) -> Result<Self> {
                Self::new(&[int(v[0]), int(v[1]), int(v[2])])
            }

            /// Primitive integer coordinates, first nonzero entry positive.
            pub fn ints(&self) -> &[BigInt; 3] {
                &self.0
            }

            pub fn coords(&self) -> Vec3 {
                to_scalars(&self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($open, "{}", $sep, "{}", $sep, "{}", $close), self.0[0], self.0[1], self.0[2])
            }
        }
    };
}

/// A point `(a1:a2:a3)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint([BigInt; 3]);

/// A line `a1 x1 + a2 x2 + a3 x3 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjLine([BigInt; 3]);

homogeneous!(ProjPoint, "(", ":", ")");
homogeneous!(ProjLine, "[", ",", "]");

impl ProjPoint {
    /// Line through two distinct points; `None` if they coincide.
    pub fn join(&self, other: &ProjPoint) -> Option<ProjLine> {
        canonical_int(int_cross(&self.0, &other.0)).map(ProjLine)
    }

    pub fn on(&self, l: &ProjLine) -> bool {
        int_dot(&self.0, &l.0).is_zero()
    }
}

impl ProjLine {
    /// Intersection of two distinct lines; `None` if they coincide.
    pub fn meet(&self, other: &ProjLine) -> Option<ProjPoint> {
        canonical_int(int_cross(&self.0, &other.0)).map(ProjPoint)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        p.on(self)
    }
}

pub fn collinear(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
    int_dot(&a.0, &int_cross(&b.0, &c.0)).is_zero()
}

pub fn concurrent(a: &ProjLine, b: &ProjLine, c: &ProjLine) -> bool {
    int_dot(&a.0, &int_cross(&b.0, &c.0)).is_zero()
}

/// Value of a geometric operation: a point, a line, or the token `true`
/// produced when an operation receives coincident arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeomValue {
    Point(ProjPoint),
    Line(ProjLine),
    True,
}

fn expect_line(v: &GeomValue, op: &str) -> Result<Option<ProjLine>> {
    match v {
        GeomValue::Line(l) => Ok(Some(l.clone())),
        GeomValue::True => Ok(None),
        GeomValue::Point(p) => Err(Error::Precondition(format!("{op} expects a line, got point {p}"))),
    }
}

fn expect_point(v: &GeomValue, op: &str) -> Result<Option<ProjPoint>> {
    match v {
        GeomValue::Point(p) => Ok(Some(p.clone())),
        GeomValue::True => Ok(None),
        GeomValue::Line(l) => Err(Error::Precondition(format!("{op} expects a point, got line {l}"))),
    }
}

/// Operation I: the common point of two lines.
pub fn meet(a: &GeomValue, b: &GeomValue) -> Result<GeomValue> {
    let (Some(a), Some(b)) = (expect_line(a, "meet")?, expect_line(b, "meet")?) else {
        return Ok(GeomValue::True);
    };
    Ok(a.meet(&b).map_or(GeomValue::True, GeomValue::Point))
}

/// Operation II: the line through two points.
pub fn join(a: &GeomValue, b: &GeomValue) -> Result<GeomValue> {
    let (Some(a), Some(b)) = (expect_point(a, "join")?, expect_point(b, "join")?) else {
        return Ok(GeomValue::True);
    };
    Ok(a.join(&b).map_or(GeomValue::True, GeomValue::Line))
}

pub fn rel_concurrent(a: &GeomValue, b: &GeomValue, c: &GeomValue) -> Result<bool> {
    let a = expect_line(a, "concurrent")?;
    let b = expect_line(b, "concurrent")?;
    let c = expect_line(c, "concurrent")?;
    Ok(match (a, b, c) {
        (Some(a), Some(b), Some(c)) => concurrent(&a, &b, &c),
        _ => true,
    })
}

pub fn rel_collinear(a: &GeomValue, b: &GeomValue, c: &GeomValue) -> Result<bool> {
    let a = expect_point(a, "collinear")?;
    let b = expect_point(b, "collinear")?;
    let c = expect_point(c, "collinear")?;
    Ok(match (a, b, c) {
        (Some(a), Some(b), Some(c)) => collinear(&a, &b, &c),
        _ => true,
    })
}

pub fn rel_incident(p: &GeomValue, l: &GeomValue) -> Result<bool> {
    let p = expect_point(p, "incident")?;
    let l = expect_line(l, "incident")?;
    Ok(match (p, l) {
        (Some(p), Some(l)) => p.on(&l),
        _ => true,
    })
}

/// A force, stored as the Hodge dual of its 2-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Force {
    pub dual: Vec3,
}

impl Force {
    pub fn zero() -> Self {
        Force { dual: zero3() }
    }

    pub fn from_dual(dual: Vec3) -> Self {
        Force { dual }
    }

    /// A force of unit scale along `l`.
    pub fn along(l: &ProjLine) -> Self {
        Force { dual: l.coords() }
    }

    pub fn is_zero(&self) -> bool {
        is_zero3(&self.dual)
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        Force { dual: scale3(s, &self.dual) }
    }

    pub fn line(&self) -> Result<ProjLine> {
        if self.is_zero() {
            return Err(Error::ZeroForce);
        }
        ProjLine::new(&self.dual)
    }

    /// True if both forces are nonzero and share their line of force.
    pub fn parallel(&self, other: &Force) -> bool {
        !self.is_zero() && !other.is_zero() && is_zero3(&cross(&self.dual, &other.dual))
    }

    /// `s` with `self = s * other`, if `other` is nonzero and the two are proportional.
    pub fn ratio_to(&self, other: &Force) -> Option<Scalar> {
        let k = (0..3).find(|&k| !other.dual[k].is_zero())?;
        let s = &self.dual[k] / &other.dual[k];
        (scale3(&s, &other.dual) == self.dual).then_some(s)
    }

    /// The interior product with the chart's constant field: a 1-form
    /// whose affine part is proportional to the displacement between the
    /// two points defining the force.
    pub fn affine_vector(&self, chart: &AffineChart) -> Vec3 {
        cross(&self.dual, &chart.field())
    }
}

impl Add for &Force {
    type Output = Force;
    fn add(self, rhs: &Force) -> Force {
        Force { dual: add3(&self.dual, &rhs.dual) }
    }
}

impl Add for Force {
    type Output = Force;
    fn add(self, rhs: Force) -> Force {
        &self + &rhs
    }
}

impl Sub for &Force {
    type Output = Force;
    fn sub(self, rhs: &Force) -> Force {
        Force { dual: sub3(&self.dual, &rhs.dual) }
    }
}

impl Neg for &Force {
    type Output = Force;
    fn neg(self) -> Force {
        Force { dual: [-&self.dual[0], -&self.dual[1], -&self.dual[2]] }
    }
}

impl Neg for Force {
    type Output = Force;
    fn neg(self) -> Force {
        -&self
    }
}

/// `scale · dp ∧ dq` for the canonical representatives of `p` and `q`.
pub fn force_between(p: &ProjPoint, q: &ProjPoint, scale: &Scalar) -> Result<Force> {
    if scale.is_zero() {
        return Ok(Force::zero());
    }
    if p == q {
        return Err(Error::Degenerate(format!("force between coincident points {p}")));
    }
    Ok(Force { dual: scale3(scale, &cross(&p.coords(), &q.coords())) })
}

pub fn line_of_force(f: &Force) -> Result<ProjLine> {
    f.line()
}

/// An affine chart given by its line at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChart {
    pub infinity: ProjLine,
}

impl Default for AffineChart {
    fn default() -> Self {
        AffineChart::standard()
    }
}

impl AffineChart {
    /// The chart `z = 1`, with infinity line `z = 0`.
    pub fn standard() -> Self {
        AffineChart { infinity: ProjLine::from_i64([0, 0, 1]).expect("nonzero") }
    }

    pub fn new(infinity: ProjLine) -> Self {
        AffineChart { infinity }
    }

    /// The constant field `V = (A1, A2, A3)`.
    pub fn field(&self) -> Vec3 {
        self.infinity.coords()
    }

    pub fn at_infinity(&self, p: &ProjPoint) -> bool {
        p.on(&self.infinity)
    }

    /// Representative `p / (V·p)` lying on the affine plane `V·x = 1`.
    pub fn normalize(&self, p: &ProjPoint) -> Option<Vec3> {
        let c = p.coords();
        let d = dot(&c, &self.field());
        (!d.is_zero()).then(|| scale3(&d.recip(), &c))
    }

    /// Coordinate dropped when reading two affine coordinates.
    pub fn dropped_axis(&self) -> usize {
        let v = self.infinity.ints();
        (0..3).rev().find(|&k| !v[k].is_zero()).expect("nonzero line")
    }

    /// Two affine coordinates of `p` (for `z = 0` these are `x/z, y/z`).
    pub fn affine_coords(&self, p: &ProjPoint) -> Option<[Scalar; 2]> {
        let n = self.normalize(p)?;
        let k = self.dropped_axis();
        let mut out = n.into_iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| x);
        Some([out.next()?, out.next()?])
    }
}

/// Two independent integer vectors orthogonal to `v`.
fn pencil_basis(v: &[BigInt; 3]) -> ([BigInt; 3], [BigInt; 3]) {
    let units: [[BigInt; 3]; 3] = [
        [BigInt::one(), BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero(), BigInt::one()],
    ];
    let cands: Vec<[BigInt; 3]> = units
        .iter()
        .map(|e| int_cross(v, e))
        .filter(|c| !c.iter().all(Zero::is_zero))
        .collect();
    let a = cands[0].clone();
    let b = cands[1..]
        .iter()
        .find(|c| !int_cross(&a, c).iter().all(Zero::is_zero))
        .expect("a nonzero vector has a two-dimensional orthogonal complement")
        .clone();
    (a, b)
}

fn draw_in_pencil(v: &[BigInt; 3], r: &mut rng::Rng) -> [BigInt; 3] {
    let (a, b) = pencil_basis(v);
    loop {
        let s = BigInt::from(r.random_range(-DRAW_RANGE..=DRAW_RANGE));
        let t = BigInt::from(r.random_range(-DRAW_RANGE..=DRAW_RANGE));
        if s.is_zero() && t.is_zero() {
            continue;
        }
        let w = [&s * &a[0] + &t * &b[0], &s * &a[1] + &t * &b[1], &s * &a[2] + &t * &b[2]];
        if let Some(c) = canonical_int(w) {
            return c;
        }
    }
}

/// Operation III: a seeded pseudo-random rational point on `l` outside `avoid`.
pub fn pick_generic_point_on(l: &ProjLine, avoid: &[ProjPoint], seed: u64) -> ProjPoint {
    let mut r = rng::from_seed(seed);
    loop {
        let p = ProjPoint(draw_in_pencil(&l.0, &mut r));
        if !avoid.contains(&p) {
            return p;
        }
    }
}

/// Operation IV: a seeded pseudo-random rational line through `p` outside `avoid`.
pub fn pick_generic_line_through(p: &ProjPoint, avoid: &[ProjLine], seed: u64) -> ProjLine {
    let mut r = rng::from_seed(seed);
    loop {
        let l = ProjLine(draw_in_pencil(&p.0, &mut r));
        if !avoid.contains(&l) {
            return l;
        }
    }
}

/// Checks the two non-parallelizability conditions on the forces meeting at
/// one vertex: no proper nonempty subset sums to zero, and the lines of the
/// partial sums `F1 + Σ a_i F_i` over `a ∈ {0,1}^(s-1)` minus the all-ones
/// vector are pairwise distinct.
pub fn star_is_non_parallelizable(forces: &[Force]) -> bool {
    let s = forces.len();
    if s == 0 {
        return false;
    }
    assert!(s < 31, "vertex degree too large for subset enumeration");
    let full = (1u32 << s) - 1;
    let sum = |mask: u32| {
        let mut acc = zero3();
        for (k, f) in forces.iter().enumerate() {
            if mask >> k & 1 == 1 {
                acc = add3(&acc, &f.dual);
            }
        }
        acc
    };
    let mut lines = BTreeSet::new();
    for mask in 1..full {
        let t = sum(mask);
        if is_zero3(&t) {
            return false;
        }
        if mask & 1 == 1 {
            let l = ProjLine::new(&t).expect("nonzero");
            if !lines.insert(l) {
                return false;
            }
        }
    }
    true
}

/// An invertible projective transformation with integer matrix `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homography {
    m: [[BigInt; 3]; 3],
}

impl Homography {
    pub fn new(m: [[i64; 3]; 3]) -> Result<Self> {
        let h = Homography { m: m.map(|r| r.map(BigInt::from)) };
        if h.det().is_zero() {
            return Err(Error::Degenerate("singular projective transformation".into()));
        }
        Ok(h)
    }

    pub fn det(&self) -> BigInt {
        int_dot(&self.m[0], &int_cross(&self.m[1], &self.m[2]))
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        let v = [int_dot(&self.m[0], &p.0), int_dot(&self.m[1], &p.0), int_dot(&self.m[2], &p.0)];
        ProjPoint(canonical_int(v).expect("invertible map"))
    }

    /// Lines transform by the inverse transpose; the cofactor matrix is used
    /// since scale does not matter.
    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        let cof = [
            int_cross(&self.m[1], &self.m[2]),
            int_cross(&self.m[2], &self.m[0]),
            int_cross(&self.m[0], &self.m[1]),
        ];
        let w = [
            int_dot(&cof[0], &l.0),
            int_dot(&cof[1], &l.0),
            int_dot(&cof[2], &l.0),
        ];
        ProjLine(canonical_int(w).expect("invertible map"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64, c: i64) -> ProjPoint {
        ProjPoint::from_i64([a, b, c]).unwrap()
    }

    fn l(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::from_i64([a, b, c]).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(-2, 4, 0), p(1, -2, 0));
        assert_eq!(p(2, 4, 6).ints(), &[1.into(), 2.into(), 3.into()]);
        assert!(ProjPoint::from_i64([0, 0, 0]).is_err());
        let half = crate::numeric::ratio(1, 2);
        assert_eq!(ProjPoint::new(&[half.clone(), half, int(1)]).unwrap(), p(1, 1, 2));
    }

    #[test]
    fn meet_and_join_examples() {
        let x0 = GeomValue::Line(l(1, 0, 0));
        let y0 = GeomValue::Line(l(0, 1, 0));
        assert_eq!(meet(&x0, &y0).unwrap(), GeomValue::Point(p(0, 0, 1)));
        assert_eq!(meet(&x0, &x0).unwrap(), GeomValue::True);
        assert_eq!(meet(&x0, &GeomValue::True).unwrap(), GeomValue::True);
        let a = GeomValue::Point(p(1, 0, 1));
        let b = GeomValue::Point(p(0, 1, 1));
        assert_eq!(join(&a, &b).unwrap(), GeomValue::Line(l(-1, -1, 1)));
        assert_eq!(join(&a, &a).unwrap(), GeomValue::True);
        assert!(meet(&a, &x0).is_err());
        let m = l(1, 1, -1).meet(&l(1, -1, 0)).unwrap();
        assert!(m.on(&l(1, 1, -1)) && m.on(&l(1, -1, 0)));
    }

    #[test]
    fn relations() {
        let t = GeomValue::True;
        let g = |x: ProjLine| GeomValue::Line(x);
        let q = |x: ProjPoint| GeomValue::Point(x);
        assert!(rel_concurrent(&g(l(1, 0, 0)), &g(l(0, 1, 0)), &g(l(1, 1, 0))).unwrap());
        assert!(!rel_concurrent(&g(l(1, 0, 0)), &g(l(0, 1, 0)), &g(l(1, 1, -1))).unwrap());
        assert!(rel_concurrent(&g(l(1, 0, 0)), &g(l(1, 0, 0)), &g(l(1, 1, -1))).unwrap());
        assert!(rel_collinear(&q(p(0, 0, 1)), &q(p(1, 0, 1)), &q(p(2, 0, 1))).unwrap());
        assert!(!rel_collinear(&q(p(0, 0, 1)), &q(p(1, 0, 1)), &q(p(0, 1, 1))).unwrap());
        assert!(rel_collinear(&q(p(0, 0, 1)), &q(p(0, 0, 1)), &q(p(0, 1, 1))).unwrap());
        assert!(!rel_incident(&q(p(0, 0, 1)), &g(l(0, 0, 1))).unwrap());
        assert!(rel_incident(&q(p(1, 0, 0)), &g(l(0, 0, 1))).unwrap());
        assert!(rel_incident(&q(p(0, 0, 1)), &t).unwrap());
    }

    #[test]
    fn forces() {
        let a = p(1, 0, 1);
        let b = p(2, 0, 1);
        let f = force_between(&a, &b, &int(1)).unwrap();
        assert_eq!(f.line().unwrap(), l(0, 1, 0));
        assert_eq!(f.scaled(&int(5)).line().unwrap(), f.line().unwrap());
        assert!(force_between(&a, &b, &int(0)).unwrap().is_zero());
        assert!(force_between(&a, &a, &int(1)).is_err());
        assert!(force_between(&a, &a, &int(0)).unwrap().is_zero());
        let g = force_between(&b, &a, &int(1)).unwrap();
        assert!((&f + &g).is_zero());
        assert_eq!(Force::zero().line(), Err(Error::ZeroForce));
    }

    #[test]
    fn affine_vector_is_displacement() {
        let chart = AffineChart::standard();
        let a = p(3, 5, 1);
        let b = p(1, -2, 1);
        let f = force_between(&a, &b, &int(1)).unwrap();
        let w = f.affine_vector(&chart);
        // (a × b) × V = b − a when both points are normalized in the chart.
        assert_eq!(w, [int(-2), int(-7), int(0)]);
        assert!(is_zero3(&Force::zero().affine_vector(&chart)));
    }

    #[test]
    fn pickers_are_seeded() {
        let y0 = l(0, 1, 0);
        let o = p(0, 0, 1);
        let a = pick_generic_point_on(&y0, core::slice::from_ref(&o), 7);
        assert!(a.on(&y0) && a != o);
        assert_eq!(a, pick_generic_point_on(&y0, core::slice::from_ref(&o), 7));
        let m = pick_generic_line_through(&o, core::slice::from_ref(&y0), 3);
        assert!(o.on(&m) && m != y0);
        assert_eq!(m, pick_generic_line_through(&o, &[y0], 3));
    }

    #[test]
    fn homography_preserves_incidence() {
        let h = Homography::new([[2, 1, 0], [0, 1, 3], [1, 0, 1]]).unwrap();
        let a = p(1, 2, 3);
        let b = p(-4, 1, 7);
        let line = a.join(&b).unwrap();
        assert_eq!(h.apply_line(&line), h.apply_point(&a).join(&h.apply_point(&b)).unwrap());
    }
}
