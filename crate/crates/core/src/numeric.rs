//! Exact rational scalars and dense linear algebra over them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};
use core::str::FromStr;

pub use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact scalar: a reduced fraction with positive denominator.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational literal: {text:?}"));
    match t.split_once('/') {
        None => BigInt::from_str(t).map(Scalar::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Scalar::new(n, d))
        }
    }
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
/// Nearest `f64`, for drawing only.
pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive. The zero vector is returned unchanged.
pub fn primitive_integer(v: &[Scalar]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    let neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if neg {
        g = -g;
    }
    for x in &mut ints {
        *x = &*x / &g;
    }
    ints
}

/// Dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::Degenerate(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| int(x))
            })
            .collect();
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &f * &self[(r, j)];
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// Basis of `{x : m x = 0}`. Each vector is scaled to primitive integers
/// with its first nonzero entry positive.
pub fn nullspace_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut r = m.clone();
    let pivots = r.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); m.cols];
        v[free] = Scalar::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r[(row, free)].clone();
        }
        basis.push(primitive_integer(&v).into_iter().map(Scalar::from_integer).collect());
    }
    basis
}

/// One solution of `m x = b` (free variables set to zero), or `None`.
pub fn solve_linear(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(m.rows, b.len(), "right-hand side length must equal row count");
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = b[i].clone();
    }
    let pivots = aug.rref();
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug[(row, m.cols)].clone();
    }
    Some(x)
}
