//! Exact rational scalars, vectors and matrices.
//!
//! Every coordinate, normal and right-hand side in this crate is a
//! [`Rational`]; there is no floating point anywhere. Values are kept in
//! canonical form (coprime numerator/denominator, positive denominator)
//! after every operation, so equality is structural and hashing works.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix rows must all have the same length")]
    RaggedRows,
    #[error("cannot parse rational from `{0}`")]
    Parse(String),
}

/// Arbitrary-precision rational number in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// `p/q`; panics if `q == 0`.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_bigints(p: BigInt, q: BigInt) -> Self {
        assert!(!q.is_zero(), "zero denominator");
        Rational(BigRational::new(p, q))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BigRational already prints `p/q`, or `p` when the denominator is 1.
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| ExactError::Parse(s.into()))?;
                let q = BigInt::from_str(q.trim()).map_err(|_| ExactError::Parse(s.into()))?;
                if q.is_zero() {
                    return Err(ExactError::Parse(s.into()));
                }
                Ok(Rational(BigRational::new(p, q)))
            }
            None => {
                let p = BigInt::from_str(s).map_err(|_| ExactError::Parse(s.into()))?;
                Ok(Rational(BigRational::from_integer(p)))
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
rational_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

/// Dense vector of rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RVector {
    entries: Vec<Rational>,
}

impl RVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RVector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        RVector {
            entries: vec![Rational::zero(); dim],
        }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[i] = Rational::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RVector {
            entries: entries.iter().map(|&n| Rational::from_int(n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn dot(&self, other: &RVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dims");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &RVector) -> RVector {
        assert_eq!(self.dim(), other.dim());
        RVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RVector) -> RVector {
        assert_eq!(self.dim(), other.dim());
        RVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RVector {
        RVector {
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> RVector {
        RVector {
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    /// Append one entry, raising the dimension by one.
    pub fn extended(&self, last: Rational) -> RVector {
        let mut entries = self.entries.clone();
        entries.push(last);
        RVector { entries }
    }

    /// Scale to coprime integer entries; the sign of the first nonzero entry
    /// becomes positive. Zero vectors are returned unchanged.
    pub fn primitive_signed(&self) -> RVector {
        let v = self.primitive_positive_scale();
        match v.entries.iter().find(|e| !e.is_zero()) {
            Some(e) if e.is_negative() => v.neg(),
            _ => v,
        }
    }

    /// Scale by a positive rational to coprime integer entries.
    pub fn primitive_positive_scale(&self) -> RVector {
        if self.is_zero() {
            return self.clone();
        }
        let denom_lcm = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let ints: Vec<BigInt> = self
            .entries
            .iter()
            .map(|e| e.numer() * (&denom_lcm / e.denom()))
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, n| acc.gcd(n));
        RVector {
            entries: ints
                .into_iter()
                .map(|n| Rational::from_bigint(n / &g))
                .collect(),
        }
    }
}

impl Index<usize> for RVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Rectangular matrix of rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RMatrix {
    rows: Vec<RVector>,
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(RVector),
    Inconsistent,
    Underdetermined,
}

impl LinearSolution {
    pub fn unique(self) -> Option<RVector> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

impl RMatrix {
    pub fn new(rows: Vec<RVector>) -> Result<Self, ExactError> {
        if let Some(first) = rows.first() {
            let d = first.dim();
            if rows.iter().any(|r| r.dim() != d) {
                return Err(ExactError::RaggedRows);
            }
        }
        Ok(RMatrix { rows })
    }

    pub fn from_rows_ints(rows: &[&[i64]]) -> Self {
        RMatrix {
            rows: rows.iter().map(|r| RVector::from_ints(r)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        RMatrix {
            rows: (0..n).map(|i| RVector::unit(n, i)).collect(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, RVector::dim)
    }

    pub fn row(&self, i: usize) -> &RVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[RVector] {
        &self.rows
    }

    pub fn transpose(&self) -> RMatrix {
        let (nr, nc) = (self.n_rows(), self.n_cols());
        RMatrix {
            rows: (0..nc)
                .map(|j| RVector::new((0..nr).map(|i| self.rows[i][j].clone()).collect()))
                .collect(),
        }
    }

    pub fn mul_vector(&self, v: &RVector) -> RVector {
        RVector::new(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    pub fn mul_matrix(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.n_cols(), other.n_rows());
        let ot = other.transpose();
        RMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| RVector::new(ot.rows.iter().map(|c| r.dot(c)).collect()))
                .collect(),
        }
    }

    /// Rank over the rationals by exact Gaussian elimination. The pivot is
    /// always the first row with a nonzero entry in the leftmost open column,
    /// which keeps the elimination deterministic across platforms.
    pub fn rank(&self) -> usize {
        let mut work: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|r| r.entries().to_vec())
            .collect();
        row_echelon(&mut work).len()
    }

    /// Solve `self * x = b` exactly for square or overdetermined systems.
    pub fn solve(&self, b: &RVector) -> LinearSolution {
        assert_eq!(self.n_rows(), b.dim(), "rhs length mismatch");
        let nc = self.n_cols();
        let mut work: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .zip(b.iter())
            .map(|(r, rhs)| {
                let mut row = r.entries().to_vec();
                row.push(rhs.clone());
                row
            })
            .collect();
        let pivots = row_echelon(&mut work);
        if pivots.contains(&nc) {
            return LinearSolution::Inconsistent;
        }
        if pivots.len() < nc {
            return LinearSolution::Underdetermined;
        }
        // Reduced echelon form with unit pivots: solution sits in the last column.
        let mut x = vec![Rational::zero(); nc];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = work[r][nc].clone();
        }
        LinearSolution::Unique(RVector::new(x))
    }

    /// Basis of the right null space, one vector per free column, in
    /// ascending free-column order.
    pub fn null_space(&self) -> Vec<RVector> {
        let nc = self.n_cols();
        let mut work: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|r| r.entries().to_vec())
            .collect();
        let pivots = row_echelon(&mut work);
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..nc).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![Rational::zero(); nc];
            v[free] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -work[r][free].clone();
            }
            basis.push(RVector::new(v));
        }
        basis
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RMatrix> {
        let n = self.n_rows();
        if n != self.n_cols() {
            return None;
        }
        let mut work: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.entries().to_vec();
                row.extend(RVector::unit(n, i).entries().iter().cloned());
                row
            })
            .collect();
        let pivots = row_echelon(&mut work);
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let rows = (0..n)
            .map(|i| RVector::new(work[i][n..].to_vec()))
            .collect();
        Some(RMatrix { rows })
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        write!(f, "]")
    }
}

/// In-place reduced row echelon form; returns the pivot columns.
fn row_echelon(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let nr = rows.len();
    let nc = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for e in rows[r].iter_mut() {
            *e = &*e * &inv;
        }
        for i in 0..nr {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..nc {
                    let sub = &rows[r][j] * &f;
                    rows[i][j] -= &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact rank of a matrix, free function form.
pub fn rank(m: &RMatrix) -> usize {
    m.rank()
}

/// Null space basis for a list of row constraints of known width; an empty
/// list constrains nothing, so the whole space comes back.
pub fn null_space_of(rows: &[RVector], width: usize) -> Vec<RVector> {
    if rows.is_empty() {
        return (0..width).map(|i| RVector::unit(width, i)).collect();
    }
    RMatrix::new(rows.to_vec())
        .expect("rows are rectangular")
        .null_space()
}

/// Exact unique solution of `m x = b`, with a flag distinguishing "no
/// solution" from "not unique".
pub fn solve_linear(m: &RMatrix, b: &RVector) -> LinearSolution {
    m.solve(b)
}

/// Dimension of the affine hull of a point set; a single point yields 0.
pub fn affine_dim(points: &[RVector]) -> Result<usize, ExactError> {
    let first = points.first().ok_or(ExactError::EmptyInput)?;
    let diffs: Vec<RVector> = points[1..].iter().map(|p| p.sub(first)).collect();
    Ok(RMatrix::new(diffs)?.rank())
}

/// Affine coordinate system of the hull of a point set.
///
/// Restricting a point configuration to its affine hull (pick an origin, a
/// maximal independent set of difference vectors, solve for coordinates) is
/// what lets facet enumeration run on non-full-dimensional inputs such as
/// transportation polytopes.
#[derive(Clone, Debug)]
pub struct AffineChart {
    origin: RVector,
    basis: Vec<RVector>,
    /// `k x D` left inverse of the basis: local = to_local * (x - origin).
    to_local: RMatrix,
}

impl AffineChart {
    pub fn fit(points: &[RVector]) -> Result<AffineChart, ExactError> {
        let origin = points.first().ok_or(ExactError::EmptyInput)?.clone();
        let mut basis: Vec<RVector> = Vec::new();
        let mut current_rank = 0;
        for p in &points[1..] {
            let cand = p.sub(&origin);
            if cand.is_zero() {
                continue;
            }
            let mut trial = basis.clone();
            trial.push(cand.clone());
            let r = RMatrix::new(trial)?.rank();
            if r > current_rank {
                basis.push(cand);
                current_rank = r;
            }
        }
        // B has full column rank, so (B^T B)^{-1} B^T exists and is exact.
        let b = RMatrix::new(basis.clone())?.transpose();
        let bt = b.transpose();
        let gram = bt.mul_matrix(&b);
        let to_local = match gram.inverse() {
            Some(inv) => inv.mul_matrix(&bt),
            None => RMatrix::new(Vec::new())?,
        };
        Ok(AffineChart {
            origin,
            basis,
            to_local,
        })
    }

    pub fn hull_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.hull_dim() == self.ambient_dim()
    }

    /// Coordinates of a hull point in the chart.
    pub fn local(&self, p: &RVector) -> RVector {
        if self.basis.is_empty() {
            return RVector::new(Vec::new());
        }
        self.to_local.mul_vector(&p.sub(&self.origin))
    }

    /// Pull a chart hyperplane `n . t <= c` back to an ambient halfspace.
    pub fn lift_hyperplane(&self, normal: &RVector, rhs: &Rational) -> (RVector, Rational) {
        let lifted = self.to_local.transpose().mul_vector(normal);
        let shift = lifted.dot(&self.origin);
        (lifted, rhs + &shift)
    }

    /// Ambient equations cutting out the affine hull (empty when
    /// full-dimensional).
    pub fn hull_equations(&self) -> Vec<(RVector, Rational)> {
        if self.basis.is_empty() {
            // A single point: every coordinate is pinned.
            return (0..self.ambient_dim())
                .map(|i| {
                    let e = RVector::unit(self.ambient_dim(), i);
                    let rhs = e.dot(&self.origin);
                    (e, rhs)
                })
                .collect();
        }
        let m = RMatrix::new(self.basis.clone()).expect("basis is rectangular");
        m.null_space()
            .into_iter()
            .map(|n| {
                let n = n.primitive_signed();
                let rhs = n.dot(&self.origin);
                (n, rhs)
            })
            .collect()
    }
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| Rational::new(p, q))
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = RMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r).prop_map(
                |rows| {
                    RMatrix::new(
                        rows.into_iter()
                            .map(|row| RVector::from_ints(&row))
                            .collect(),
                    )
                    .unwrap()
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn add_sub_cancels(a in arb_rational(), b in arb_rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix(4)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solve_satisfies_system(m in arb_matrix(4), seed in proptest::collection::vec(-6i64..=6, 1..=4)) {
            let n = m.n_cols();
            let x0 = RVector::from_ints(&seed[..seed.len().min(n)]);
            prop_assume!(x0.dim() == n);
            let b = m.mul_vector(&x0);
            if let LinearSolution::Unique(x) = m.solve(&b) {
                prop_assert_eq!(m.mul_vector(&x), b);
            }
        }
    }
}
