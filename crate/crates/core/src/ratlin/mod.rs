//! Exact rational linear algebra.
//!
//! Everything in this crate is computed over the rationals. [`QVector`] and
//! [`QMatrix`] are thin wrappers around `Vec<BigRational>`; [`Subspace`] keeps
//! a linear subspace in reduced row echelon form so that equality of
//! subspaces is equality of values.

pub mod lattice;
pub mod lp;

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use lattice::{integer_kernel_basis, saturated_lattice_basis};
pub use lp::{lp_feasible, Constraint, LinearProgram, LpOutcome, Relation};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Builds a rational from a pair of machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds an integral rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A vector of rationals of fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        QVector(vec![Rational::zero(); n])
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        QVector(entries.iter().map(|&x| int(x)).collect())
    }

    pub fn from_bigints(entries: &[BigInt]) -> Self {
        QVector(entries.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> QVector {
        QVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: &Rational, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// The entries as integers, if all are integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.0.iter().map(|x| x.to_integer()).collect())
    }

    /// Appends one coordinate.
    pub fn extended(&self, last: Rational) -> QVector {
        let mut v = self.0.clone();
        v.push(last);
        QVector(v)
    }

    /// Drops the last coordinate.
    pub fn truncated(&self) -> QVector {
        QVector(self.0[..self.0.len() - 1].to_vec())
    }

    pub fn last(&self) -> &Rational {
        self.0.last().expect("empty vector")
    }

    /// Index of the first nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_zero())
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl FromIterator<Rational> for QVector {
    fn from_iter<T: IntoIterator<Item = Rational>>(iter: T) -> Self {
        QVector(iter.into_iter().collect())
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A rectangular rational matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: Vec<QVector>,
    cols: usize,
}

impl QMatrix {
    pub fn new(rows: Vec<QVector>, cols: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        Ok(QMatrix { rows, cols })
    }

    /// Builds a matrix from nonempty, equal-length rows.
    pub fn from_rows(rows: Vec<QVector>) -> Result<Self> {
        let cols = rows.first().map(QVector::len).unwrap_or(0);
        Self::new(rows, cols)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| QVector::from_ints(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        QMatrix {
            rows: (0..n).map(|i| QVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn mul_vec(&self, v: &QVector) -> QVector {
        self.rows.iter().map(|r| r.dot(v)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        QMatrix {
            rows,
            cols: self.rows.len(),
        }
    }

    pub fn rank(&self) -> usize {
        rref(&self.rows, self.cols).1.len()
    }
}

/// Reduced row echelon form. Returns the nonzero rows (pivot entries equal to
/// one) and their pivot columns.
pub fn rref(rows: &[QVector], cols: usize) -> (Vec<QVector>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m.into_iter().map(QVector).collect(), pivots)
}

/// Kernel basis read off a reduced row echelon form.
fn kernel_from_rref(rref_rows: &[QVector], pivots: &[usize], cols: usize) -> Vec<QVector> {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = QVector::zeros(cols);
            v.0[f] = Rational::one();
            for (row, &p) in rref_rows.iter().zip(pivots) {
                v.0[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Rank of `a` together with a basis of its right kernel.
pub fn rank_and_kernel(a: &QMatrix) -> (usize, Vec<QVector>) {
    let (rows, pivots) = rref(&a.rows, a.cols);
    let kernel = kernel_from_rref(&rows, &pivots, a.cols);
    (pivots.len(), kernel)
}

/// Right kernel of the matrix whose rows are `rows`, each of length `cols`.
pub fn kernel(rows: &[QVector], cols: usize) -> Vec<QVector> {
    let (r, p) = rref(rows, cols);
    kernel_from_rref(&r, &p, cols)
}

pub fn rank_of(rows: &[QVector], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// The primitive integer vector that is a positive multiple of `v`.
pub fn primitive_vector(v: &QVector) -> Result<Vec<BigInt>> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let denom_lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(ints.into_iter().map(|x| x / &g).collect())
}

/// [`primitive_vector`] returned as a [`QVector`].
pub fn primitive(v: &QVector) -> Result<QVector> {
    primitive_vector(v).map(|p| QVector::from_bigints(&p))
}

/// Scales `v` by a positive rational so that it becomes integral and primitive;
/// the zero vector is returned unchanged.
pub fn primitive_or_zero(v: &QVector) -> QVector {
    primitive(v).unwrap_or_else(|_| v.clone())
}

/// A linear subspace of `Q^n` kept in reduced row echelon form.
///
/// Two subspaces are equal iff their stored forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<QVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &QMatrix::identity(ambient).rows)
    }

    pub fn span(ambient: usize, vectors: &[QVector]) -> Self {
        let (rows, pivots) = rref(vectors, ambient);
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The echelon basis (pivot entries are one).
    pub fn echelon_basis(&self) -> &[QVector] {
        &self.rows
    }

    /// Canonical basis of primitive integer vectors.
    pub fn integer_basis(&self) -> Vec<QVector> {
        self.rows.iter().map(primitive_or_zero).collect()
    }

    /// Reduces `v` modulo the subspace by clearing pivot coordinates. The
    /// result is the same for any two vectors with equal residue class.
    pub fn reduce(&self, v: &QVector) -> QVector {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let f = -out[p].clone();
                out = out.add_scaled(&f, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &QVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    /// Vectors orthogonal to every vector of the subspace.
    pub fn orthogonal_complement(&self) -> Subspace {
        let k = kernel_from_rref(&self.rows, &self.pivots, self.ambient);
        Subspace::span(self.ambient, &k)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.orthogonal_complement()
            .sum(&other.orthogonal_complement())
            .orthogonal_complement()
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_full_rank_and_no_kernel() {
        let (r, k) = rank_and_kernel(&QMatrix::identity(2));
        assert_eq!(r, 2);
        assert!(k.is_empty());
    }

    #[test]
    fn proportional_rows_have_rank_one() {
        let a = QMatrix::from_ints(&[&[1, 2], &[2, 4]]).unwrap();
        let (r, k) = rank_and_kernel(&a);
        assert_eq!(r, 1);
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).is_zero());
    }

    #[test]
    fn primitive_examples() {
        let p = primitive_vector(&QVector::from_ints(&[2, 4, -6])).unwrap();
        assert_eq!(p, vec![1.into(), 2.into(), BigInt::from(-3)]);
        let p = primitive_vector(&QVector::new(vec![rat(1, 2), rat(1, 3)])).unwrap();
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(2)]);
        assert!(matches!(
            primitive_vector(&QVector::zeros(3)),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn subspace_reduce_and_intersection() {
        let a = Subspace::span(
            3,
            &[QVector::from_ints(&[1, 0, 0]), QVector::from_ints(&[0, 1, 0])],
        );
        let b = Subspace::span(
            3,
            &[QVector::from_ints(&[0, 1, 0]), QVector::from_ints(&[0, 0, 1])],
        );
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::span(3, &[QVector::from_ints(&[0, 5, 0])]));
        assert_eq!(
            a.reduce(&QVector::from_ints(&[3, 4, 5])),
            QVector::from_ints(&[0, 0, 5])
        );
        assert_eq!(a.orthogonal_complement().dim(), 1);
    }
}
