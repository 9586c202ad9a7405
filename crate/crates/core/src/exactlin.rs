//! Exact dense linear algebra over the rationals.
//!
//! Subspaces are always kept in reduced row-echelon form, so two subspaces
//! of the same ambient space are equal exactly when their [`Subspace`]
//! values compare equal.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::par;

/// Arbitrary-precision rational scalar, always stored in lowest terms.
pub type Rational = num_rational::BigRational;

/// Sparse vector: `(coordinate, coefficient)` pairs sorted by coordinate,
/// with no zero coefficients.
pub type Terms = Vec<(usize, Rational)>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero_vec(len: usize) -> Vec<Rational> {
    vec![Rational::zero(); len]
}

pub fn unit_vec(len: usize, at: usize) -> Vec<Rational> {
    let mut v = zero_vec(len);
    v[at] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Dense vector to sparse terms.
pub fn to_terms(v: &[Rational]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| (i, a.clone()))
        .collect()
}

/// Sparse terms to a dense vector of length `len`.
pub fn from_terms(terms: &[(usize, Rational)], len: usize) -> Vec<Rational> {
    let mut v = zero_vec(len);
    for (i, a) in terms {
        v[*i] += a;
    }
    v
}

/// `acc += scale * terms`
pub fn axpy_terms(acc: &mut [Rational], scale: &Rational, terms: &[(usize, Rational)]) {
    for (i, a) in terms {
        acc[*i] += scale * a;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("subspace is not contained in the larger space; witness vector {witness:?}")]
    NotContained { witness: Vec<String> },
    #[error("vector of length {got} does not fit ambient dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Row-major dense matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows. Panics if a row has the wrong length.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
            entries.extend(r);
        }
        Matrix {
            rows: nrows,
            cols,
            entries,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.row_iter().map(<[Rational]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let support: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let mut acc = Rational::zero();
                for &j in &support {
                    if !row[j].is_zero() {
                        acc += &row[j] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.entries)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

// Row-by-row elimination is split across threads only past this much work.
const PAR_ELIMINATION_WORK: usize = 4096;

fn eliminate_column(
    rows: &mut [Vec<Rational>],
    pivot_row: &[Rational],
    support: &[usize],
    col: usize,
) {
    let step = |row: &mut Vec<Rational>| {
        if row[col].is_zero() {
            return;
        }
        let factor = row[col].clone();
        for &j in support {
            let delta = &factor * &pivot_row[j];
            row[j] -= delta;
        }
    };
    if rows.len() * support.len() >= PAR_ELIMINATION_WORK {
        par::for_each_mut(rows, step);
    } else {
        rows.iter_mut().for_each(step);
    }
}

/// Gauss-Jordan elimination on owned rows. Returns the nonzero rows of the
/// reduced row-echelon form and their pivot columns.
pub(crate) fn rref_rows(
    mut rows: Vec<Vec<Rational>>,
    cols: usize,
) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = rows[rank][col].recip();
        if !inv.is_one() {
            for x in rows[rank][col..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let support: Vec<usize> = (col..cols).filter(|&j| !rows[rank][j].is_zero()).collect();
        let (before, rest) = rows.split_at_mut(rank);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row present");
        eliminate_column(before, pivot_row, &support, col);
        eliminate_column(after, pivot_row, &support, col);
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Reduced row-echelon form of `m` (same shape, zero rows at the bottom)
/// together with its rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let (rows, pivots) = rref_rows(m.to_rows(), m.cols);
    let rank = pivots.len();
    let mut out = Matrix::zeros(m.rows, m.cols);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, x) in row.into_iter().enumerate() {
            out.entries[r * m.cols + c] = x;
        }
    }
    (out, rank)
}

pub fn rank(m: &Matrix) -> usize {
    rref_rows(m.to_rows(), m.cols).1.len()
}

/// Null space `{x : m x = 0}` as a subspace of `Q^cols`.
pub fn kernel(m: &Matrix) -> Subspace {
    kernel_of_rows(m.to_rows(), m.cols)
}

pub(crate) fn kernel_of_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Subspace {
    let (reduced, pivots) = rref_rows(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&j| !is_pivot[j]).collect();
    let basis = par::map_slice(&free, |&f| {
        let mut v = zero_vec(cols);
        v[f] = Rational::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            if !row[f].is_zero() {
                v[p] = -row[f].clone();
            }
        }
        v
    });
    Subspace::span(cols, basis)
}

/// A linear subspace of `Q^ambient`, stored by its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors. Panics on a length mismatch.
    pub fn span(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        let (rows, pivots) = rref_rows(vectors, ambient);
        Subspace {
            ambient,
            basis: Matrix::from_rows(ambient, rows),
            pivots,
        }
    }

    /// Span of the standard basis vectors at `coords`.
    pub fn coordinate(ambient: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let mut coords: Vec<usize> = coords.into_iter().collect();
        coords.sort_unstable();
        coords.dedup();
        let rows = coords.iter().map(|&c| unit_vec(ambient, c)).collect();
        Subspace {
            ambient,
            basis: Matrix::from_rows(ambient, rows),
            pivots: coords,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.basis.row_iter()
    }

    /// Coordinates not used as pivots: a canonical complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&j| !is_pivot[j]).collect()
    }

    /// Reduces `v` modulo this subspace in place. The result vanishes on
    /// every pivot coordinate and is zero exactly when `v` lies in `self`.
    pub fn reduce(&self, v: &mut [Rational]) {
        debug_assert_eq!(v.len(), self.ambient);
        for (r, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            let row = self.basis.row(r);
            for (j, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    v[j] -= &factor * x;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vec(&w)
    }

    /// Checks `other ⊆ self`, returning a basis vector of `other` outside
    /// `self` on failure.
    pub fn contains_subspace(&self, other: &Subspace) -> Result<(), LinAlgError> {
        self.check_ambient(other)?;
        for row in other.basis_rows() {
            if !self.contains(row) {
                return Err(LinAlgError::NotContained {
                    witness: row.iter().map(ToString::to_string).collect(),
                });
            }
        }
        Ok(())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        let mut rows = self.basis.to_rows();
        rows.extend(other.basis.to_rows());
        Ok(Subspace::span(self.ambient, rows))
    }

    /// Exact intersection. Each basis vector `u_i` of `self` is reduced
    /// modulo `other`; the combinations `Σ a_i u_i` lying in `other` are
    /// exactly the kernel of the stacked reduced coordinates.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let reduced: Vec<Vec<Rational>> = par::map_range(self.dim(), |i| {
            let mut v = self.basis.row(i).to_vec();
            other.reduce(&mut v);
            v
        });
        let free = other.non_pivots();
        let system: Vec<Vec<Rational>> = free
            .iter()
            .map(|&k| reduced.iter().map(|v| v[k].clone()).collect())
            .collect();
        let coeffs = kernel_of_rows(system, self.dim());
        let vectors = par::map_range(coeffs.dim(), |r| {
            let a = coeffs.basis.row(r);
            let mut v = zero_vec(self.ambient);
            for (i, ai) in a.iter().enumerate() {
                if !ai.is_zero() {
                    for (j, x) in self.basis.row(i).iter().enumerate() {
                        if !x.is_zero() {
                            v[j] += ai * x;
                        }
                    }
                }
            }
            v
        });
        Ok(Subspace::span(self.ambient, vectors))
    }

    /// `dim self - dim sub`, after checking `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize, LinAlgError> {
        self.contains_subspace(sub)?;
        Ok(self.dim() - sub.dim())
    }

    /// Image of this subspace under `m` (rows of `m` index the target).
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace, LinAlgError> {
        if m.cols() != self.ambient {
            return Err(LinAlgError::LengthMismatch {
                expected: self.ambient,
                got: m.cols(),
            });
        }
        let images = par::map_range(self.dim(), |r| m.mul_vec(self.basis.row(r)));
        Ok(Subspace::span(m.rows(), images))
    }
}

/// Incrementally grows a spanning set, reporting which inserted vectors
/// were new. Rows are kept in semi-echelon form: each row vanishes on the
/// pivots of every row inserted before it.
#[derive(Clone, Debug)]
pub(crate) struct EchelonBuilder {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(ambient: usize) -> Self {
        EchelonBuilder {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Inserts `v`; returns the reduced vector when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> Option<Vec<Rational>> {
        debug_assert_eq!(v.len(), self.ambient);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[j] -= &factor * x;
                }
            }
        }
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = v[p].recip();
        if !inv.is_one() {
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        self.rows.push(v.clone());
        self.pivots.push(p);
        Some(v)
    }

    pub fn finish(self) -> Subspace {
        Subspace::span(self.ambient, self.rows)
    }
}
