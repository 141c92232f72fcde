//! Dense matrices over the rationals with exact row reduction.
//!
//! Everything in this crate is computed over `Q`; there is no floating point.
//! Subspaces are compared through their reduced row-echelon forms, which are
//! unique for a given row space.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The coefficient field.
pub type Q = BigRational;

/// Build a rational from a machine integer.
pub fn q(value: i64) -> Q {
    Q::from_integer(BigInt::from(value))
}

/// Parse a fraction string such as `"3/2"`, `"-1"` or `"0"`.
pub fn parse_q(text: &str) -> Option<Q> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return None;
    }
    Q::from_str(trimmed).ok()
}

/// Render a rational the way documents expect it: `"3/2"`, `"-1"`.
pub fn format_q(value: &Q) -> String {
    value.to_string()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn scalar(n: usize, value: Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = value.clone();
        }
        m
    }

    /// Build from explicit rows. All rows must share a length; `cols` is
    /// needed to express matrices with zero rows.
    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Q) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn scale(&self, factor: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * factor).collect() }
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row-echelon form with zero rows dropped, plus pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = rref_in_place(&mut rows, self.cols);
        rows.truncate(pivots.len());
        (Matrix::from_rows(rows, self.cols), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rows form a basis of `{ x : self * x = 0 }`, in reduced form with one
    /// basis vector per free column, ordered by free column.
    pub fn nullspace(&self) -> Matrix {
        let (reduced, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(i, f).clone();
            }
            basis.push(v);
        }
        Matrix::from_rows(basis, self.cols)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(format_q).collect()).collect()
    }

    /// Parse fraction strings against an expected shape.
    pub fn from_strings(
        rows: &[Vec<String>],
        expected_rows: usize,
        expected_cols: usize,
    ) -> Result<Matrix, MatrixParseError> {
        // A matrix with zero columns serializes as `[[], [], ...]` or as `[]`.
        if expected_cols == 0 && rows.is_empty() {
            return Ok(Matrix::zeros(expected_rows, 0));
        }
        if rows.len() != expected_rows {
            return Err(MatrixParseError::Shape { expected: (expected_rows, expected_cols), found_rows: rows.len() });
        }
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != expected_cols {
                return Err(MatrixParseError::Shape {
                    expected: (expected_rows, expected_cols),
                    found_rows: rows.len(),
                });
            }
            let mut parsed = Vec::with_capacity(row.len());
            for entry in row {
                parsed.push(parse_q(entry).ok_or_else(|| MatrixParseError::Entry(entry.clone()))?);
            }
            out.push(parsed);
        }
        Ok(Matrix::from_rows(out, expected_cols))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixParseError {
    #[error("expected a {}x{} matrix, found {found_rows} rows or a ragged row", expected.0, expected.1)]
    Shape { expected: (usize, usize), found_rows: usize },
    #[error("`{0}` is not a fraction")]
    Entry(String),
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}", self.to_strings())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

/// Gauss-Jordan elimination on a list of rows. Returns pivot columns; the
/// first `pivots.len()` rows hold the reduced basis afterwards.
pub(crate) fn rref_in_place(rows: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][c].recip();
        if !inv.is_one() {
            for x in rows[next].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

/// A growing subspace kept in reduced row-echelon form.
///
/// Used wherever a basis has to be extended greedily: minimal generators of
/// a kernel, complements of a radical, submodule closures.
#[derive(Clone, Debug)]
pub struct RowSpan {
    dim: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(dim: usize) -> Self {
        RowSpan { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the span; the result is zero iff `v` lies in it.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Insert `v`; returns `true` if the span grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        // Keep the existing rows reduced with respect to the new pivot.
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.rows.clone(), self.dim)
    }
}

/// True if `v` has no nonzero entries.
pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_rank_deficient_matrix() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r, Matrix::from_rows(vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]], 3));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = Matrix::from_i64(&[&[1, 1, 0, 2], &[0, 1, 1, 1]]);
        let n = m.nullspace();
        assert_eq!(n.rows(), 2);
        assert!((&m * &n.transpose()).is_zero());
    }

    #[test]
    fn row_span_tracks_membership() {
        let mut s = RowSpan::new(3);
        assert!(s.insert(&[q(0), q(2), q(2)]));
        assert!(s.insert(&[q(1), q(1), q(0)]));
        assert!(!s.insert(&[q(1), q(3), q(2)]));
        assert!(s.contains(&[q(2), q(0), q(-2)]));
        assert_eq!(s.to_matrix(), Matrix::from_i64(&[&[1, 0, -1], &[0, 1, 1]]));
    }

    #[test]
    fn fraction_strings_round_trip() {
        let m = Matrix::from_rows(vec![vec![Q::new(3.into(), 2.into()), q(-1)]], 2);
        let s = m.to_strings();
        assert_eq!(s, vec![vec!["3/2".to_string(), "-1".to_string()]]);
        assert_eq!(Matrix::from_strings(&s, 1, 2).unwrap(), m);
        assert!(Matrix::from_strings(&s, 2, 2).is_err());
        assert!(Matrix::from_strings(&[vec!["x".into()]], 1, 1).is_err());
        assert_eq!(Matrix::from_strings(&[], 3, 0).unwrap().shape(), (3, 0));
    }
}
