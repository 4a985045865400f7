//! Dense linear algebra over a prime field F_p.
//!
//! Every matrix carries its modulus. Entries are stored row by row as
//! canonical residues in `[0, p)`. Elimination always pivots on the first
//! nonzero entry of a column, so every result here is a deterministic
//! function of the input.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} is not a prime modulus")]
    InvalidModulus(u32),
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

#[inline]
fn mulmod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

/// Inverse of a nonzero residue, via Fermat.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// An element of F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    residue: u32,
    p: u32,
}

impl Scalar {
    pub fn new(value: i64, p: u32) -> Result<Self, LinalgError> {
        if !is_prime(p) {
            return Err(LinalgError::InvalidModulus(p));
        }
        Ok(Scalar { residue: reduce(value, p), p })
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn inverse(self) -> Option<Scalar> {
        (self.residue != 0).then(|| Scalar { residue: inv_mod(self.residue, self.p), p: self.p })
    }

    fn check(self, other: Scalar) {
        assert_eq!(self.p, other.p, "scalar modulus mismatch");
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.check(rhs);
        Scalar { residue: (self.residue + rhs.residue) % self.p, p: self.p }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.check(rhs);
        Scalar { residue: (self.residue + self.p - rhs.residue) % self.p, p: self.p }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.check(rhs);
        Scalar { residue: mulmod(self.residue, rhs.residue, self.p), p: self.p }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { residue: (self.p - self.residue) % self.p, p: self.p }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReduction {
    pub rref: Matrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            seq.serialize_element(self.row(r))?;
        }
        seq.end()
    }
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Build from integer rows, reducing every entry mod p.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        if !is_prime(p) {
            return Err(LinalgError::InvalidModulus(p));
        }
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&x| reduce(x, p)));
        }
        Ok(Matrix { p, rows: rows.len(), cols, data })
    }

    /// Build from a grid of scalars, all of which must share one modulus.
    pub fn from_scalars(rows: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let p = rows
            .iter()
            .flatten()
            .next()
            .map(|s| s.modulus())
            .ok_or_else(|| LinalgError::DimensionMismatch("empty scalar grid".into()))?;
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch("ragged scalar grid".into()));
            }
            for s in row {
                if s.modulus() != p {
                    return Err(LinalgError::ModulusMismatch { left: p, right: s.modulus() });
                }
                data.push(s.residue());
            }
        }
        Ok(Matrix { p, rows: rows.len(), cols, data })
    }

    /// Build from column vectors of equal length `rows`.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v % p;
            }
        }
        m
    }

    pub fn column_vector(p: u32, v: &[u32]) -> Self {
        Self::from_columns(p, v.len(), &[v.to_vec()])
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn scalar(&self, r: usize, c: usize) -> Scalar {
        Scalar { residue: self.get(r, c), p: self.p }
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.cols).map(move |c| self.column(c))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn same_modulus(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.p != other.p {
            return Err(LinalgError::ModulusMismatch { left: self.p, right: other.p });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_modulus(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot += a * b as u64;
                }
                // keep the accumulators small enough that the next round cannot overflow
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|a| *a %= p);
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (a % p) as u32;
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_modulus(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch("cannot add matrices of different shape".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % self.p).collect();
        Ok(Matrix { p: self.p, rows: self.rows, cols: self.cols, data })
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64 % p).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let c = c % self.p;
        let data = self.data.iter().map(|&x| mulmod(x, c, self.p)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, other: &Matrix, c: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let c = c % self.p;
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = ((*a as u64 + c as u64 * b as u64) % self.p as u64) as u32;
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p);
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(self.p, self.rows, cols);
        for i in 0..self.rows {
            out.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            out.data[i * cols + self.cols..(i + 1) * cols].copy_from_slice(other.row(i));
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p);
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn vstack_all(p: u32, cols: usize, blocks: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(p, 0, cols);
        for b in blocks {
            out = out.vstack(b);
        }
        out
    }

    pub fn hstack_all(p: u32, rows: usize, blocks: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(p, rows, 0);
        for b in blocks {
            out = out.hstack(b);
        }
        out
    }

    pub fn block_diagonal(p: u32, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(r0 + i) * cols + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + k] = self.get(i, j);
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { p: self.p, rows: idx.len(), cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let r: Vec<usize> = rows.collect();
        let c: Vec<usize> = cols.collect();
        self.select_rows(&r).select_columns(&c)
    }

    /// In-place Gauss-Jordan elimination restricted to the first `limit`
    /// columns. Returns the pivot columns.
    fn eliminate(&mut self, limit: usize) -> Vec<usize> {
        let p = self.p as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], self.p) as u64;
            for j in c..cols {
                let x = &mut self.data[r * cols + j];
                *x = (*x as u64 * inv % p) as u32;
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let clear = |row: &mut [u32]| {
                let f = row[c] as u64;
                if f == 0 {
                    return;
                }
                let nf = p - f;
                for j in c..cols {
                    row[j] = ((row[j] as u64 + nf * pivot_row[j] as u64) % p) as u32;
                }
            };
            before.chunks_mut(cols).for_each(&clear);
            after.chunks_mut(cols).for_each(&clear);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn row_reduce(&self) -> RowReduction {
        let mut rref = self.clone();
        let pivot_columns = rref.eliminate(self.cols);
        RowReduction { rank: pivot_columns.len(), rref, pivot_columns }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    /// Basis of the right null space, one vector per column.
    pub fn kernel_basis(&self) -> Matrix {
        let RowReduction { rref, pivot_columns, .. } = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_columns {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zeros(self.p, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.data[f * free.len() + k] = 1 % self.p;
            for (r, &pc) in pivot_columns.iter().enumerate() {
                let v = rref.get(r, f);
                if v != 0 {
                    out.data[pc * free.len() + k] = (self.p - v) % self.p;
                }
            }
        }
        out
    }

    /// Solve `self * X = rhs` for a matrix `X`. Free variables are set to zero.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        self.same_modulus(rhs)?;
        if self.rows != rhs.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "system has {} rows but right-hand side has {}",
                self.rows, rhs.rows
            )));
        }
        let mut aug = self.hstack(rhs);
        let pivots = aug.eliminate(self.cols);
        let rank = pivots.len();
        for r in rank..aug.rows {
            if (self.cols..aug.cols).any(|c| aug.get(r, c) != 0) {
                return Ok(None);
            }
        }
        let mut x = Matrix::zeros(self.p, self.cols, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.data[pc * rhs.cols + j] = aug.get(r, self.cols + j);
            }
        }
        Ok(Some(x))
    }

    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let rhs = Matrix::column_vector(self.p, b);
        Ok(self.solve_matrix(&rhs)?.map(|x| x.column(0)))
    }

    pub fn is_invertible(&self) -> Result<bool, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rank() == self.rows)
    }

    pub fn inverse(&self) -> Result<Option<Matrix>, LinalgError> {
        if !self.is_invertible()? {
            return Ok(None);
        }
        self.solve_matrix(&Matrix::identity(self.p, self.rows))
    }

    /// Basis of the column space made of original columns (the pivot columns).
    pub fn column_space(&self) -> Matrix {
        let pivots = self.row_reduce().pivot_columns;
        self.select_columns(&pivots)
    }

    /// For a matrix of full column rank, a matrix `L` with `L * self = I`
    /// built from an invertible square block of rows.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let rows = self.transpose().row_reduce().pivot_columns;
        if rows.len() != self.cols {
            return None;
        }
        let block_inv = self.select_rows(&rows).inverse().ok()??;
        let mut out = Matrix::zeros(self.p, self.cols, self.rows);
        for (k, &r) in rows.iter().enumerate() {
            for i in 0..self.cols {
                out.set(i, r, block_inv.get(i, k));
            }
        }
        Some(out)
    }

    /// Indices of the columns of `candidates` that greedily extend the span
    /// of `base` to a basis of `span(base) + span(candidates)`.
    pub fn extending_columns(base: &Matrix, candidates: &Matrix) -> Vec<usize> {
        let mut aug = base.hstack(candidates);
        let total = aug.cols;
        aug.eliminate(total)
            .into_iter()
            .filter(|&c| c >= base.cols)
            .map(|c| c - base.cols)
            .collect()
    }

    /// Standard basis vectors completing the column span of `self` to the
    /// whole space, returned as indices.
    pub fn complement_units(&self) -> Vec<usize> {
        let id = Matrix::identity(self.p, self.rows);
        Matrix::extending_columns(self, &id)
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut result = Matrix::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        self.pow(self.rows as u64).is_zero()
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(rhs, self.p - 1);
        out
    }
}

/// Free-function forms of the core operations.
pub fn row_reduce(m: &Matrix) -> RowReduction {
    m.row_reduce()
}

pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel_basis()
}

pub fn solve(m: &Matrix, b: &[u32]) -> Result<Option<Vec<u32>>, LinalgError> {
    m.solve(b)
}

pub fn is_invertible(m: &Matrix) -> Result<bool, LinalgError> {
    m.is_invertible()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(p: u32, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let r = Matrix::identity(5, 2).row_reduce();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_columns, vec![0, 1]);
    }

    #[test]
    fn zero_matrix_has_no_pivots() {
        let r = Matrix::zeros(5, 3, 4).row_reduce();
        assert_eq!(r.rank, 0);
        assert!(r.pivot_columns.is_empty());
    }

    #[test]
    fn dependent_rows() {
        let r = m(5, &[&[1, 2], &[2, 4]]).row_reduce();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_columns, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(3, 3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(3, 3, 3).kernel_basis(), Matrix::identity(3, 3));
        let k = m(5, &[&[1, 2]]).kernel_basis();
        assert_eq!(k.column(0), vec![3, 1]);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(Matrix::identity(7, 3).solve(&[1, 2, 3]).unwrap(), Some(vec![1, 2, 3]));
        assert_eq!(Matrix::zeros(7, 2, 2).solve(&[0, 1]).unwrap(), None);
        assert_eq!(m(5, &[&[2]]).solve(&[1]).unwrap(), Some(vec![3]));
        assert!(matches!(
            m(5, &[&[2]]).solve(&[1, 2]),
            Err(LinalgError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn invertibility() {
        assert!(Matrix::identity(2, 4).is_invertible().unwrap());
        assert!(!Matrix::zeros(2, 3, 3).is_invertible().unwrap());
        assert!(!m(5, &[&[1, 2], &[2, 4]]).is_invertible().unwrap());
        assert_eq!(
            Matrix::zeros(2, 2, 3).is_invertible(),
            Err(LinalgError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn mixed_moduli_rejected() {
        let a = Scalar::new(1, 5).unwrap();
        let b = Scalar::new(1, 3).unwrap();
        assert_eq!(
            Matrix::from_scalars(&[vec![a, b]]),
            Err(LinalgError::ModulusMismatch { left: 5, right: 3 })
        );
        assert!(Matrix::identity(5, 2).try_mul(&Matrix::identity(3, 2)).is_err());
    }

    #[test]
    fn scalar_arithmetic() {
        let a = Scalar::new(3, 7).unwrap();
        let b = Scalar::new(-1, 7).unwrap();
        assert_eq!((a + b).residue(), 2);
        assert_eq!((a * b).residue(), 4);
        assert_eq!(a.inverse().unwrap().residue(), 5);
        assert!(Scalar::new(1, 8).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (prop::sample::select(vec![2u32, 3, 5, 7]), 0usize..6, 0usize..6).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0..p as i64, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = (0..r).map(|i| v[i * c..(i + 1) * c].to_vec()).collect();
                if r == 0 {
                    Matrix::zeros(p, 0, c)
                } else {
                    Matrix::from_rows(p, &rows).unwrap()
                }
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_is_annihilated_and_rank_nullity(a in arb_matrix()) {
            let k = a.kernel_basis();
            prop_assert!((&a * &k).is_zero());
            prop_assert_eq!(a.rank() + k.cols(), a.cols());
        }

        #[test]
        fn rref_is_idempotent(a in arb_matrix()) {
            let r = a.row_reduce();
            prop_assert_eq!(r.rref.row_reduce().rref, r.rref.clone());
        }

        #[test]
        fn solve_returns_exact_solutions(a in arb_matrix(), seed in 0u64..1000) {
            let b: Vec<u32> = (0..a.rows()).map(|i| ((seed + i as u64 * 7) % a.modulus() as u64) as u32).collect();
            if let Some(x) = a.solve(&b).unwrap() {
                prop_assert_eq!(a.mul_vec(&x), b);
            }
            // a consistent right-hand side always has a solution
            let x0: Vec<u32> = (0..a.cols()).map(|i| (i as u32 * 3 + 1) % a.modulus()).collect();
            let b0 = a.mul_vec(&x0);
            let x = a.solve(&b0).unwrap();
            prop_assert!(x.is_some());
            prop_assert_eq!(a.mul_vec(&x.unwrap()), b0);
        }
    }
}
