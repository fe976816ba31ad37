//! Dense exact linear algebra over the prime field GF(p).
//!
//! Everything else in this crate reduces to row reduction here, so pivoting
//! is fixed (first nonzero entry, scanning top-to-bottom then left-to-right)
//! to keep every downstream basis reproducible bit-for-bit.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
}

/// Inverse of `a` modulo the prime `p`. Panics on `a ≡ 0`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "zero has no inverse mod {p}");
    // extended Euclid on (a, p)
    let (mut t, mut new_t): (i64, i64) = (0, 1);
    let (mut r, mut new_r): (i64, i64) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} not invertible mod {p}");
    (t.rem_euclid(p as i64)) as u32
}

/// A dense matrix over GF(p), row-major, entries reduced into `[0, p)`.
///
/// Serializes as an array of rows; the modulus is carried by the enclosing
/// object in all file formats.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<u32>>", try_from = "Vec<Vec<u32>>")]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

// Serde goes through rows-of-entries. Deserialization cannot know p, so it
// uses p = 0 as a placeholder; `with_modulus` must be applied before use.
impl From<Matrix> for Vec<Vec<u32>> {
    fn from(m: Matrix) -> Self {
        (0..m.rows)
            .map(|i| m.data[i * m.cols..(i + 1) * m.cols].to_vec())
            .collect()
    }
}

impl TryFrom<Vec<Vec<u32>>> for Matrix {
    type Error = String;
    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self, String> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err("ragged matrix rows".into());
        }
        Ok(Matrix {
            p: 0,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} mod {} [", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Result of row reduction: the reduced matrix, its pivot columns, its rank.
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Work threshold above which GF(2) matrices switch to the bit-packed
/// elimination path.
const BIT_THRESHOLD: usize = 1 << 14;

/// A GF(2) matrix with 64 columns per word; the workhorse behind large
/// eliminations. Produces exactly the same reduced form and pivots as the
/// dense path.
#[derive(Clone)]
pub struct BitMatrix {
    pub rows: usize,
    pub cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        assert_eq!(m.modulus(), 2, "bit packing is a GF(2) representation");
        let mut out = Self::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m.get(i, j) != 0 {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zero(2, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    m.set(i, j, 1);
                }
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + (j >> 6)] >> (j & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = i * self.words + (j >> 6);
        let mask = 1u64 << (j & 63);
        if v {
            self.data[w] |= mask;
        } else {
            self.data[w] &= !mask;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words {
            self.data.swap(a * self.words + w, b * self.words + w);
        }
    }

    /// row a ^= row b, from the word containing `from_col` onward.
    #[inline]
    fn xor_row(&mut self, a: usize, b: usize, from_col: usize) {
        let start = from_col >> 6;
        let (ra, rb) = (a * self.words, b * self.words);
        for w in start..self.words {
            let v = self.data[rb + w];
            self.data[ra + w] ^= v;
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, pr);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row(i, r, c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(mut self) -> usize {
        self.rref_in_place().len()
    }

    /// rows(self) x cols(other) product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let (ro, rk) = (i * out.words, k * other.words);
                    for w in 0..other.words {
                        out.data[ro + w] ^= other.data[rk + w];
                    }
                }
            }
        }
        out
    }

    /// Kernel basis columns in the same convention as `Matrix::kernel_basis`.
    pub fn kernel_basis(&self) -> BitMatrix {
        let mut reduced = self.clone();
        let pivots = reduced.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = BitMatrix::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if reduced.get(r, fc) {
                    out.set(pc, k, true);
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = BitMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(i, j, true);
                }
            }
            for j in 0..other.cols {
                if other.get(i, j) {
                    out.set(i, self.cols + j, true);
                }
            }
        }
        out
    }

    pub fn is_zero_col(&self, j: usize) -> bool {
        (0..self.rows).all(|i| !self.get(i, j))
    }

    /// Keeps only the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zero(self.rows, cols.len());
        for (k, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                if self.get(i, j) {
                    out.set(i, k, true);
                }
            }
        }
        out
    }
}

impl Matrix {
    pub fn new(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert!(p >= 2, "modulus must be a prime >= 2");
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        let data = data.into_iter().map(|x| x % p).collect();
        Matrix { p, rows, cols, data }
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::new(p, r, c, rows.iter().flatten().copied().collect())
    }

    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Column vector from a slice.
    pub fn column(p: u32, entries: &[u32]) -> Self {
        Self::new(p, entries.len(), 1, entries.to_vec())
    }

    /// Re-tags a deserialized matrix with its modulus, reducing entries.
    pub fn with_modulus(mut self, p: u32) -> Self {
        assert!(p >= 2);
        self.p = p;
        for x in &mut self.data {
            *x %= p;
        }
        self
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<(), LinAlgError> {
        if self.p != other.p {
            return Err(LinAlgError::ModulusMismatch(self.p, other.p));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_same_shape(other).expect("add");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.check_same_shape(other).expect("sub");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|&a| (self.p - a) % self.p).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let c = c % self.p;
        let data = self
            .data
            .iter()
            .map(|&a| ((a as u64 * c as u64) % self.p as u64) as u32)
            .collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "modulus mismatch");
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        if self.p == 2 && self.rows * other.cols >= BIT_THRESHOLD && other.cols >= 64 {
            return BitMatrix::from_matrix(self)
                .mul(&BitMatrix::from_matrix(other))
                .to_matrix();
        }
        let p = self.p as u64;
        let mut data = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    data[idx] =
                        ((data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        Matrix { p: self.p, rows: self.rows, cols: other.cols, data }
    }

    /// `self * v` for a column vector given as a slice.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = (acc + self.get(i, j) as u64 * v[j] as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p);
        assert_eq!(self.rows, other.rows, "row count mismatch in hstack");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Matrix { p: self.p, rows: self.rows, cols, data }
    }

    /// Vertical concatenation, `self` on top.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p);
        assert_eq!(self.cols, other.cols, "column count mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum of `self` and `other`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p);
        let mut out = Matrix::zero(self.p, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Submatrix of the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        Matrix { p: self.p, rows: rows.len(), cols: cols.len(), data }
    }

    /// Kronecker product `self ⊗ other`: entry at ((i,k),(j,l)) is
    /// `self[i,j] * other[k,l]`, with the row index (i,k) flattened as
    /// `i * other.rows + k`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zero(self.p, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j) as u64;
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = (a * other.get(k, l) as u64 % p) as u32;
                        out.set(i * other.rows + k, j * other.cols + l, v);
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form with deterministic pivoting. Large GF(2)
    /// instances run on the bit-packed path, which produces the identical
    /// reduced form.
    pub fn rref(&self) -> Rref {
        if self.p == 2 && self.rows * self.cols >= BIT_THRESHOLD {
            let mut bm = BitMatrix::from_matrix(self);
            let pivots = bm.rref_in_place();
            return Rref { reduced: bm.to_matrix(), rank: pivots.len(), pivots };
        }
        let p = self.p as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // first nonzero entry in column c at or below row r
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j), m.get(pr, j));
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = inv_mod(m.get(r, c), m.p);
            for j in 0..m.cols {
                let v = (m.get(r, j) as u64 * inv as u64 % p) as u32;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c) as u64;
                    for j in 0..m.cols {
                        let v = (m.get(i, j) as u64 + (p - f) * m.get(r, j) as u64) % p;
                        m.set(i, j, v as u32);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the kernel, one column per free variable, in ascending order
    /// of free column index. Columns are linearly independent.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivots, rank } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zero(self.p, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                let v = reduced.get(r, fc);
                out.set(pc, k, (self.p - v) % self.p);
            }
        }
        out
    }

    /// Basis of the column space: the original columns at pivot positions.
    pub fn image_basis(&self) -> Matrix {
        let Rref { pivots, .. } = self.rref();
        let all_rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all_rows, &pivots)
    }

    /// One solution of `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let rhs = Matrix::column(self.p, b);
        let aug = self.hstack(&rhs);
        let Rref { reduced, pivots, rank } = aug.rref();
        // inconsistent iff a pivot lands in the rhs column
        if pivots.last().is_some_and(|&c| c == self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate().take(rank) {
            x[pc] = reduced.get(r, self.cols);
        }
        Some(x)
    }

    /// Columnwise solve: `X` with `self * X = rhs`, or `None` if any column
    /// is inconsistent.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "rhs row mismatch");
        let mut out = Matrix::zero(self.p, self.cols, rhs.cols);
        for j in 0..rhs.cols {
            let x = self.solve(&rhs.col_vec(j))?;
            for (i, v) in x.iter().enumerate() {
                out.set(i, j, *v);
            }
        }
        Some(out)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.p, n));
        let Rref { reduced, rank, .. } = aug.rref();
        if rank < n {
            return None;
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(reduced.submatrix(&rows, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// True iff every column of `cols` lies in the column span of `self`.
    pub fn spans_columns_of(&self, cols: &Matrix) -> bool {
        assert_eq!(self.rows, cols.rows);
        let base = self.rank();
        self.hstack(cols).rank() == base
    }

    /// Canonical form of the column span: RREF of the transpose, zero rows
    /// dropped. Equal subspaces yield equal canonical forms.
    pub fn column_space_canonical(&self) -> Matrix {
        let Rref { reduced, rank, .. } = self.transpose().rref();
        let rows: Vec<usize> = (0..rank).collect();
        let cols: Vec<usize> = (0..reduced.cols).collect();
        reduced.submatrix(&rows, &cols)
    }
}

/// Quotient of `k^ambient` by the column span of `relations`, with a fixed
/// choice of complement: the standard basis vectors at non-pivot coordinates.
///
/// `proj * sect = id` on the quotient, and `proj` kills the relation span.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    pub ambient: usize,
    pub dim: usize,
    pub proj: Matrix,
    pub sect: Matrix,
}

pub fn quotient_by_columns(p: u32, ambient: usize, relations: &Matrix) -> QuotientSpace {
    assert_eq!(relations.rows(), ambient, "relation vectors live in the ambient space");
    // rows of the RREF of relations^T give e_{pivot} = -sum(coeff * e_free)
    let Rref { reduced, pivots, rank } = relations.transpose().rref();
    let free: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
    let dim = free.len();
    let mut proj = Matrix::zero(p, dim, ambient);
    for (k, &fc) in free.iter().enumerate() {
        proj.set(k, fc, 1);
    }
    for (r, &pc) in pivots.iter().enumerate().take(rank) {
        for (k, &fc) in free.iter().enumerate() {
            let v = reduced.get(r, fc);
            proj.set(k, pc, (p - v) % p);
        }
    }
    let mut sect = Matrix::zero(p, ambient, dim);
    for (k, &fc) in free.iter().enumerate() {
        sect.set(fc, k, 1);
    }
    QuotientSpace { ambient, dim, proj, sect }
}
