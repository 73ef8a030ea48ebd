//! Dense matrices over the rationals with exact Gaussian elimination.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>, // row-major, len = rows * cols
}

/// Output of [`QMatrix::rank_kernel_cokernel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernelCokernel {
    pub rank: usize,
    /// Columns span the kernel (`cols x (cols - rank)`).
    pub kernel_basis: QMatrix,
    /// `(rows - rank) x rows`, full row rank, kernel equal to the image.
    pub cokernel_projection: QMatrix,
    /// Standard basis vectors of the target whose classes form the cokernel
    /// basis; `cokernel_projection` restricted to them is the identity.
    pub complement: Vec<usize>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "matrix {rows}x{cols} given {} entries",
                entries.len()
            )));
        }
        Ok(QMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from small integers, row-major.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        QMatrix {
            rows,
            cols,
            entries: entries.iter().map(|&e| super::rational::int(e)).collect(),
        }
    }

    /// Builds a matrix from columns, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
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

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        let e = &mut self.entries[i * self.cols + j];
        *e += v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    t.set(j, i, v.clone());
                }
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            m.entries[k * self.cols..(k + 1) * self.cols].clone_from_slice(self.row(i));
        }
        m
    }

    /// Horizontal concatenation `[a | b]`.
    pub fn hstack(&self, other: &QMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &QMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &QMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = block.get(i, j);
                if !v.is_zero() {
                    self.set(r0 + i, c0 + j, v.clone());
                }
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }

    /// Kronecker product; row/column `(i, k)` of the result is `i * b.rows + k`.
    pub fn kron(&self, b: &QMatrix) -> Self {
        let mut m = Self::zeros(self.rows * b.rows, self.cols * b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        let v = b.get(k, l);
                        if !v.is_zero() {
                            m.set(i * b.rows + k, j * b.cols + l, a * v);
                        }
                    }
                }
            }
        }
        m
    }

    pub fn mul_checked(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                m.swap_rows(p, r);
            }
            let inv = m.get(r, c).recip();
            if !inv.is_one() {
                for j in c..m.cols {
                    let v = m.get(r, j);
                    if !v.is_zero() {
                        let nv = v * &inv;
                        m.set(r, j, nv);
                    }
                }
            }
            let pivot_row: Vec<(usize, Rational)> = (c..m.cols)
                .filter(|&j| !m.get(r, j).is_zero())
                .map(|j| (j, m.get(r, j).clone()))
                .collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let delta = &f * v;
                    let e = &mut m.entries[i * m.cols + j];
                    *e -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Column basis of the null space: one column per free variable, with a
    /// one in that variable's slot.
    pub fn kernel(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.cols, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, Rational::one());
            for (row, &p) in pivots.iter().enumerate() {
                let v = r.get(row, f);
                if !v.is_zero() {
                    k.set(p, col, -v.clone());
                }
            }
        }
        k
    }

    /// Indices of a maximal independent subset of columns (the first pivots).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    pub fn rank_kernel_cokernel(&self) -> RankKernelCokernel {
        let (rank, cokernel_projection, complement) = self.cokernel();
        RankKernelCokernel {
            rank,
            kernel_basis: self.kernel(),
            cokernel_projection,
            complement,
        }
    }

    /// `(rank, projection, complement)` for the cokernel of `self`.
    ///
    /// Row reducing `[self | 1]` yields `[E·self | E]` with `E` invertible;
    /// the rows of `E` past the rank kill the image, and the pivots in the
    /// identity part pick the complement on which they restrict to `1`.
    pub fn cokernel(&self) -> (usize, QMatrix, Vec<usize>) {
        let aug = self.hstack(&QMatrix::identity(self.rows));
        let (r, pivots) = aug.rref();
        let rank = pivots.iter().filter(|&&p| p < self.cols).count();
        let complement: Vec<usize> = pivots
            .iter()
            .filter(|&&p| p >= self.cols)
            .map(|p| p - self.cols)
            .collect();
        let projection = r.block(rank, self.cols, self.rows - rank, self.rows);
        (rank, projection, complement)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&QMatrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p != n - 1) {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Some `x` with `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &QMatrix) -> Option<QMatrix> {
        assert_eq!(self.rows, b.rows, "solve row mismatch");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    /// True when every entry is 0 or +-1 with at most one nonzero per column.
    pub fn is_signed_selection(&self) -> bool {
        (0..self.cols).all(|j| {
            let mut nz = 0;
            for i in 0..self.rows {
                let v = self.get(i, j);
                if !v.is_zero() {
                    if !super::rational::is_unit_sign(v) {
                        return false;
                    }
                    nz += 1;
                }
            }
            nz <= 1
        })
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.mul_checked(rhs).expect("matrix shape mismatch")
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::rational::int;

    #[test]
    fn identity_has_full_rank_and_trivial_kernel() {
        let r = QMatrix::identity(2).rank_kernel_cokernel();
        assert_eq!(r.rank, 2);
        assert_eq!(r.kernel_basis.cols(), 0);
        assert_eq!(r.cokernel_projection.rows(), 0);
    }

    #[test]
    fn row_of_ones_kernel() {
        let m = QMatrix::from_i64(1, 2, &[1, 1]);
        let r = m.rank_kernel_cokernel();
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel_basis.cols(), 1);
        // proportional to (1, -1)
        let k = r.kernel_basis.column(0);
        assert_eq!(&k[0] + &k[1], int(0));
        assert!(!k[0].is_zero());
        assert!((&m * &r.kernel_basis).is_zero());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let m = QMatrix::zeros(3, 2);
        let r = m.rank_kernel_cokernel();
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel_basis, QMatrix::identity(2));
        assert_eq!(r.cokernel_projection, QMatrix::identity(3));
        assert_eq!(r.complement, vec![0, 1, 2]);
    }

    #[test]
    fn cokernel_projection_kills_image() {
        let m = QMatrix::from_i64(3, 2, &[1, 0, 1, 1, 0, 1]);
        let r = m.rank_kernel_cokernel();
        assert_eq!(r.rank, 2);
        assert_eq!(r.cokernel_projection.rows(), 1);
        assert!((&r.cokernel_projection * &m).is_zero());
        let sel = r.cokernel_projection.select_columns(&r.complement);
        assert_eq!(sel, QMatrix::identity(1));
    }

    #[test]
    fn solve_and_inverse() {
        let a = QMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, QMatrix::identity(2));
        let b = QMatrix::from_i64(2, 1, &[3, 2]);
        let x = a.solve(&b).unwrap();
        assert_eq!(&a * &x, b);
        let sing = QMatrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&QMatrix::from_i64(2, 1, &[1, 0])).is_none());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = QMatrix::from_i64(1, 2, &[1, 2]);
        let b = QMatrix::from_i64(2, 1, &[3, 4]);
        let k = a.kron(&b);
        assert_eq!(k, QMatrix::from_i64(2, 2, &[3, 6, 4, 8]));
    }
}
