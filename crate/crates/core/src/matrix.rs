//! Dense matrices over `F_p` with byte residues.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Prime;
use crate::gf2::BitMatrix;
use crate::{Error, Result};

/// Row-major matrix over `F_p`. Entries are always reduced into `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Output of [`FpMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of integers, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(p: Prime, cols: usize, rows: &[R]) -> Result<FpMatrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().map(|&x| p.reduce(x)));
        }
        Ok(FpMatrix { p, rows: rows.len(), cols, data })
    }

    /// Builds a matrix from already-reduced residue rows.
    pub fn from_residue_rows(p: Prime, cols: usize, rows: &[Vec<u8>]) -> Result<FpMatrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            if let Some(&bad) = r.iter().find(|&&x| x as u32 >= p.get()) {
                return Err(Error::InvalidParams(alloc::format!(
                    "entry {bad} is not reduced mod {p}"
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(FpMatrix { p, rows: rows.len(), cols, data })
    }

    pub(crate) fn from_raw(p: Prime, rows: usize, cols: usize, data: Vec<u8>) -> FpMatrix {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| (x as u32) < p.get()));
        FpMatrix { p, rows, cols, data }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = (v as u32 % self.p.get()) as u8;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u8]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// `self * v` for a column vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let p = self.p.get();
        Ok(self
            .row_iter()
            .map(|row| {
                let s: u32 = row.iter().zip(v).map(|(&a, &b)| a as u32 * b as u32 % p).sum();
                (s % p) as u8
            })
            .collect())
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p {
            return Err(Error::FieldMismatch { expected: self.p.get(), found: other.p.get() });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let p = self.p.get();
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = 0u32;
                for k in 0..self.cols {
                    s += self.get(i, k) as u32 * other.get(k, j) as u32 % p;
                }
                out.data[i * other.cols + j] = (s % p) as u8;
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p {
            return Err(Error::FieldMismatch { expected: self.p.get(), found: other.p.get() });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form. Over `F_2` this goes through the bit-packed
    /// kernel in [`crate::gf2`]; the byte kernel is [`FpMatrix::rref_generic`].
    pub fn rref(&self) -> Rref {
        if self.p.is_two() {
            let mut bits = BitMatrix::from_fp(self);
            let pivots = bits.rref();
            let rank = pivots.len();
            Rref { matrix: bits.to_fp(), rank, pivots }
        } else {
            self.rref_generic()
        }
    }

    /// Gauss-Jordan elimination on byte residues, valid for every prime.
    pub fn rref_generic(&self) -> Rref {
        let mut m = self.clone();
        let p = self.p;
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    m.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = p.inv(m.get(r, c));
            for k in c..cols {
                let x = m.data[r * cols + k];
                m.data[r * cols + k] = p.mul(x, inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for k in c..cols {
                    let a = m.data[i * cols + k];
                    let b = m.data[r * cols + k];
                    m.data[i * cols + k] = p.sub_mul(a, f, b);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel `{x : self * x = 0}` as rows.
    pub fn kernel(&self) -> FpMatrix {
        let Rref { matrix, pivots, .. } = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FpMatrix::zeros(p, free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.data[k * self.cols + f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                out.data[k * self.cols + pc] = p.neg(matrix.get(r, f));
            }
        }
        out
    }

    /// Keeps only the first `rows` rows.
    pub(crate) fn truncate_rows(&mut self, rows: usize) {
        self.rows = self.rows.min(rows);
        self.data.truncate(self.rows * self.cols);
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(F_{}, {}x{})", self.p, self.rows, self.cols)?;
        for r in self.row_iter() {
            write!(f, "\n  {:?}", r)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, cols: usize, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(Prime::small(p).unwrap(), cols, rows).unwrap()
    }

    #[test]
    fn identity_is_its_own_rref() {
        let id = FpMatrix::identity(Prime::TWO, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, [0, 1, 2]);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let z = FpMatrix::zeros(Prime::small(5).unwrap(), 2, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn repeated_row_collapses() {
        let r = m(2, 2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix.row(0), &[1, 1]);
        assert_eq!(r.matrix.row(1), &[0, 0]);
    }

    #[test]
    fn rref_over_f5_normalizes_pivots() {
        let r = m(5, 3, &[&[2, 4, 1], &[3, 1, 0]]).rref();
        assert_eq!(r.rank, 2);
        // [3,1,0] - 3*[1,2,3] = [0,0,1]
        assert_eq!(r.pivots, [0, 2]);
        assert_eq!(r.matrix.row(0), &[1, 2, 0]);
        assert_eq!(r.matrix.row(1), &[0, 0, 1]);
    }

    #[test]
    fn entries_are_reduced() {
        let a = m(3, 2, &[&[-1, 7]]);
        assert_eq!(a.row(0), &[2, 1]);
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(3, 4, &[&[1, 2, 0, 1], &[0, 1, 1, 2]]);
        let k = a.kernel();
        assert_eq!(k.rows(), 2);
        for row in k.row_iter() {
            assert!(a.mul_vec(row).unwrap().iter().all(|&x| x == 0));
        }
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn shape_errors() {
        let a = FpMatrix::zeros(Prime::TWO, 2, 3);
        assert!(matches!(a.mul_vec(&[0, 1]), Err(Error::DimensionMismatch { .. })));
        assert!(FpMatrix::from_rows(Prime::TWO, 3, &[[1i64, 0]]).is_err());
    }
}
