//! Canonical subspaces of `F_p^n`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Prime;
use crate::gf2::pack64;
use crate::matrix::FpMatrix;
use crate::{Error, Result};

/// A subspace of `F_p^n`, stored as the nonzero rows of its RREF basis.
///
/// Two values compare equal exactly when they are the same subspace.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: Prime, n: usize) -> Subspace {
        Subspace { basis: FpMatrix::zeros(p, 0, n), pivots: Vec::new() }
    }

    pub fn full(p: Prime, n: usize) -> Subspace {
        Subspace { basis: FpMatrix::identity(p, n), pivots: (0..n).collect() }
    }

    /// Span of `vectors` inside `F_p^n`.
    pub fn from_generators(p: Prime, n: usize, vectors: &[Vec<u8>]) -> Result<Subspace> {
        if vectors.is_empty() {
            return Ok(Subspace::zero(p, n));
        }
        let reduced: Vec<Vec<u8>> = vectors
            .iter()
            .map(|v| {
                if v.len() != n {
                    Err(Error::DimensionMismatch { expected: n, found: v.len() })
                } else {
                    Ok(v.iter().map(|&x| (x as u32 % p.get()) as u8).collect())
                }
            })
            .collect::<Result<_>>()?;
        let m = FpMatrix::from_residue_rows(p, n, &reduced)?;
        Ok(Subspace::from_matrix(&m))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &FpMatrix) -> Subspace {
        let r = m.rref();
        let mut basis = r.matrix;
        basis.truncate_rows(r.rank);
        Subspace { basis, pivots: r.pivots }
    }

    /// Wraps a basis already known to be in RREF.
    pub(crate) fn from_rref_unchecked(basis: FpMatrix, pivots: Vec<usize>) -> Subspace {
        debug_assert_eq!(basis.rows(), pivots.len());
        Subspace { basis, pivots }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.basis.prime()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    #[inline]
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.basis.row_iter()
    }

    /// Basis rows packed into words; `F_2` with `n <= 64` only.
    pub fn packed_basis(&self) -> Vec<u64> {
        debug_assert!(self.prime().is_two() && self.ambient_dim() <= 64);
        self.basis_rows().map(pack64).collect()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.prime() != other.prime() {
            return Err(Error::FieldMismatch {
                expected: self.prime().get(),
                found: other.prime().get(),
            });
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    /// Membership by reduction against the RREF rows.
    pub fn contains(&self, v: &[u8]) -> Result<bool> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: v.len() });
        }
        let p = self.prime();
        let mut w: Vec<u8> = v.iter().map(|&x| (x as u32 % p.get()) as u8).collect();
        for (r, &c) in self.pivots.iter().enumerate() {
            let f = w[c];
            if f != 0 {
                for (x, &b) in w.iter_mut().zip(self.basis.row(r)) {
                    *x = p.sub_mul(*x, f, b);
                }
            }
        }
        Ok(w.iter().all(|&x| x == 0))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for r in self.basis_rows() {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates-to-vector: `sum coeffs[i] * basis_i`.
    pub fn combine(&self, coeffs: &[u8]) -> Vec<u8> {
        let p = self.prime();
        let mut out = vec![0u8; self.ambient_dim()];
        for (r, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (x, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *x = p.add(*x, p.mul(c, b));
            }
        }
        out
    }

    /// Every vector of the subspace, `p^dim` of them, in coefficient
    /// odometer order (last basis coefficient fastest).
    pub fn elements(&self) -> Elements<'_> {
        Elements { space: self, coeffs: vec![0; self.dim()], done: false }
    }
}

pub struct Elements<'a> {
    space: &'a Subspace,
    coeffs: Vec<u8>,
    done: bool,
}

impl Iterator for Elements<'_> {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.space.combine(&self.coeffs);
        let p = self.space.prime().get() as u8;
        let mut i = self.coeffs.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.coeffs[i] += 1;
            if self.coeffs[i] < p {
                break;
            }
            self.coeffs[i] = 0;
        }
        Some(out)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(F_{}^{}, dim {}) {:?}", self.prime(), self.ambient_dim(), self.dim(), self.basis.to_rows())
    }
}

/// Standard basis vector `e_i` (0-based) of `F_p^n`.
pub fn unit(n: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}
