//! Incremental span accumulation with early rank readout.
//!
//! The certifier feeds image vectors one at a time and stops as soon as the
//! rank passes a threshold, so this is the innermost loop of every search.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Prime;
use crate::gf2::{pack64, unpack64};
use crate::matrix::FpMatrix;
use crate::subspace::Subspace;

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum SpanBuilder {
    /// `F_2` with ambient dimension at most 64; `basis[b]` has top bit `b`.
    Gf2 { dim: usize, rank: usize, basis: [u64; 64] },
    /// Any prime; rows kept in insertion order, each reduced against the
    /// earlier ones, with a normalized pivot.
    Generic { p: Prime, dim: usize, rows: Vec<(usize, Vec<u8>)> },
}

impl SpanBuilder {
    pub fn new(p: Prime, dim: usize) -> SpanBuilder {
        if p.is_two() && dim <= 64 {
            SpanBuilder::Gf2 { dim, rank: 0, basis: [0; 64] }
        } else {
            SpanBuilder::Generic { p, dim, rows: Vec::new() }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SpanBuilder::Gf2 { dim, .. } | SpanBuilder::Generic { dim, .. } => *dim,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            SpanBuilder::Gf2 { rank, .. } => *rank,
            SpanBuilder::Generic { rows, .. } => rows.len(),
        }
    }

    pub fn clear(&mut self) {
        match self {
            SpanBuilder::Gf2 { rank, basis, .. } => {
                *rank = 0;
                *basis = [0; 64];
            }
            SpanBuilder::Generic { rows, .. } => rows.clear(),
        }
    }

    /// Packed insert for the `F_2` variant. Returns whether the rank grew.
    #[inline]
    pub fn insert_packed(&mut self, mut v: u64) -> bool {
        match self {
            SpanBuilder::Gf2 { rank, basis, .. } => {
                while v != 0 {
                    let b = 63 - v.leading_zeros() as usize;
                    if basis[b] == 0 {
                        basis[b] = v;
                        *rank += 1;
                        return true;
                    }
                    v ^= basis[b];
                }
                false
            }
            SpanBuilder::Generic { dim, .. } => {
                let d = *dim;
                self.insert(&unpack64(v, d))
            }
        }
    }

    /// Inserts a residue vector. Returns whether the rank grew.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        match self {
            SpanBuilder::Gf2 { dim, .. } => {
                debug_assert_eq!(v.len(), *dim);
                self.insert_packed(pack64(v))
            }
            SpanBuilder::Generic { p, dim, rows } => {
                debug_assert_eq!(v.len(), *dim);
                let p = *p;
                let mut w = v.to_vec();
                reduce(p, &mut w, rows);
                match w.iter().position(|&x| x != 0) {
                    None => false,
                    Some(c) => {
                        let inv = p.inv(w[c]);
                        for x in w.iter_mut() {
                            *x = p.mul(*x, inv);
                        }
                        rows.push((c, w));
                        true
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        match self {
            SpanBuilder::Gf2 { basis, .. } => {
                let mut w = pack64(v);
                while w != 0 {
                    let b = 63 - w.leading_zeros() as usize;
                    if basis[b] == 0 {
                        return false;
                    }
                    w ^= basis[b];
                }
                true
            }
            SpanBuilder::Generic { p, rows, .. } => {
                let mut w = v.to_vec();
                reduce(*p, &mut w, rows);
                w.iter().all(|&x| x == 0)
            }
        }
    }

    /// Canonical subspace spanned by everything inserted so far.
    pub fn to_subspace(&self) -> Subspace {
        let (p, dim, gens) = match self {
            SpanBuilder::Gf2 { dim, basis, .. } => (
                Prime::TWO,
                *dim,
                basis.iter().filter(|&&w| w != 0).map(|&w| unpack64(w, *dim)).collect::<Vec<_>>(),
            ),
            SpanBuilder::Generic { p, dim, rows } => {
                (*p, *dim, rows.iter().map(|(_, r)| r.clone()).collect())
            }
        };
        let m = if gens.is_empty() {
            FpMatrix::zeros(p, 0, dim)
        } else {
            FpMatrix::from_residue_rows(p, dim, &gens).expect("rows have the builder dimension")
        };
        Subspace::from_matrix(&m)
    }
}

fn reduce(p: Prime, w: &mut [u8], rows: &[(usize, Vec<u8>)]) {
    for (c, row) in rows {
        let f = w[*c];
        if f != 0 {
            for (x, &r) in w.iter_mut().zip(row) {
                *x = p.sub_mul(*x, f, r);
            }
        }
    }
}

/// Rank of a list of residue vectors of length `dim`.
pub fn rank_of(p: Prime, dim: usize, vectors: &[Vec<u8>]) -> usize {
    let mut sb = SpanBuilder::new(p, dim);
    for v in vectors {
        sb.insert(v);
    }
    sb.rank()
}

/// Zero vector helper.
pub fn zero_vec(dim: usize) -> Vec<u8> {
    vec![0; dim]
}
