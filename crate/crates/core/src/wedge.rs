//! Coordinates on the exterior square `V ∧ V`.
//!
//! The basis `e_i ∧ e_j` (`i < j`) is ordered lexicographically. This fixes
//! the identification of alternating maps `V × V → W` with linear maps
//! `V ∧ V → W` for the whole crate.

use alloc::vec::Vec;

use crate::field::Prime;
use crate::subspace::Subspace;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WedgeIndex {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl WedgeIndex {
    pub fn new(n: usize) -> WedgeIndex {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        WedgeIndex { n, pairs }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `n(n-1)/2`.
    #[inline]
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Position of `e_i ∧ e_j` for `i < j`.
    #[inline]
    pub fn index_of(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// Coordinates of `u ∧ v`: entry `(i, j)` is `u_i v_j - u_j v_i`.
    pub fn wedge_coords(&self, p: Prime, u: &[u8], v: &[u8]) -> Result<Vec<u8>> {
        for x in [u, v] {
            if x.len() != self.n {
                return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
            }
        }
        Ok(self.wedge_unchecked(p, u, v))
    }

    pub(crate) fn wedge_unchecked(&self, p: Prime, u: &[u8], v: &[u8]) -> Vec<u8> {
        self.pairs
            .iter()
            .map(|&(i, j)| p.sub(p.mul(u[i], v[j]), p.mul(u[j], v[i])))
            .collect()
    }

    /// `u ∧ v` over `F_2` with packed operands (`n <= 16`).
    #[inline]
    pub fn wedge_packed(&self, u: u64, v: u64) -> u128 {
        debug_assert!(self.len() <= 128);
        let mut out = 0u128;
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            let bit = ((u >> i) & (v >> j) ^ (u >> j) & (v >> i)) & 1;
            out |= (bit as u128) << k;
        }
        out
    }

    /// `H ∧ H` as a subspace of `V ∧ V`.
    pub fn wedge_subspace(&self, h: &Subspace) -> Result<Subspace> {
        if h.ambient_dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: h.ambient_dim() });
        }
        let p = h.prime();
        let rows: Vec<&[u8]> = h.basis_rows().collect();
        let mut gens = Vec::new();
        for r in 0..rows.len() {
            for s in r + 1..rows.len() {
                gens.push(self.wedge_unchecked(p, rows[r], rows[s]));
            }
        }
        Subspace::from_generators(p, self.len(), &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{pack128, pack64};
    use crate::subspace::unit;
    use rand::rngs::SmallRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn index_layout() {
        let w = WedgeIndex::new(5);
        assert_eq!(w.len(), 10);
        for (k, &(i, j)) in w.pairs().iter().enumerate() {
            assert_eq!(w.index_of(i, j), k);
        }
        assert_eq!(WedgeIndex::new(1).len(), 0);
    }

    #[test]
    fn basic_wedges() {
        let w = WedgeIndex::new(4);
        let p = Prime::small(5).unwrap();
        let e1 = unit(4, 0);
        let e2 = unit(4, 1);
        let c = w.wedge_coords(p, &e1, &e2).unwrap();
        assert_eq!(c, [1, 0, 0, 0, 0, 0]);
        assert!(w.wedge_coords(p, &e1, &e1).unwrap().iter().all(|&x| x == 0));
        let back = w.wedge_coords(p, &e2, &e1).unwrap();
        assert_eq!(back[0], 4);
        assert!(w.wedge_coords(p, &e1, &[1, 0]).is_err());
    }

    #[test]
    fn wedge_of_coordinate_three_space() {
        let p = Prime::TWO;
        let h = Subspace::from_generators(p, 5, &[unit(5, 0), unit(5, 1), unit(5, 2)]).unwrap();
        assert_eq!(WedgeIndex::new(5).wedge_subspace(&h).unwrap().dim(), 3);
    }

    #[test]
    fn packed_agrees_with_bytes() {
        let mut rng = SmallRng::seed_from_u64(3);
        let w = WedgeIndex::new(9);
        for _ in 0..200 {
            let u: Vec<u8> = (0..9).map(|_| rng.gen_range(0..2)).collect();
            let v: Vec<u8> = (0..9).map(|_| rng.gen_range(0..2)).collect();
            let slow = w.wedge_coords(Prime::TWO, &u, &v).unwrap();
            assert_eq!(w.wedge_packed(pack64(&u), pack64(&v)), pack128(&slow));
        }
    }
}
