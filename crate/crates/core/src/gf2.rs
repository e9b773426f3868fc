//! Bit-packed matrices over `F_2`.
//!
//! Column `c` of a row lives in bit `c % 64` of word `c / 64`. Row operations
//! are word-parallel XORs.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Prime;
use crate::matrix::FpMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        let words = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn from_fp(m: &FpMatrix) -> BitMatrix {
        debug_assert!(m.prime().is_two());
        let mut b = BitMatrix::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for (c, &x) in m.row(r).iter().enumerate() {
                if x & 1 == 1 {
                    b.set(r, c, true);
                }
            }
        }
        b
    }

    pub fn to_fp(&self) -> FpMatrix {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for r in 0..self.rows {
            data.extend((0..self.cols).map(|c| self.get(r, c) as u8));
        }
        FpMatrix::from_raw(Prime::TWO, self.rows, self.cols, data)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words;
        for k in 0..w {
            let s = self.data[src * w + k];
            self.data[dst * w + k] ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        let w = self.words;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(pr, r);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Parity of a 64-bit word.
#[inline]
pub fn parity64(x: u64) -> u32 {
    x.count_ones() & 1
}

/// Parity of a 128-bit word.
#[inline]
pub fn parity128(x: u128) -> u32 {
    x.count_ones() & 1
}

/// Packs a residue vector over `F_2` (length at most 64) into a word.
pub fn pack64(v: &[u8]) -> u64 {
    debug_assert!(v.len() <= 64);
    v.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | ((x as u64 & 1) << i))
}

/// Packs a residue vector over `F_2` (length at most 128) into a word.
pub fn pack128(v: &[u8]) -> u128 {
    debug_assert!(v.len() <= 128);
    v.iter().enumerate().fold(0u128, |acc, (i, &x)| acc | ((x as u128 & 1) << i))
}

pub fn unpack64(w: u64, len: usize) -> Vec<u8> {
    (0..len).map(|i| (w >> i & 1) as u8).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::SmallRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn packed_rref_matches_byte_kernel() {
        let mut rng = SmallRng::seed_from_u64(7);
        for _ in 0..300 {
            let rows = rng.gen_range(0..9);
            let cols = rng.gen_range(1..140);
            let data: Vec<u8> = (0..rows * cols).map(|_| rng.gen_range(0..2)).collect();
            let m = FpMatrix::from_raw(Prime::TWO, rows, cols, data);
            let fast = m.rref();
            let slow = m.rref_generic();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn pack_roundtrip() {
        let v = [1u8, 0, 1, 1, 0, 0, 1];
        assert_eq!(unpack64(pack64(&v), v.len()), v);
        assert_eq!(pack128(&v) as u64, pack64(&v));
    }
}
