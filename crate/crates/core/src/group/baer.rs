use alloc::vec::Vec;

use crate::altmap::AlternatingMap;
use crate::field::Prime;
use crate::{Error, Result};

/// Element `(v, w)` of `V × W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaerElement {
    pub v: Vec<u8>,
    pub w: Vec<u8>,
}

/// The exponent-`p` group on `V × W` with product
/// `(v1, w1)(v2, w2) = (v1 + v2, w1 + w2 + ½B(v1, v2))`, `p` odd.
#[derive(Debug, Clone)]
pub struct BaerGroup {
    b: AlternatingMap,
    half: u8,
}

impl BaerGroup {
    pub fn new(b: AlternatingMap) -> Result<BaerGroup> {
        let p = b.prime();
        if p.is_two() {
            return Err(Error::InvalidParams("the Baer model needs odd p".into()));
        }
        let half = p.inv(2);
        Ok(BaerGroup { b, half })
    }

    pub fn prime(&self) -> Prime {
        self.b.prime()
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn m(&self) -> usize {
        self.b.m()
    }

    pub fn map(&self) -> &AlternatingMap {
        &self.b
    }

    /// `p^{n+m}`, saturating.
    pub fn order(&self) -> u64 {
        (self.prime().get() as u64).saturating_pow((self.n() + self.m()) as u32)
    }

    pub fn identity(&self) -> BaerElement {
        BaerElement { v: alloc::vec![0; self.n()], w: alloc::vec![0; self.m()] }
    }

    pub fn element(&self, v: &[u8], w: &[u8]) -> Result<BaerElement> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: v.len() });
        }
        if w.len() != self.m() {
            return Err(Error::DimensionMismatch { expected: self.m(), found: w.len() });
        }
        let p = self.prime();
        let red = |x: &[u8]| x.iter().map(|&c| p.reduce(i64::from(c))).collect();
        Ok(BaerElement { v: red(v), w: red(w) })
    }

    pub fn mul(&self, a: &BaerElement, b: &BaerElement) -> BaerElement {
        let p = self.prime();
        let twist = self.b.apply_unchecked(&a.v, &b.v);
        let v = a.v.iter().zip(&b.v).map(|(&x, &y)| p.add(x, y)).collect();
        let w = a
            .w
            .iter()
            .zip(&b.w)
            .zip(&twist)
            .map(|((&x, &y), &t)| p.add(p.add(x, y), p.mul(self.half, t)))
            .collect();
        BaerElement { v, w }
    }

    pub fn inverse(&self, a: &BaerElement) -> BaerElement {
        let p = self.prime();
        BaerElement { v: a.v.iter().map(|&x| p.neg(x)).collect(), w: a.w.iter().map(|&x| p.neg(x)).collect() }
    }

    /// `a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: &BaerElement, b: &BaerElement) -> BaerElement {
        let left = self.mul(&self.inverse(a), &self.inverse(b));
        self.mul(&left, &self.mul(a, b))
    }

    /// `a^k` by square-and-multiply.
    pub fn power(&self, a: &BaerElement, k: u64) -> BaerElement {
        let mut result = self.identity();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        result
    }

    /// Index of an element in `0..order`: `v` then `w` as base-`p` digits,
    /// first coordinate least significant.
    pub fn encode(&self, a: &BaerElement) -> usize {
        let q = self.prime().get() as usize;
        a.v.iter().chain(&a.w).rev().fold(0, |acc, &d| acc * q + d as usize)
    }

    pub fn decode(&self, mut code: usize) -> BaerElement {
        let q = self.prime().get() as usize;
        let mut digits = Vec::with_capacity(self.n() + self.m());
        for _ in 0..self.n() + self.m() {
            digits.push((code % q) as u8);
            code /= q;
        }
        let w = digits.split_off(self.n());
        BaerElement { v: digits, w }
    }
}
