//! Prime moduli and residue arithmetic.

use core::fmt;

use crate::{Error, Result};

/// Largest prime whose residues fit in a byte.
pub const MAX_MATRIX_PRIME: u32 = 251;

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u32);

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);

    pub fn new(p: u32) -> Result<Prime> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// A prime small enough for [`crate::FpMatrix`] entries.
    pub fn small(p: u32) -> Result<Prime> {
        let q = Prime::new(p)?;
        if p > MAX_MATRIX_PRIME {
            return Err(Error::ModulusTooLarge(p));
        }
        Ok(q)
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_two(self) -> bool {
        self.0 == 2
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.0) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.0 - b as u32) % self.0) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.0) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        ((self.0 - a as u32) % self.0) as u8
    }

    /// `a - c*b`, the row-operation kernel.
    #[inline]
    pub fn sub_mul(self, a: u8, c: u8, b: u8) -> u8 {
        let p = self.0;
        ((a as u32 + p * p - c as u32 * b as u32) % p) as u8
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(!(a as u32).is_multiple_of(self.0), "inverse of zero");
        self.pow(a, self.0 - 2)
    }

    pub fn pow(self, a: u8, mut e: u32) -> u8 {
        let p = self.0 as u64;
        let mut base = a as u64 % p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u8
    }

    /// Reduce an arbitrary integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u8 {
        x.rem_euclid(self.0 as i64) as u8
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: alloc::vec::Vec<u32> = (0..40).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert_eq!(Prime::small(257), Err(Error::ModulusTooLarge(257)));
        assert!(Prime::small(251).is_ok());
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 251] {
            let q = Prime::small(p).unwrap();
            for a in 1..p {
                assert_eq!(q.mul(a as u8, q.inv(a as u8)), 1);
            }
        }
    }

    #[test]
    fn sub_mul_matches_definition() {
        let q = Prime::small(7).unwrap();
        for a in 0..7u8 {
            for b in 0..7u8 {
                for c in 0..7u8 {
                    assert_eq!(q.sub_mul(a, c, b), q.sub(a, q.mul(c, b)));
                }
            }
        }
    }
}
