//! Exact counting: Gaussian binomials, binomials, falling factorials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

/// Number of `d`-dimensional subspaces of `F_p^n`:
/// `prod_{i<d} (p^{n-i} - 1) / (p^{d-i} - 1)`. Zero when `d > n`.
pub fn gaussian_binomial(n: u32, d: u32, p: u32) -> BigInt {
    if d > n {
        return BigInt::zero();
    }
    let p = BigInt::from(p);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..d {
        num *= Pow::pow(&p, n - i) - 1u32;
        den *= Pow::pow(&p, d - i) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// [`gaussian_binomial`] saturated into a `u128`, for guard estimates.
pub fn gaussian_binomial_u128(n: usize, d: usize, p: u32) -> u128 {
    let g = gaussian_binomial(n as u32, d as u32, p);
    u128::try_from(g).unwrap_or(u128::MAX)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(x)_k = x (x-1) ... (x-k+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term -= BigRational::one();
    }
    acc
}

/// `p^e` for any integer exponent, exactly.
pub fn rational_pow(p: u32, e: i64) -> BigRational {
    let base = BigInt::from(p);
    let mag = Pow::pow(&base, e.unsigned_abs());
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// `|GL_d(F_p)|`.
pub fn gl_order(d: u32, p: u32) -> BigInt {
    let q = BigInt::from(p);
    let pd = Pow::pow(&q, d);
    (0..d).fold(BigInt::one(), |acc, i| acc * (&pd - Pow::pow(&q, i)))
}
