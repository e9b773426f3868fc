//! Exact rational evaluation of the Poisson parameters and the Bonferroni /
//! Markov bound expressions used to show that random maps avoid bad
//! subspaces with positive probability.
//!
//! No floating point participates in any comparison; decimal strings are
//! produced only for reports.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinat::{factorial, falling_factorial, gaussian_binomial, rational_pow};
use crate::{Error, Result};

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn gb(n: i64, d: i64, p: u32) -> BigRational {
    if n < 0 || d < 0 {
        return BigRational::zero();
    }
    BigRational::from_integer(gaussian_binomial(n as u32, d as u32, p))
}

/// `numer / denom` as an exponent, which must be an integer.
fn integral_exponent(numer: i64, denom: i64) -> i64 {
    assert!(numer % denom == 0, "non-integral exponent {numer}/{denom}");
    numer / denom
}

/// `(1 - 1/p)^{-1} (1 - 1/p^2)^{-1} (1 - 1/p^3)^{-1}`.
pub fn lambda_p(p: u32) -> BigRational {
    let one = BigRational::one();
    let f = |k: i32| &one - rational_pow(p, -(k as i64));
    (f(1) * f(2) * f(3)).recip()
}

/// `[n choose 3]_p · p^{-3(n-3)}`.
pub fn lambda_p_n(p: u32, n: u32) -> BigRational {
    gb(n as i64, 3, p) * rational_pow(p, -3 * (n as i64 - 3))
}

/// `(h-2)(h-3)(h-n)/2`. Always an integer: `(h-2)(h-3)` is even.
pub fn f_cubic(h: i64, n: i64) -> i64 {
    (h - 2) * (h - 3) * (h - n) / 2
}

/// `Σ_{i=1}^{k} (-1)^{i-1} x^i / i!`.
pub fn f_partial(k: u32, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    let mut power = BigRational::one();
    for i in 1..=k {
        power *= x;
        let term = &power / BigRational::from_integer(factorial(i));
        if i % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `binom(G, k)` for a rational `G`.
fn binom_rational(g: &BigRational, k: u32) -> BigRational {
    falling_factorial(g, k) / BigRational::from_integer(factorial(k))
}

/// `Σ_{k=1}^{K} (-1)^{k-1} binom([n 3]_p, k) p^{-3k(n-3)}`.
fn bonferroni_head(p: u32, n: i64, kmax: u32) -> BigRational {
    let g = gb(n, 3, p);
    let mut acc = BigRational::zero();
    for k in 1..=kmax {
        let term = binom_rational(&g, k) * rational_pow(p, -(n - 3) * 3 * k as i64);
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `16 (n-4) p^{4-n}`: Markov bound on bad subspaces of dimension >= 4.
pub fn markov_tail(p: u32, n: i64) -> BigRational {
    int(16 * (n - 4)) * rational_pow(p, 4 - n)
}

/// Exact K = 3 Bonferroni expression, checked for `p = 13`, `12 <= n <= 14`.
pub fn bound_a1(p: u32, n: u32) -> BigRational {
    let n = n as i64;
    let mut extra = BigRational::zero();
    for d in 3..=8i64 {
        let g3 = gb(d, 3, p);
        extra += gb(n, d, p) * &g3 * &g3 * &g3 * rational_pow(p, -(n - 3) * (d + 1));
    }
    bonferroni_head(p, n, 3) + extra * ratio(1, 6) + markov_tail(p, n)
}

/// Crude monotone upper bound for [`bound_a1`], checked at `(13, 15)` and `(17, 12)`.
pub fn bound_a2(p: u32, n: u32) -> BigRational {
    let n = n as i64;
    let one = BigRational::one();
    let inv_p = ratio(1, p as i64);
    let base = &one - &inv_p - rational_pow(p, -2);
    let base4 = (&base * &base * &base * &base).recip();
    f_partial(3, &lambda_p(p))
        + int(2) * rational_pow(p, -3 * n + 9)
        + base4 * (ratio(1, 6) + inv_p) * rational_pow(p, 12 - n)
        + markov_tail(p, n)
}

/// Exact K = 9 Bonferroni expression, checked for `2 <= p <= 11`, `160 <= n <= 180`.
pub fn bound_a3(p: u32, n: u32) -> BigRational {
    let n = n as i64;
    let mut extra = BigRational::zero();
    for k in [3i64, 5, 7, 9] {
        let e = -n + 3 - 9 * k + integral_exponent(9 * (k + 1) * (k + 1), 4);
        extra += int((3 * k - 3) * 4i64.pow(k as u32 + 1)) / BigRational::from_integer(factorial(k as u32))
            * rational_pow(p, e);
    }
    bonferroni_head(p, n, 9) + extra + markov_tail(p, n)
}

/// Crude bound for [`bound_a3`] uniform in `p`, checked at `n = 180`.
pub fn bound_a4(n: u32) -> BigRational {
    let n = n as i64;
    f_partial(9, &lambda_p(2))
        + int(4i64.pow(11)) * (rational_pow(2, 9 - 3 * n) + rational_pow(2, 147 - n))
        + markov_tail(2, n)
}

/// `Σ_{h=4}^{n-1} [n h]_p [n-3 h-3]_p p^{-binom(h,2)(n-h)}`: the exact
/// union-bound sum that [`markov_tail`] dominates.
pub fn abmax_tail_terms(p: u32, n: u32) -> BigRational {
    let n = n as i64;
    (4..n)
        .map(|h| gb(n, h, p) * gb(n - 3, h - 3, p) * rational_pow(p, -(h * (h - 1) / 2) * (n - h)))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Exact expected number of bad subspaces for odd-p d-max with a fixed
/// surjective `F`: `Σ_{h=2}^{n-1} [n-2 h-2]_p p^{-binom(h,2)(n-h)}`.
pub fn dmax_expected_bad(p: u32, n: u32) -> BigRational {
    let n = n as i64;
    (2..n)
        .map(|h| gb(n - 2, h - 2, p) * rational_pow(p, -(h * (h - 1) / 2) * (n - h)))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Markov bound for odd-p d-max: `4 p^{-(n-2)} + 4(n-3) p^{-2(n-3)}`.
pub fn dmax_bad_bound(p: u32, n: u32) -> BigRational {
    let n = n as i64;
    int(4) * rational_pow(p, -(n - 2)) + int(4 * (n - 3)) * rational_pow(p, -2 * (n - 3))
}

/// Markov bound for `p = 2` quadratic d-max: `16·2^{-(n-2)} + 16(n-3)·2^{-2(n-3)}`.
pub fn quadratic_bad_bound(n: u32) -> BigRational {
    let n = n as i64;
    int(16) * rational_pow(2, -(n - 2)) + int(16 * (n - 3)) * rational_pow(2, -2 * (n - 3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundId {
    A1,
    A2,
    A3,
    A4,
}

impl BoundId {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::A1 => "A1",
            BoundId::A2 => "A2",
            BoundId::A3 => "A3",
            BoundId::A4 => "A4",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<BoundId> {
        match s {
            "A1" => Ok(BoundId::A1),
            "A2" => Ok(BoundId::A2),
            "A3" => Ok(BoundId::A3),
            "A4" => Ok(BoundId::A4),
            other => Err(Error::InvalidParams(alloc::format!("unknown bound {other:?}"))),
        }
    }
}

/// One evaluated bound expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundExpr {
    pub id: BoundId,
    /// `2` for [`BoundId::A4`], which is stated for `p = 2`.
    pub p: u32,
    pub n: u32,
    pub value: BigRational,
}

impl BoundExpr {
    pub fn evaluate(id: BoundId, p: u32, n: u32) -> BoundExpr {
        let value = match id {
            BoundId::A1 => bound_a1(p, n),
            BoundId::A2 => bound_a2(p, n),
            BoundId::A3 => bound_a3(p, n),
            BoundId::A4 => bound_a4(n),
        };
        BoundExpr { id, p, n, value }
    }

    pub fn passes(&self) -> bool {
        self.value < BigRational::one()
    }

    pub fn approx(&self) -> String {
        to_scientific(&self.value, 12)
    }
}

/// The full list of `(bound, p, n)` checks.
pub fn appendix_items() -> Vec<(BoundId, u32, u32)> {
    let mut v = Vec::new();
    v.extend((12..=14).map(|n| (BoundId::A1, 13, n)));
    v.push((BoundId::A2, 13, 15));
    v.push((BoundId::A2, 17, 12));
    for p in [2, 3, 5, 7, 11] {
        v.extend((160..=180).map(|n| (BoundId::A3, p, n)));
    }
    v.push((BoundId::A4, 2, 180));
    v
}

#[derive(Debug, Clone)]
pub struct AppendixReport {
    pub items: Vec<BoundExpr>,
}

impl AppendixReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(BoundExpr::passes)
    }

    pub fn max(&self) -> Option<&BoundExpr> {
        self.items.iter().max_by(|a, b| a.value.cmp(&b.value))
    }
}

/// Evaluates every listed bound instance (or only those of one bound).
pub fn verify_appendix(only: Option<BoundId>) -> AppendixReport {
    let items = appendix_items()
        .into_iter()
        .filter(|(id, _, _)| only.is_none_or(|o| o == *id))
        .map(|(id, p, n)| BoundExpr::evaluate(id, p, n))
        .collect();
    AppendixReport { items }
}

/// Decimal scientific rendering with `digits` significant digits, rounded
/// half away from zero, e.g. `9.78013046723e-1`.
pub fn to_scientific(x: &BigRational, digits: u32) -> String {
    if x.is_zero() {
        return String::from("0");
    }
    let neg = x.is_negative();
    let a = x.abs();
    let ten = BigInt::from(10);
    // find e with 10^e <= a < 10^(e+1)
    let (num, den) = (a.numer().clone(), a.denom().clone());
    let mut e: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
    let pow10 = |k: i64| -> BigRational {
        let m = num_traits::Pow::pow(&ten, k.unsigned_abs());
        if k >= 0 {
            BigRational::from_integer(m)
        } else {
            BigRational::new(BigInt::one(), m)
        }
    };
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }
    let scaled = &a * pow10(digits as i64 - 1 - e);
    let half = ratio(1, 2);
    let mut mant = (scaled + half).floor().to_integer();
    if mant >= num_traits::Pow::pow(&ten, digits) {
        mant /= &ten;
        e += 1;
    }
    let s = mant.to_string();
    let (head, tail) = s.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        alloc::format!("{sign}{head}e{e}")
    } else {
        alloc::format!("{sign}{head}.{tail}e{e}")
    }
}
