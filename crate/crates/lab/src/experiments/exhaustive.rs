//! Full enumeration of `Alt(F_p^n, F_p^m)` on tiny parameters.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use pgmax_core::certifier::{count_isotropic_3, find_bad_subspace};
use pgmax_core::grassmann::GrassmannCursor;
use pgmax_core::{AlternatingMap, Error, FpMatrix, LinearPowerMap, Mode, PowerMap, Prime, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::exact_mean_n3;

/// Largest number of maps enumerated by default (`2^24`).
pub const DEFAULT_SPACE_CAP: u64 = 1 << 24;

/// Exact tabulation over every alternating map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveTable {
    pub p: Prime,
    pub n: usize,
    pub m: usize,
    pub maps: u64,
    /// `N_3` value → number of maps.
    pub n3_distribution: BTreeMap<u64, u64>,
    pub mean_n3: BigRational,
    /// `[n 3]_p p^{-3m}`.
    pub target_mean: BigRational,
    /// Maps without any bad subspace (threshold `dim B(H,H) <= h + m - n`).
    pub no_bad_maps: u64,
    pub surjective_maps: u64,
    pub surjective_without_isotropic_3: u64,
    pub min_n3_surjective: Option<u64>,
}

impl ExhaustiveTable {
    pub fn to_json(&self) -> Value {
        let dist: BTreeMap<String, u64> = self.n3_distribution.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        json!({
            "p": self.p.get(),
            "n": self.n,
            "m": self.m,
            "maps": self.maps,
            "n3_distribution": dist,
            "mean_n3": self.mean_n3.to_string(),
            "target_mean": self.target_mean.to_string(),
            "mean_matches_target": self.mean_n3 == self.target_mean,
            "no_bad_maps": self.no_bad_maps,
            "surjective_maps": self.surjective_maps,
            "surjective_without_isotropic_3": self.surjective_without_isotropic_3,
            "min_n3_surjective": self.min_n3_surjective,
        })
    }
}

#[derive(Debug, Clone, Default)]
struct Tally {
    dist: BTreeMap<u64, u64>,
    sum: u128,
    no_bad: u64,
    surjective: u64,
    surjective_zero: u64,
    min_surjective: Option<u64>,
}

impl Tally {
    fn add(&mut self, n3: u64, no_bad: bool, surjective: bool) {
        *self.dist.entry(n3).or_default() += 1;
        self.sum += u128::from(n3);
        self.no_bad += u64::from(no_bad);
        if surjective {
            self.surjective += 1;
            self.surjective_zero += u64::from(n3 == 0);
            self.min_surjective = Some(self.min_surjective.map_or(n3, |x| x.min(n3)));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (k, v) in other.dist {
            *self.dist.entry(k).or_default() += v;
        }
        self.sum += other.sum;
        self.no_bad += other.no_bad;
        self.surjective += other.surjective;
        self.surjective_zero += other.surjective_zero;
        self.min_surjective = match (self.min_surjective, other.min_surjective) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

fn space_size(p: Prime, n: usize, m: usize, cap: u64) -> Result<u64> {
    let exp = (m * n * n.saturating_sub(1) / 2) as u32;
    match u64::from(p.get()).checked_pow(exp) {
        Some(s) if s <= cap => Ok(s),
        Some(s) => Err(Error::SpaceTooLarge(u128::from(s))),
        None => Err(Error::SpaceTooLarge(u128::MAX)),
    }
}

fn finish(p: Prime, n: usize, m: usize, maps: u64, t: Tally) -> ExhaustiveTable {
    ExhaustiveTable {
        p,
        n,
        m,
        maps,
        n3_distribution: t.dist,
        mean_n3: BigRational::new(BigInt::from(t.sum), BigInt::from(maps)),
        target_mean: exact_mean_n3(p, n, m),
        no_bad_maps: t.no_bad,
        surjective_maps: t.surjective,
        surjective_without_isotropic_3: t.surjective_zero,
        min_n3_surjective: t.min_surjective,
    }
}

/// Map number `code`: coefficients as base-`p` digits, row-major, first
/// entry least significant.
fn decode_map(p: Prime, n: usize, m: usize, mut code: u64) -> AlternatingMap {
    let c = n * n.saturating_sub(1) / 2;
    let q = u64::from(p.get());
    let mut coeff = FpMatrix::zeros(p, m, c);
    for k in 0..m {
        for j in 0..c {
            coeff.set(k, j, (code % q) as u8);
            code /= q;
        }
    }
    AlternatingMap::new(n, coeff).expect("shape matches")
}

/// Reference path through the certifier's counters, valid for every `p`.
pub fn exhaustive_tiny_generic(p: Prime, n: usize, m: usize, cap: u64) -> Result<ExhaustiveTable> {
    let maps = space_size(p, n, m, cap)?;
    let tally = (0..maps)
        .into_par_iter()
        .map(|code| -> Result<(u64, bool, bool)> {
            let b = decode_map(p, n, m, code);
            let n3 = count_isotropic_3(&b);
            let no_bad = find_bad_subspace(&b, None, Mode::AbMax, u128::MAX)?.witness.is_none();
            Ok((n3, no_bad, b.is_surjective()))
        })
        .try_fold(Tally::default, |mut t, r| {
            let (n3, nb, s) = r?;
            t.add(n3, nb, s);
            Ok::<_, Error>(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    Ok(finish(p, n, m, maps, tally))
}

/// Precomputed wedge masks for the word-parallel `F_2` path.
struct PackedPlan {
    m: usize,
    n: usize,
    /// `e_a ∧ e_b` masks for the three basis pairs of every 3-subspace.
    triples: Vec<[u64; 3]>,
    /// Every candidate `H` for the no-bad event: `(dim, basis pair masks)`.
    candidates: Vec<(usize, Vec<u64>)>,
}

fn wedge_mask(n: usize, u: u64, v: u64) -> u64 {
    let mut out = 0u64;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            let bit = ((u >> i) & (v >> j) ^ (u >> j) & (v >> i)) & 1;
            out |= bit << k;
            k += 1;
        }
    }
    out
}

fn pair_masks(n: usize, basis: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for r in 0..basis.len() {
        for s in r + 1..basis.len() {
            out.push(wedge_mask(n, basis[r], basis[s]));
        }
    }
    out
}

impl PackedPlan {
    fn new(n: usize, m: usize) -> PackedPlan {
        let mut triples = Vec::new();
        if n >= 3 {
            let mut c = GrassmannCursor::new(Prime::TWO, n, 3);
            while c.is_valid() {
                let w = pair_masks(n, c.packed().expect("packed over F_2"));
                triples.push([w[0], w[1], w[2]]);
                c.advance();
            }
        }
        let mut candidates = Vec::new();
        for h in n.saturating_sub(m)..n {
            let mut c = GrassmannCursor::new(Prime::TWO, n, h);
            while c.is_valid() {
                candidates.push((h, pair_masks(n, c.packed().expect("packed over F_2"))));
                c.advance();
            }
        }
        PackedPlan { m, n, triples, candidates }
    }

    #[inline]
    fn image(rows: &[u64], w: u64) -> u64 {
        rows.iter().enumerate().fold(0, |acc, (k, &r)| acc | (u64::from((r & w).count_ones() & 1) << k))
    }

    fn eval(&self, rows: &[u64]) -> (u64, bool, bool) {
        let n3 = self
            .triples
            .iter()
            .filter(|t| (Self::image(rows, t[0]) | Self::image(rows, t[1]) | Self::image(rows, t[2])) == 0)
            .count() as u64;
        let no_bad = !self.candidates.iter().any(|(h, ws)| {
            let t = h + self.m - self.n;
            let mut basis = [0u64; 64];
            let mut rank = 0;
            for &w in ws {
                if insert(&mut basis, Self::image(rows, w)) {
                    rank += 1;
                    if rank > t {
                        return false;
                    }
                }
            }
            true
        });
        let mut basis = [0u64; 64];
        let surjective = rows.iter().filter(|&&r| insert(&mut basis, r)).count() == self.m;
        (n3, no_bad, surjective)
    }
}

/// XOR-basis insertion keyed by leading bit; returns whether `v` was new.
fn insert(basis: &mut [u64; 64], mut v: u64) -> bool {
    while v != 0 {
        let top = 63 - v.leading_zeros() as usize;
        if basis[top] == 0 {
            basis[top] = v;
            return true;
        }
        v ^= basis[top];
    }
    false
}

/// Exact `N_3` distribution, no-bad count and surjectivity data over all
/// `p^{m·C(n,2)}` maps. `F_2` with `C(n,2) <= 64` uses a packed path.
pub fn exhaustive_tiny(p: Prime, n: usize, m: usize, cap: u64) -> Result<ExhaustiveTable> {
    let c = n * n.saturating_sub(1) / 2;
    if !p.is_two() || c > 64 || m > 64 {
        return exhaustive_tiny_generic(p, n, m, cap);
    }
    let maps = space_size(p, n, m, cap)?;
    let plan = PackedPlan::new(n, m);
    let mask = if c == 64 { u64::MAX } else { (1u64 << c) - 1 };
    let tally = (0..maps)
        .into_par_iter()
        .fold(Tally::default, |mut t, code| {
            let rows: Vec<u64> = (0..m).map(|k| (code >> (k * c)) & mask).collect();
            let (n3, nb, s) = plan.eval(&rows);
            t.add(n3, nb, s);
            t
        })
        .reduce(Tally::default, Tally::merge);
    Ok(finish(p, n, m, maps, tally))
}

/// Outcome of the order-`p^7` exclusion check: every surjective
/// `B: F_p^5 ∧ F_p^5 → F_p^2` has a totally isotropic 3-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaP7Report {
    pub p: u32,
    pub exhaustive: bool,
    pub maps: u64,
    pub surjective: u64,
    pub counterexamples: u64,
    pub min_n3_surjective: Option<u64>,
}

impl LemmaP7Report {
    pub fn holds(&self) -> bool {
        self.counterexamples == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "n": 5,
            "m": 2,
            "exhaustive": self.exhaustive,
            "maps": self.maps,
            "surjective": self.surjective,
            "counterexamples": self.counterexamples,
            "min_n3_surjective": self.min_n3_surjective,
        })
    }
}

impl From<&ExhaustiveTable> for LemmaP7Report {
    fn from(t: &ExhaustiveTable) -> LemmaP7Report {
        LemmaP7Report {
            p: t.p.get(),
            exhaustive: true,
            maps: t.maps,
            surjective: t.surjective_maps,
            counterexamples: t.surjective_without_isotropic_3,
            min_n3_surjective: t.min_n3_surjective,
        }
    }
}

/// Exhaustive check over all `2^20` maps for `p = 2`.
pub fn verify_lemma_p7() -> Result<LemmaP7Report> {
    Ok(LemmaP7Report::from(&exhaustive_tiny(Prime::TWO, 5, 2, DEFAULT_SPACE_CAP)?))
}

/// Sampled check for any `p`.
pub fn verify_lemma_p7_sampling(p: Prime, trials: u64, seed: u64) -> Result<LemmaP7Report> {
    let rows = super::par_trials(trials, |t| {
        let mut rng = pgmax_core::seed::substream(seed, t);
        let b = AlternatingMap::sample(p, 5, 2, &mut rng);
        Ok((b.is_surjective(), count_isotropic_3(&b)))
    })?;
    let surj: Vec<u64> = rows.iter().filter(|r| r.0).map(|r| r.1).collect();
    Ok(LemmaP7Report {
        p: p.get(),
        exhaustive: false,
        maps: trials,
        surjective: surj.len() as u64,
        counterexamples: surj.iter().filter(|&&c| c == 0).count() as u64,
        min_n3_surjective: surj.iter().min().copied(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub maps: u64,
    /// Maps with a bad subspace for `F`.
    pub bad_with_f: u64,
    /// Maps with a bad subspace for `F∘P`, `P` the cyclic shift of coordinates.
    pub bad_with_permuted_f: u64,
}

/// Counts maps `B` with a bad subspace for the canonical `F` and for `F`
/// precomposed with a coordinate permutation, over all of `Alt(F_p^n, F_p^{n-2})`.
pub fn f_equivariance_exhaustive(p: Prime, n: usize, cap: u64) -> Result<EquivarianceReport> {
    if p.is_two() || n < 2 {
        return Err(Error::InvalidParams("needs odd p and n >= 2".into()));
    }
    let m = n - 2;
    let maps = space_size(p, n, m, cap)?;
    let f = LinearPowerMap::canonical(p, n, m)?;
    let mut shift = FpMatrix::zeros(p, n, n);
    for i in 0..n {
        shift.set(i, (i + 1) % n, 1);
    }
    let fa = PowerMap::Linear(f.clone());
    let fb = PowerMap::Linear(f.precompose(&shift)?);
    let (a, b) = (0..maps)
        .into_par_iter()
        .map(|code| -> Result<(u64, u64)> {
            let bm = decode_map(p, n, m, code);
            let x = find_bad_subspace(&bm, Some(&fa), Mode::DMax, u128::MAX)?.witness.is_some();
            let y = find_bad_subspace(&bm, Some(&fb), Mode::DMax, u128::MAX)?.witness.is_some();
            Ok((u64::from(x), u64::from(y)))
        })
        .try_reduce(|| (0, 0), |l, r| Ok((l.0 + r.0, l.1 + r.1)))?;
    Ok(EquivarianceReport { maps, bad_with_f: a, bad_with_permuted_f: b })
}
