//! Bad-subspace decisions, exhaustive searches and certificates.
//!
//! A proper subspace `H < V` (dim `h`) is bad when
//! `dim W / S(H) >= dim V / H`, i.e. `dim S(H) <= h + m - n`, where
//! `S(H) = B(H,H)` for [`Mode::AbMax`] and `S(H) = B(H,H) + F(H)` for
//! [`Mode::DMax`]. With `m = n - 3` (resp. `m = n - 2`) the threshold is
//! `h - 3` (resp. `h - 2`).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::altmap::{AlternatingMap, LinearPowerMap, PowerMap, QuadraticMap};
use crate::combinat::{gaussian_binomial_u128, gl_order};
use crate::field::Prime;
use crate::grassmann::{check_guard, GrassmannCursor};
use crate::matrix::FpMatrix;
use crate::seed::substream;
use crate::span::SpanBuilder;
use crate::subspace::Subspace;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// Extremal ab-maximal: `m = n - 3`.
    AbMax,
    /// Extremal d-maximal: `m = n - 2`.
    DMax,
}

impl Mode {
    /// `n - m` for the extremal family.
    pub fn codim(self) -> usize {
        match self {
            Mode::AbMax => 3,
            Mode::DMax => 2,
        }
    }

    /// `m` for the extremal family, if `n` is large enough.
    pub fn target_m(self, n: usize) -> Option<usize> {
        n.checked_sub(self.codim())
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::AbMax => "abmax",
            Mode::DMax => "dmax",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "abmax" => Ok(Mode::AbMax),
            "dmax" => Ok(Mode::DMax),
            other => Err(Error::InvalidParams(alloc::format!("unknown mode {other:?}"))),
        }
    }
}

/// Outcome of a bad-subspace scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadnessReport {
    pub p: Prime,
    pub n: usize,
    pub m: usize,
    pub mode: Mode,
    /// `N_h` for every fully or partially scanned dimension.
    pub counts: BTreeMap<usize, u64>,
    /// First bad subspace in enumeration order.
    pub witness: Option<Subspace>,
    /// Every candidate dimension was scanned completely.
    pub exhaustive: bool,
    /// Number of candidate subspaces examined.
    pub scanned: u64,
}

impl BadnessReport {
    pub fn total_bad(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn has_bad(&self) -> bool {
        self.witness.is_some()
    }
}

/// `h + m - n` if nonnegative: the largest `dim S(H)` that still makes `H` bad.
#[inline]
fn threshold(h: usize, n: usize, m: usize) -> Option<usize> {
    (h + m).checked_sub(n)
}

fn ensure_proper(h: &Subspace, n: usize) -> Result<()> {
    if h.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.ambient_dim() });
    }
    if h.is_full() {
        return Err(Error::NotProper);
    }
    Ok(())
}

fn check_pair(b: &AlternatingMap, f: &PowerMap) -> Result<()> {
    if f.prime() != b.prime() {
        return Err(Error::FieldMismatch { expected: b.prime().get(), found: f.prime().get() });
    }
    if f.n() != b.n() || f.m() != b.m() {
        return Err(Error::DimensionMismatch { expected: b.m(), found: f.m() });
    }
    match (b.prime().is_two(), f) {
        (true, PowerMap::Quadratic(_)) | (false, PowerMap::Linear(_)) => Ok(()),
        _ => Err(Error::InvalidParams("power map must be quadratic for p = 2 and linear otherwise".into())),
    }
}

/// ab-maximal badness of a single proper subspace.
pub fn is_bad_abmax(b: &AlternatingMap, h: &Subspace) -> Result<bool> {
    ensure_proper(h, b.n())?;
    let Some(t) = threshold(h.dim(), b.n(), b.m()) else {
        return Ok(false);
    };
    Ok(b.image_span(h)?.dim() <= t)
}

/// d-maximal badness by the defining inequality
/// `dim (B(H,H) + F(H)) <= h + m - n`.
pub fn is_bad_dmax_by_definition(b: &AlternatingMap, f: &PowerMap, h: &Subspace) -> Result<bool> {
    check_pair(b, f)?;
    ensure_proper(h, b.n())?;
    let Some(t) = threshold(h.dim(), b.n(), b.m()) else {
        return Ok(false);
    };
    let s = b.image_span(h)?.sum(&f.image_span(h)?)?;
    Ok(s.dim() <= t)
}

/// d-maximal badness of a single proper subspace.
///
/// For odd `p` with `F` surjective this uses the characterization
/// `B(H,H) <= F(H)` and `ker F <= H`; otherwise the definition.
pub fn is_bad_dmax(b: &AlternatingMap, f: &PowerMap, h: &Subspace) -> Result<bool> {
    check_pair(b, f)?;
    ensure_proper(h, b.n())?;
    match f {
        PowerMap::Linear(lin) if lin.rank() == lin.m() => {
            if !lin.kernel().is_subspace_of(h)? {
                return Ok(false);
            }
            let fh = lin.image_span(h)?;
            b.image_span(h)?.is_subspace_of(&fh)
        }
        _ => is_bad_dmax_by_definition(b, f, h),
    }
}

/// Per-subspace evaluator shared by the scans.
struct Evaluator<'a> {
    b: &'a AlternatingMap,
    f: Option<&'a PowerMap>,
    span: SpanBuilder,
    packed: bool,
}

impl<'a> Evaluator<'a> {
    fn new(b: &'a AlternatingMap, f: Option<&'a PowerMap>) -> Evaluator<'a> {
        let packed = b.packed_rows().is_some()
            && b.m() <= 64
            && b.n() <= 64
            && f.is_none_or(|f| matches!(f, PowerMap::Quadratic(_)));
        Evaluator { b, f, span: SpanBuilder::new(b.prime(), b.m()), packed }
    }

    /// Is the span of `S(H)` at most `t`-dimensional? Stops as soon as the
    /// running rank exceeds `t`.
    fn packed_bad(&mut self, rows: &[u64], t: usize) -> bool {
        self.span.clear();
        if let Some(PowerMap::Quadratic(q)) = self.f {
            for &x in rows {
                if self.span.insert_packed(q.apply_packed(x)) && self.span.rank() > t {
                    return false;
                }
            }
        }
        for r in 0..rows.len() {
            for s in r + 1..rows.len() {
                if self.span.insert_packed(self.b.apply_packed(rows[r], rows[s])) && self.span.rank() > t {
                    return false;
                }
            }
        }
        true
    }

    fn generic_bad(&mut self, rows: &[&[u8]], t: usize) -> bool {
        self.span.clear();
        if let Some(f) = self.f {
            for x in rows {
                let img = f.apply(x).expect("shapes checked");
                if self.span.insert(&img) && self.span.rank() > t {
                    return false;
                }
            }
        }
        for r in 0..rows.len() {
            for s in r + 1..rows.len() {
                if self.span.insert(&self.b.apply_unchecked(rows[r], rows[s])) && self.span.rank() > t {
                    return false;
                }
            }
        }
        true
    }

    fn cursor_bad(&mut self, c: &GrassmannCursor, t: usize) -> bool {
        if self.packed {
            if let Some(rows) = c.packed() {
                return self.packed_bad(rows, t);
            }
        }
        let rows: Vec<&[u8]> = c.basis().row_iter().collect();
        self.generic_bad(&rows, t)
    }
}

/// One slice of the candidate set: all subspaces of a given dimension
/// (or, for odd-p d-max, all lifts of quotient subspaces of a given dimension).
enum Stratum {
    Plain { h: usize },
    Lifted { u: usize },
}

/// `ker F` basis and a complement basis.
type KernelSplit = (Vec<Vec<u8>>, Vec<Vec<u8>>);

struct Plan {
    strata: Vec<(Stratum, u128)>,
    /// Set for lifted strata.
    lift: Option<KernelSplit>,
}

fn plan(b: &AlternatingMap, f: Option<&PowerMap>, mode: Mode) -> Result<Plan> {
    let (p, n, m) = (b.prime(), b.n(), b.m());
    if let (Mode::DMax, Some(PowerMap::Linear(lin))) = (mode, f) {
        if lin.rank() == m {
            let ker = lin.kernel();
            let k = ker.dim();
            let ker_rows: Vec<Vec<u8>> = ker.basis().to_rows();
            // complement: unit vectors on the non-pivot columns of ker F
            let comp: Vec<Vec<u8>> = (0..n)
                .filter(|c| !ker.pivots().contains(c))
                .map(|c| crate::subspace::unit(n, c))
                .collect();
            debug_assert_eq!(comp.len(), n - k);
            let strata = (0..n - k)
                .map(|u| (Stratum::Lifted { u }, gaussian_binomial_u128(n - k, u, p.get())))
                .collect();
            return Ok(Plan { strata, lift: Some((ker_rows, comp)) });
        }
    }
    let lo = n.saturating_sub(m);
    let strata = (lo..n).map(|h| (Stratum::Plain { h }, gaussian_binomial_u128(n, h, p.get()))).collect();
    Ok(Plan { strata, lift: None })
}

fn validate(b: &AlternatingMap, f: Option<&PowerMap>, mode: Mode) -> Result<()> {
    match (mode, f) {
        (Mode::DMax, None) => Err(Error::InvalidParams("d-max scans need a power map".into())),
        (_, Some(f)) => check_pair(b, f),
        (Mode::AbMax, None) => Ok(()),
    }
}

/// Scans candidates in canonical order, calling `on_bad` for each bad one;
/// `on_bad` returns whether to continue. Returns the per-dimension counts,
/// whether the scan was complete, and the number examined.
fn scan<F>(
    b: &AlternatingMap,
    f: Option<&PowerMap>,
    mode: Mode,
    guard: u128,
    mut on_bad: F,
) -> Result<(BTreeMap<usize, u64>, bool, u64)>
where
    F: FnMut(Subspace) -> bool,
{
    validate(b, f, mode)?;
    let (p, n, m) = (b.prime(), b.n(), b.m());
    let f_for_eval = if mode == Mode::DMax { f } else { None };
    let mut eval = Evaluator::new(b, f_for_eval);
    let pl = plan(b, f_for_eval, mode)?;
    let mut counts = BTreeMap::new();
    let mut budget = guard;
    let mut scanned = 0u64;
    for (stratum, size) in pl.strata {
        if size > budget {
            return Ok((counts, false, scanned));
        }
        budget -= size;
        match stratum {
            Stratum::Plain { h } => {
                let t = threshold(h, n, m).expect("strata start at n - m");
                let entry = counts.entry(h).or_insert(0u64);
                let mut c = GrassmannCursor::new(p, n, h);
                while c.is_valid() {
                    scanned += 1;
                    if eval.cursor_bad(&c, t) {
                        *entry += 1;
                        if !on_bad(c.subspace()) {
                            return Ok((counts, false, scanned));
                        }
                    }
                    c.advance();
                }
            }
            Stratum::Lifted { u } => {
                let (ker_rows, comp) = pl.lift.as_ref().expect("lifted plan");
                let h = ker_rows.len() + u;
                let t = threshold(h, n, m).expect("kernel dimension is n - m");
                let entry = counts.entry(h).or_insert(0u64);
                let mut c = GrassmannCursor::new(p, comp.len(), u);
                let mut rows: Vec<Vec<u8>> = ker_rows.clone();
                while c.is_valid() {
                    scanned += 1;
                    rows.truncate(ker_rows.len());
                    for coeffs in c.basis().row_iter() {
                        let mut v = alloc::vec![0u8; n];
                        for (a, cv) in coeffs.iter().zip(comp) {
                            if *a != 0 {
                                for (x, &y) in v.iter_mut().zip(cv) {
                                    *x = p.add(*x, p.mul(*a, y));
                                }
                            }
                        }
                        rows.push(v);
                    }
                    let refs: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
                    if eval.generic_bad(&refs, t) {
                        *entry += 1;
                        let hs = Subspace::from_generators(p, n, &rows)?;
                        if !on_bad(hs) {
                            return Ok((counts, false, scanned));
                        }
                    }
                    c.advance();
                }
            }
        }
    }
    Ok((counts, true, scanned))
}

fn report(b: &AlternatingMap, mode: Mode, counts: BTreeMap<usize, u64>, witness: Option<Subspace>, exhaustive: bool, scanned: u64) -> BadnessReport {
    BadnessReport { p: b.prime(), n: b.n(), m: b.m(), mode, counts, witness, exhaustive, scanned }
}

/// First bad subspace in canonical order, if any.
///
/// Candidates: ab-max scans dimensions `n - m ..= n - 1`; d-max with odd `p`
/// and surjective `F` scans only `H >= ker F` (lifted from subspaces of
/// `V / ker F`); d-max with `p = 2` scans dimensions `n - m ..= n - 1`.
/// When the guard cuts the scan short the report has `exhaustive = false`.
pub fn find_bad_subspace(b: &AlternatingMap, f: Option<&PowerMap>, mode: Mode, guard: u128) -> Result<BadnessReport> {
    let mut witness = None;
    let (counts, complete, scanned) = scan(b, f, mode, guard, |h| {
        witness = Some(h);
        false
    })?;
    let exhaustive = complete && witness.is_none();
    Ok(report(b, mode, counts, witness, exhaustive, scanned))
}

/// Number of candidate subspaces a full scan examines.
pub fn candidate_count(b: &AlternatingMap, f: Option<&PowerMap>, mode: Mode) -> Result<u128> {
    validate(b, f, mode)?;
    Ok(plan(b, if mode == Mode::DMax { f } else { None }, mode)?
        .strata
        .iter()
        .map(|(_, s)| *s)
        .fold(0u128, |a, s| a.saturating_add(s)))
}

/// Exact `N_h` for every candidate dimension.
pub fn count_bad(b: &AlternatingMap, f: Option<&PowerMap>, mode: Mode, guard: u128) -> Result<BadnessReport> {
    check_guard(candidate_count(b, f, mode)?, guard)?;
    let mut witness = None;
    let (counts, complete, scanned) = scan(b, f, mode, guard, |h| {
        if witness.is_none() {
            witness = Some(h);
        }
        true
    })?;
    debug_assert!(complete);
    Ok(report(b, mode, counts, witness, complete, scanned))
}

/// Number of totally isotropic 3-dimensional subspaces, by scanning every
/// 3-dimensional subspace.
pub fn count_isotropic_3_baseline(b: &AlternatingMap, guard: u128) -> Result<u64> {
    let (p, n) = (b.prime(), b.n());
    if n < 3 {
        return Ok(0);
    }
    check_guard(gaussian_binomial_u128(n, 3, p.get()), guard)?;
    let mut eval = Evaluator::new(b, None);
    let mut c = GrassmannCursor::new(p, n, 3);
    let mut count = 0;
    while c.is_valid() {
        if eval.cursor_bad(&c, 0) {
            count += 1;
        }
        c.advance();
    }
    Ok(count)
}

/// Nonzero vectors of `F_p^n` whose first nonzero coordinate is 1.
fn normalized_vectors(p: Prime, n: usize) -> Vec<Vec<u8>> {
    let q = p.get() as usize;
    let total = q.pow(n as u32);
    (1..total)
        .map(|mut code| {
            let mut v = alloc::vec![0u8; n];
            for x in v.iter_mut().rev() {
                *x = (code % q) as u8;
                code /= q;
            }
            v
        })
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

fn is_normalized(v: &[u8]) -> bool {
    v.iter().find(|&&x| x != 0) == Some(&1)
}

/// `m × n` matrix of `x ↦ B(v, x)`.
fn contraction(b: &AlternatingMap, v: &[u8]) -> FpMatrix {
    let (p, n, m) = (b.prime(), b.n(), b.m());
    let mut out = FpMatrix::zeros(p, m, n);
    for j in 0..n {
        let e = crate::subspace::unit(n, j);
        for (k, x) in b.apply_unchecked(v, &e).into_iter().enumerate() {
            out.set(k, j, x);
        }
    }
    out
}

/// Number of totally isotropic 3-dimensional subspaces by extending
/// isotropic flags: pick `v1`, then `v2 ∈ v1^⊥`, then count `v3` in
/// `v1^⊥ ∩ v2^⊥` outside `⟨v1, v2⟩` without enumerating it. Ordered
/// normalized triples are divided by the number of normalized ordered
/// bases of `F_p^3`.
pub fn count_isotropic_3_backtrack(b: &AlternatingMap) -> u64 {
    let (p, n) = (b.prime(), b.n());
    if n < 3 {
        return 0;
    }
    let q = p.get() as u64;
    let projective = |d: usize| (q.pow(d as u32) - 1) / (q - 1);
    let mut triples: u128 = 0;
    for v1 in normalized_vectors(p, n) {
        let c1 = contraction(b, &v1);
        let perp1 = Subspace::from_matrix(&c1.kernel());
        if perp1.dim() < 3 {
            continue;
        }
        for v2 in perp1.elements() {
            if !is_normalized(&v2) || v2 == v1 {
                continue;
            }
            let c2 = contraction(b, &v2);
            let stacked = c1.vstack(&c2).expect("same shape");
            let d12 = n - stacked.rank();
            if d12 >= 3 {
                triples += (projective(d12) - projective(2)) as u128;
            }
        }
    }
    let per_subspace = gl_order(3, p.get()) / BigInt::from((q - 1).pow(3));
    let (quot, rem) = BigInt::from(triples).div_rem(&per_subspace);
    debug_assert!(rem.is_zero(), "triples must split evenly into subspaces");
    quot.to_u64().expect("count fits")
}

/// `N_3`, via the backtracking counter.
pub fn count_isotropic_3(b: &AlternatingMap) -> u64 {
    count_isotropic_3_backtrack(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    Exhausted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::Exhausted => "exhausted",
        }
    }
}

/// A sampled `(B, F)` together with the search outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub p: Prime,
    pub n: usize,
    pub m: usize,
    pub mode: Mode,
    pub seed: u64,
    pub attempts: u64,
    pub max_attempts: u64,
    pub b: AlternatingMap,
    /// `None` for ab-max runs (the group uses `F = 0`, or for `p = 2` the
    /// zero-diagonal lift of `B`).
    pub f: Option<PowerMap>,
    pub verdict: Verdict,
    /// First bad subspace of the last attempt when exhausted.
    pub witness: Option<Subspace>,
}

/// Samples `(B, F)` for attempt `attempt` (0-based) of a certification run.
///
/// ab-max: uniform `B`, no `F`. d-max, odd `p`: uniform `B`, canonical
/// projection `F`. d-max, `p = 2`: uniform quadratic `F`, `B` its polar form.
pub fn sample_instance<R: Rng + ?Sized>(p: Prime, n: usize, mode: Mode, rng: &mut R) -> Result<(AlternatingMap, Option<PowerMap>)> {
    let m = mode
        .target_m(n)
        .ok_or_else(|| Error::InvalidParams(alloc::format!("{mode} needs n >= {}", mode.codim())))?;
    Ok(match (mode, p.is_two()) {
        (Mode::AbMax, _) => (AlternatingMap::sample(p, n, m, rng), None),
        (Mode::DMax, false) => {
            let b = AlternatingMap::sample(p, n, m, rng);
            (b, Some(PowerMap::Linear(LinearPowerMap::canonical(p, n, m)?)))
        }
        (Mode::DMax, true) => {
            let f = QuadraticMap::sample(n, m, rng);
            (f.associated_b(), Some(PowerMap::Quadratic(f)))
        }
    })
}

/// Rejection sampling until a map with no bad subspace turns up.
pub fn certify_loop(p: Prime, n: usize, mode: Mode, seed: u64, max_attempts: u64, guard: u128) -> Result<Certificate> {
    let m = mode
        .target_m(n)
        .ok_or_else(|| Error::InvalidParams(alloc::format!("{mode} needs n >= {}", mode.codim())))?;
    if max_attempts == 0 {
        return Err(Error::InvalidParams("max_attempts must be positive".into()));
    }
    let mut last = None;
    for attempt in 0..max_attempts {
        let mut rng = substream(seed, attempt);
        let (b, f) = sample_instance(p, n, mode, &mut rng)?;
        if attempt == 0 {
            check_guard(candidate_count(&b, f.as_ref(), mode)?, guard)?;
        }
        let rep = find_bad_subspace(&b, f.as_ref(), mode, guard)?;
        let certified = rep.witness.is_none();
        let cert = Certificate {
            p,
            n,
            m,
            mode,
            seed,
            attempts: attempt + 1,
            max_attempts,
            b,
            f,
            verdict: if certified { Verdict::Certified } else { Verdict::Exhausted },
            witness: rep.witness,
        };
        if certified {
            return Ok(cert);
        }
        last = Some(cert);
    }
    Ok(last.expect("at least one attempt"))
}
