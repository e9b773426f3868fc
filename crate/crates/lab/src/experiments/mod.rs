//! Seeded Monte Carlo and exhaustive experiments.
//!
//! Trial `t` of a run with master seed `s` draws from `substream(s, t)`, so
//! results do not depend on how trials are scheduled across threads.

mod exhaustive;
mod quad;
mod wedge;

pub use exhaustive::{
    exhaustive_tiny, exhaustive_tiny_generic, f_equivariance_exhaustive, verify_lemma_p7, verify_lemma_p7_sampling,
    EquivarianceReport, ExhaustiveTable, LemmaP7Report, DEFAULT_SPACE_CAP,
};
pub use quad::{quadratic_search, violates_quadratic_condition, QuadSearchResult};
pub use wedge::{wedge_lemma_check, wedge_lemma_property, WedgeReport};

use std::time::Instant;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use pgmax_core::bounds::{dmax_bad_bound, lambda_p, lambda_p_n, quadratic_bad_bound};
use pgmax_core::certifier::{candidate_count, count_isotropic_3, find_bad_subspace, sample_instance};
use pgmax_core::combinat::{falling_factorial, gaussian_binomial, gaussian_binomial_u128, rational_pow};
use pgmax_core::grassmann::check_guard;
use pgmax_core::seed::{splitmix64, substream};
use pgmax_core::{AlternatingMap, Error, FpMatrix, LinearPowerMap, Mode, PowerMap, Prime, Result};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::record::{config, ExperimentRecord, Timing, Trial};
use crate::stats::{factorial_moments, mean_ci, wilson, Z99};

/// Runs `trials` independent trials in parallel, preserving trial order.
pub fn par_trials<T, F>(trials: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    (0..trials).into_par_iter().map(f).collect()
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn rational_json(x: &BigRational) -> Value {
    json!(x.to_string())
}

fn extremal_m(mode: Mode, n: usize) -> Result<usize> {
    mode.target_m(n).ok_or_else(|| Error::InvalidParams(format!("{mode} needs n >= {}", mode.codim())))
}

/// Exact `E[N_3] = [n 3]_p p^{-3m}` for uniform `B: F_p^n ∧ F_p^n → F_p^m`.
pub fn exact_mean_n3(p: Prime, n: usize, m: usize) -> BigRational {
    BigRational::from_integer(gaussian_binomial(n as u32, 3, p.get())) * rational_pow(p.get(), -3 * m as i64)
}

/// Samples `N_3` for uniform `B` with `m = n - 3` and reports falling-factorial
/// moments next to their targets `([n 3]_p)_k p^{-3k(n-3)}`.
pub fn run_moments(p: Prime, n: usize, trials: u64, k_max: u32, seed: u64, guard: u128, timed: bool) -> Result<ExperimentRecord> {
    let m = extremal_m(Mode::AbMax, n)?;
    check_guard(gaussian_binomial_u128(n, 3, p.get()), guard)?;
    let start = Instant::now();
    let mut rec = ExperimentRecord::new(
        "moments",
        config([
            ("p", json!(p.get())),
            ("n", json!(n)),
            ("m", json!(m)),
            ("mode", json!("abmax")),
            ("trials", json!(trials)),
            ("k_max", json!(k_max)),
            ("seed", json!(seed)),
        ]),
    );
    let counts = par_trials(trials, |t| {
        let mut rng = substream(seed, t);
        Ok(count_isotropic_3(&AlternatingMap::sample(p, n, m, &mut rng)))
    })?;
    rec.trials = counts.iter().enumerate().map(|(t, &c)| Trial { trial: t as u64, n3: Some(c), bad: None }).collect();
    if trials > 0 {
        let values: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
        let s = mean_ci(&values, Z99).expect("nonempty");
        let target = lambda_p_n(p.get(), n as u32);
        let target_f = to_f64(&target);
        let g = BigRational::from_integer(gaussian_binomial(n as u32, 3, p.get()));
        let mut summary = config([
            ("mean", json!(s.mean)),
            ("variance", json!(s.variance)),
            ("mean_ci_lo", json!(s.lo)),
            ("mean_ci_hi", json!(s.hi)),
            ("target_mean", rational_json(&target)),
            ("target_mean_approx", json!(target_f)),
            ("target_in_ci", json!(s.lo <= target_f && target_f <= s.hi)),
            ("lambda_p", rational_json(&lambda_p(p.get()))),
            ("n3_min", json!(counts.iter().min())),
            ("n3_max", json!(counts.iter().max())),
            ("zero_fraction", json!(counts.iter().filter(|&&c| c == 0).count() as f64 / trials as f64)),
        ]);
        for (k, fm) in factorial_moments(&counts, k_max).into_iter().enumerate() {
            let k = k as u32 + 1;
            let tgt = falling_factorial(&g, k) * rational_pow(p.get(), -3 * k as i64 * (n as i64 - 3));
            summary.insert(format!("factorial_moment_{k}"), json!(fm));
            summary.insert(format!("factorial_target_{k}"), json!(to_f64(&tgt)));
        }
        rec.summary = Some(summary);
    }
    if timed {
        rec.timing = Some(Timing { elapsed_ms: start.elapsed().as_millis() });
    }
    Ok(rec)
}

/// Theoretical comparator for the no-bad frequency: `exp(-λ_p(n))` for
/// ab-max, the Markov bound on the bad probability for d-max.
fn comparator(p: Prime, n: usize, mode: Mode) -> Vec<(&'static str, Value)> {
    match mode {
        Mode::AbMax => {
            let lam = to_f64(&lambda_p_n(p.get(), n as u32));
            vec![("lambda_p_n", json!(lam)), ("poisson_no_bad", json!((-lam).exp()))]
        }
        Mode::DMax => {
            let bound = if p.is_two() { quadratic_bad_bound(n as u32) } else { dmax_bad_bound(p.get(), n as u32) };
            let f = to_f64(&bound);
            vec![
                ("bad_bound", rational_json(&bound)),
                ("bad_bound_approx", json!(f)),
                ("no_bad_lower_bound", json!(1.0 - f)),
            ]
        }
    }
}

/// Frequency of maps with no bad subspace. With `fixed_f`, `B` is uniform and
/// `F` is held fixed; otherwise instances are drawn as in certification.
#[allow(clippy::too_many_arguments)]
pub fn run_no_bad_frequency(
    p: Prime,
    n: usize,
    mode: Mode,
    trials: u64,
    seed: u64,
    fixed_f: Option<&PowerMap>,
    guard: u128,
    timed: bool,
) -> Result<ExperimentRecord> {
    let m = extremal_m(mode, n)?;
    let start = Instant::now();
    let draw = |t: u64| -> Result<(AlternatingMap, Option<PowerMap>)> {
        let mut rng = substream(seed, t);
        match fixed_f {
            Some(f) => Ok((AlternatingMap::sample(p, n, m, &mut rng), Some(f.clone()))),
            None => sample_instance(p, n, mode, &mut rng),
        }
    };
    if trials > 0 {
        let (b, f) = draw(0)?;
        check_guard(candidate_count(&b, f.as_ref(), mode)?, guard)?;
    }
    let mut cfg = config([
        ("p", json!(p.get())),
        ("n", json!(n)),
        ("m", json!(m)),
        ("mode", json!(mode.as_str())),
        ("trials", json!(trials)),
        ("seed", json!(seed)),
    ]);
    if let Some(f) = fixed_f {
        cfg.insert("fixed_power_coeffs".into(), json!(f.coeff().to_rows()));
    }
    let mut rec = ExperimentRecord::new("frequency", cfg);
    rec.trials = par_trials(trials, |t| {
        let (b, f) = draw(t)?;
        let bad = find_bad_subspace(&b, f.as_ref(), mode, guard)?.witness.is_some();
        let n3 = (mode == Mode::AbMax).then(|| count_isotropic_3(&b));
        Ok(Trial { trial: t, n3, bad: Some(bad) })
    })?;
    if trials > 0 {
        let bad = rec.trials.iter().filter(|t| t.bad == Some(true)).count() as u64;
        let good = trials - bad;
        let (lo, hi) = wilson(good, trials, Z99);
        let (blo, bhi) = wilson(bad, trials, Z99);
        let mut summary = config([
            ("no_bad_count", json!(good)),
            ("no_bad_freq", json!(good as f64 / trials as f64)),
            ("no_bad_ci_lo", json!(lo)),
            ("no_bad_ci_hi", json!(hi)),
            ("bad_freq", json!(bad as f64 / trials as f64)),
            ("bad_ci_lo", json!(blo)),
            ("bad_ci_hi", json!(bhi)),
        ]);
        for (k, v) in comparator(p, n, mode) {
            summary.insert(k.into(), v);
        }
        rec.summary = Some(summary);
    }
    if timed {
        rec.timing = Some(Timing { elapsed_ms: start.elapsed().as_millis() });
    }
    Ok(rec)
}

/// A surjective `m x n` matrix other than the coordinate projection,
/// derived deterministically from `seed`.
pub fn mixed_surjection(p: Prime, n: usize, m: usize, seed: u64) -> Result<LinearPowerMap> {
    let mut rng = substream(seed, u64::MAX);
    loop {
        let rows: Vec<Vec<u8>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(0..p.get() as u8)).collect()).collect();
        let a = FpMatrix::from_residue_rows(p, n, &rows)?;
        if a.rank() == m && a != LinearPowerMap::canonical(p, n, m)?.matrix().clone() {
            return LinearPowerMap::new(a);
        }
    }
}

#[derive(Debug, Clone)]
pub struct IndependenceReport {
    pub canonical: ExperimentRecord,
    pub mixed: ExperimentRecord,
    /// The two 99% Wilson intervals for the no-bad frequency intersect.
    pub overlap: bool,
}

/// Compares the no-bad frequency under the coordinate projection and under
/// a mixed surjection `F` (odd `p`, `m = n - 2`).
pub fn f_independence_check(p: Prime, n: usize, trials: u64, seed: u64, guard: u128) -> Result<IndependenceReport> {
    if p.is_two() {
        return Err(Error::InvalidParams("the fixed-F comparison needs odd p".into()));
    }
    let m = extremal_m(Mode::DMax, n)?;
    let f1 = PowerMap::Linear(LinearPowerMap::canonical(p, n, m)?);
    let f2 = PowerMap::Linear(mixed_surjection(p, n, m, seed)?);
    let canonical = run_no_bad_frequency(p, n, Mode::DMax, trials, seed, Some(&f1), guard, false)?;
    let mixed = run_no_bad_frequency(p, n, Mode::DMax, trials, splitmix64(seed), Some(&f2), guard, false)?;
    let ci = |r: &ExperimentRecord| -> (f64, f64) {
        let s = r.summary.as_ref();
        let get = |k: &str| s.and_then(|s| s.get(k)).and_then(Value::as_f64).unwrap_or(f64::NAN);
        (get("no_bad_ci_lo"), get("no_bad_ci_hi"))
    };
    let (a, b) = (ci(&canonical), ci(&mixed));
    let overlap = trials == 0 || (a.0 <= b.1 && b.0 <= a.1);
    Ok(IndependenceReport { canonical, mixed, overlap })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_are_deterministic_and_sane() {
        let a = run_moments(Prime::TWO, 6, 300, 3, 11, u128::MAX, false).unwrap();
        let b = run_moments(Prime::TWO, 6, 300, 3, 11, u128::MAX, false).unwrap();
        assert_eq!(a, b);
        let s = a.summary.unwrap();
        assert_eq!(s["target_mean"], json!("1395/512"));
        assert!(s["target_in_ci"].as_bool().unwrap());
    }

    #[test]
    fn zero_trials_gives_empty_record() {
        let r = run_moments(Prime::TWO, 5, 0, 2, 1, u128::MAX, false).unwrap();
        assert!(r.trials.is_empty() && r.summary.is_none());
    }

    #[test]
    fn abmax_p2_n5_never_certifies() {
        let r = run_no_bad_frequency(Prime::TWO, 5, Mode::AbMax, 200, 3, None, u128::MAX, false).unwrap();
        assert_eq!(r.summary.unwrap()["no_bad_count"], json!(0));
    }

    #[test]
    fn dmax_frequency_below_bound() {
        let p = Prime::THREE;
        let r = run_no_bad_frequency(p, 5, Mode::DMax, 500, 5, None, u128::MAX, false).unwrap();
        let s = r.summary.unwrap();
        assert!(s["bad_ci_hi"].as_f64().unwrap() < 0.35);
        assert!(s["bad_ci_lo"].as_f64().unwrap() <= s["bad_bound_approx"].as_f64().unwrap());
    }

    #[test]
    fn independence_of_f() {
        let r = f_independence_check(Prime::THREE, 5, 500, 8, u128::MAX).unwrap();
        assert!(r.overlap);
        let again = f_independence_check(Prime::THREE, 5, 500, 8, u128::MAX).unwrap();
        assert_eq!(r.canonical, again.canonical);
        assert_eq!(r.mixed, again.mixed);
    }

    #[test]
    fn mixed_surjection_is_surjective() {
        let f = mixed_surjection(Prime::new(5).unwrap(), 5, 3, 1).unwrap();
        assert_eq!(f.rank(), 3);
    }

    #[test]
    fn guard_is_applied() {
        let err = run_moments(Prime::TWO, 8, 10, 1, 0, 1000, false).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }));
    }
}
