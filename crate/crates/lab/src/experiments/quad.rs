//! Random search for quadratic maps `F: F_2^n → F_2^{n-2}` with
//! `dim F(H) >= dim H - 1` for every proper subspace `H`.

use pgmax_core::certifier::find_bad_subspace;
use pgmax_core::grassmann::enumerate_subspaces;
use pgmax_core::seed::substream;
use pgmax_core::{Error, Mode, PowerMap, Prime, QuadraticMap, Result, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSearchResult {
    pub n: usize,
    pub attempts: u64,
    pub found: Option<QuadraticMap>,
    /// The certifier also reports no bad subspace for the found map.
    pub recheck_ok: bool,
}

/// First proper subspace with `dim F(H) < dim H - 1`, by direct enumeration.
pub fn violates_quadratic_condition(f: &QuadraticMap, guard: u128) -> Result<Option<Subspace>> {
    let n = f.n();
    for h in 2..n {
        for sub in enumerate_subspaces(Prime::TWO, n, h, guard)? {
            if f.image_span(&sub)?.dim() + 1 < h {
                return Ok(Some(sub));
            }
        }
    }
    Ok(None)
}

/// Samples maps from `substream(seed, a)` for `a = 0, 1, ...` until one
/// satisfies the condition or `max_attempts` is reached.
pub fn quadratic_search(n: usize, max_attempts: u64, seed: u64, guard: u128) -> Result<QuadSearchResult> {
    if n < 2 {
        return Err(Error::InvalidParams("quadratic search needs n >= 2".into()));
    }
    let m = n - 2;
    for a in 0..max_attempts {
        let mut rng = substream(seed, a);
        let f = QuadraticMap::sample(n, m, &mut rng);
        if violates_quadratic_condition(&f, guard)?.is_none() {
            let b = f.associated_b();
            let pm = PowerMap::Quadratic(f.clone());
            let recheck_ok = find_bad_subspace(&b, Some(&pm), Mode::DMax, guard)?.witness.is_none();
            return Ok(QuadSearchResult { n, attempts: a + 1, found: Some(f), recheck_ok });
        }
    }
    Ok(QuadSearchResult { n, attempts: max_attempts, found: None, recheck_ok: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_is_vacuous() {
        let r = quadratic_search(2, 1, 0, u128::MAX).unwrap();
        assert_eq!(r.attempts, 1);
        assert!(r.found.is_some() && r.recheck_ok);
    }

    #[test]
    fn small_cases_succeed_and_recheck() {
        for n in 3..=5 {
            let r = quadratic_search(n, 10_000, 42, u128::MAX).unwrap();
            assert!(r.found.is_some(), "n = {n}");
            assert!(r.recheck_ok);
        }
    }

    #[test]
    fn zero_map_violates() {
        assert!(violates_quadratic_condition(&QuadraticMap::zero(4, 2), u128::MAX).unwrap().is_some());
    }
}
