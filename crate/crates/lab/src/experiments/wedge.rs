//! Randomized check of `dim Σ H_i∧H_i >= dim Σ H_i` for 3-spaces `H_i`,
//! with equality exactly when the `H_i` are independent.

use pgmax_core::seed::substream;
use pgmax_core::{Error, Prime, Result, Subspace, WedgeIndex};
use rand::Rng;
use serde_json::{json, Value};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WedgeReport {
    pub trials: u64,
    pub violations: u64,
    pub equality_cases: u64,
    pub strict_cases: u64,
    pub independent_cases: u64,
}

impl WedgeReport {
    pub fn to_json(&self, p: Prime, n: usize, k: usize, seed: u64) -> Value {
        json!({
            "p": p.get(),
            "n": n,
            "k": k,
            "seed": seed,
            "trials": self.trials,
            "violations": self.violations,
            "equality_cases": self.equality_cases,
            "strict_cases": self.strict_cases,
            "independent_cases": self.independent_cases,
        })
    }
}

/// `(dim Σ H_i∧H_i, dim Σ H_i, violation)` for one tuple of 3-spaces.
pub fn wedge_lemma_check(hs: &[Subspace]) -> Result<(usize, usize, bool)> {
    let first = hs.first().ok_or_else(|| Error::InvalidParams("need at least one subspace".into()))?;
    let (p, n) = (first.prime(), first.ambient_dim());
    let w = WedgeIndex::new(n);
    let mut left = Subspace::zero(p, w.len());
    let mut right = Subspace::zero(p, n);
    let mut total = 0;
    for h in hs {
        left = left.sum(&w.wedge_subspace(h)?)?;
        right = right.sum(h)?;
        total += h.dim();
    }
    let (l, r) = (left.dim(), right.dim());
    let independent = r == total;
    Ok((l, r, l < r || (l == r) != independent))
}

fn random_vector<R: Rng>(p: Prime, n: usize, rng: &mut R) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..p.get() as u8)).collect()
}

/// A 3-space spanned by random combinations of `pool`.
fn random_three_space<R: Rng>(p: Prime, n: usize, pool: Option<&[Vec<u8>]>, rng: &mut R) -> Result<Subspace> {
    loop {
        let gens: Vec<Vec<u8>> = (0..3)
            .map(|_| match pool {
                None => random_vector(p, n, rng),
                Some(pool) => {
                    let mut v = vec![0u8; n];
                    for g in pool {
                        let c: u8 = rng.gen_range(0..p.get() as u8);
                        for (x, &y) in v.iter_mut().zip(g) {
                            *x = p.add(*x, p.mul(c, y));
                        }
                    }
                    v
                }
            })
            .collect();
        let h = Subspace::from_generators(p, n, &gens)?;
        if h.dim() == 3 {
            return Ok(h);
        }
    }
}

/// `size` linearly independent random vectors.
fn independent_pool<R: Rng>(p: Prime, n: usize, size: usize, rng: &mut R) -> Result<Vec<Vec<u8>>> {
    loop {
        let pool: Vec<Vec<u8>> = (0..size).map(|_| random_vector(p, n, rng)).collect();
        if Subspace::from_generators(p, n, &pool)?.dim() == size {
            return Ok(pool);
        }
    }
}

/// Samples `trials` tuples of `k` distinct 3-spaces of `F_p^n`. Half the
/// trials draw from a shared pool of `min(n, max(3, 3k-1))` independent vectors so that the
/// dependent branch is exercised.
pub fn wedge_lemma_property(p: Prime, n: usize, k: usize, trials: u64, seed: u64) -> Result<WedgeReport> {
    if n < 3 || k == 0 {
        return Err(Error::InvalidParams("need n >= 3 and k >= 1".into()));
    }
    let pool_size = (3 * k - 1).max(3).min(n);
    let rows = super::par_trials(trials, |t| {
        let mut rng = substream(seed, t);
        let pool = if rng.gen_bool(0.5) { Some(independent_pool(p, n, pool_size, &mut rng)?) } else { None };
        let mut hs: Vec<Subspace> = Vec::with_capacity(k);
        let mut tries = 0;
        while hs.len() < k {
            let h = random_three_space(p, n, pool.as_deref(), &mut rng)?;
            tries += 1;
            if !hs.contains(&h) {
                hs.push(h);
            } else if tries > 10_000 {
                return Err(Error::InvalidParams("could not draw distinct subspaces".into()));
            }
        }
        wedge_lemma_check(&hs)
    })?;
    let mut rep = WedgeReport { trials, ..WedgeReport::default() };
    for (l, r, bad) in rows {
        rep.violations += u64::from(bad);
        if l == r {
            rep.equality_cases += 1;
        } else {
            rep.strict_cases += 1;
        }
        rep.independent_cases += u64::from(r == 3 * k);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pgmax_core::subspace::unit;

    fn span(n: usize, idx: &[usize]) -> Subspace {
        Subspace::from_generators(Prime::TWO, n, &idx.iter().map(|&i| unit(n, i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn independent_pair() {
        assert_eq!(wedge_lemma_check(&[span(6, &[0, 1, 2]), span(6, &[3, 4, 5])]).unwrap(), (6, 6, false));
    }

    #[test]
    fn overlapping_pair() {
        assert_eq!(wedge_lemma_check(&[span(5, &[0, 1, 2]), span(5, &[0, 1, 3])]).unwrap(), (5, 4, false));
    }

    #[test]
    fn single_space() {
        assert_eq!(wedge_lemma_check(&[span(4, &[0, 2, 3])]).unwrap(), (3, 3, false));
    }

    #[test]
    fn random_runs_hit_both_branches() {
        let r = wedge_lemma_property(Prime::TWO, 9, 2, 500, 1).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.equality_cases > 0 && r.strict_cases > 0);
        assert_eq!(r, wedge_lemma_property(Prime::TWO, 9, 2, 500, 1).unwrap());
    }
}
