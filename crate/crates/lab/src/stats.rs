//! Confidence intervals and goodness-of-fit helpers.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.576;

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSummary {
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Sample mean with a normal-approximation interval `mean ± z·s/√n`.
pub fn mean_ci(values: &[f64], z: f64) -> Option<MeanSummary> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let variance = if values.len() > 1 {
        values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let half = z * (variance / n).sqrt();
    Some(MeanSummary { mean, variance, lo: mean - half, hi: mean + half })
}

/// Empirical `E[(N)_k]` for `k = 1..=k_max`.
pub fn factorial_moments(values: &[u64], k_max: u32) -> Vec<f64> {
    let n = values.len().max(1) as f64;
    (1..=k_max)
        .map(|k| {
            values
                .iter()
                .map(|&x| (0..k as u64).map(|i| x as f64 - i as f64).product::<f64>())
                .sum::<f64>()
                / n
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson goodness of fit of `observed` counts against `probs`.
///
/// Adjacent cells are pooled from the left until each expected count is at
/// least 5; a trailing remainder joins the last pooled cell.
pub fn chi_square(observed: &[u64], probs: &[f64]) -> Option<ChiSquare> {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    if total == 0 {
        return None;
    }
    let t = total as f64;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut o, mut e) = (0.0, 0.0);
    for (&obs, &pr) in observed.iter().zip(probs) {
        o += obs as f64;
        e += pr * t;
        if e >= 5.0 {
            cells.push((o, e));
            o = 0.0;
            e = 0.0;
        }
    }
    if e > 0.0 || o > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += o;
                last.1 += e;
            }
            None => cells.push((o, e)),
        }
    }
    if cells.len() < 2 {
        return None;
    }
    let statistic = cells.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let dof = cells.len() - 1;
    let dist = ChiSquared::new(dof as f64).ok()?;
    Some(ChiSquare { statistic, dof, p_value: 1.0 - dist.cdf(statistic) })
}
