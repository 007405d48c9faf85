//! Order statistics and the Hill tail-exponent estimator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Linearly interpolated sample quantile (the "type 7" rule) of `sorted`.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of an empty sample");
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Count, quartiles and mean of a sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub mean: f64,
}

impl Summary {
    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

/// Summary of the finite values in `values`; `None` if there are none.
pub fn summarize(values: &[f64]) -> Option<Summary> {
    let mut sorted: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    if sorted.is_empty() {
        return None;
    }
    sorted.sort_by(f64::total_cmp);
    Some(Summary {
        count: sorted.len(),
        median: quantile_sorted(&sorted, 0.5),
        q1: quantile_sorted(&sorted, 0.25),
        q3: quantile_sorted(&sorted, 0.75),
        mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
    })
}

pub fn median(values: &[f64]) -> Option<f64> {
    summarize(values).map(|s| s.median)
}

/// Hill estimate with its bootstrap standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    /// Estimated power-law exponent of the probability mass function.
    pub tau_hat: f64,
    pub std_err: f64,
    /// Number of order statistics above the cutoff.
    pub n_top: usize,
    pub cutoff: f64,
}

pub const BOOTSTRAP_RESAMPLES: usize = 200;
pub const MIN_TAIL_SAMPLES: usize = 100;

/// `1 + k / sum_{i<=k} log(x_(i) / x_(k+1))` over the `k` largest values,
/// for `x` sorted in decreasing order. Reorders `values`.
fn hill(values: &mut [f64], k: usize) -> Option<(f64, f64)> {
    let n = values.len();
    values.select_nth_unstable_by(k, |a, b| b.total_cmp(a));
    let cutoff = values[k];
    if cutoff <= 0.0 {
        return None;
    }
    let sum: f64 = values[..k].iter().map(|x| (x / cutoff).ln()).sum();
    debug_assert!(k < n);
    if sum > 0.0 {
        Some((1.0 + k as f64 / sum, cutoff))
    } else {
        None
    }
}

/// Hill estimator of the exponent `tau` on the top `top_fraction` of
/// `samples`, where the tail satisfies `P(X > x) ~ x^{-(tau-1)}`. The
/// standard error comes from resampling the whole sample with replacement.
pub fn fit_tail_exponent(samples: &[f64], top_fraction: f64, seed: u64) -> Result<TailFit> {
    if !(top_fraction > 0.0 && top_fraction < 1.0) {
        return Err(Error::domain(format!("top fraction {top_fraction} outside (0, 1)")));
    }
    let n = samples.len();
    let k = (top_fraction * n as f64).floor() as usize;
    if k < MIN_TAIL_SAMPLES || k >= n {
        return Err(Error::InsufficientData(format!(
            "{k} order statistics above the cutoff (need {MIN_TAIL_SAMPLES}); use a larger graph"
        )));
    }
    let mut work = samples.to_vec();
    let (tau_hat, cutoff) = hill(&mut work, k).ok_or_else(|| {
        Error::InsufficientData("no variation above the tail cutoff".into())
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut boot = Vec::with_capacity(BOOTSTRAP_RESAMPLES);
    for _ in 0..BOOTSTRAP_RESAMPLES {
        for slot in work.iter_mut() {
            *slot = samples[rng.random_range(0..n)];
        }
        if let Some((est, _)) = hill(&mut work, k) {
            boot.push(est);
        }
    }
    let mean = boot.iter().sum::<f64>() / boot.len().max(1) as f64;
    let var = boot.iter().map(|b| (b - mean).powi(2)).sum::<f64>() / (boot.len().max(2) - 1) as f64;
    Ok(TailFit {
        tau_hat,
        std_err: var.sqrt(),
        n_top: k,
        cutoff,
    })
}
