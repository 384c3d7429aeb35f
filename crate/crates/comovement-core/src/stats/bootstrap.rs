//! Moving-block bootstrap for sampling errors of window statistics.
//!
//! Daily fractions are autocorrelated, so resampling keeps contiguous
//! blocks of `block_len` trading days. Every resample derives its own
//! generator from `(seed, resample index)`, making results independent of
//! evaluation order.

use alloc::vec::Vec;

use rand::Rng;

use super::{mean_variance, StatsError};
use crate::rng;

/// Standard deviation of `estimator` across moving-block resamples.
///
/// The estimator may reject a resample (return `None`, e.g. an inversion
/// out of range); the stderr is taken over the successes as long as at
/// most 10% fail.
pub fn bootstrap_stderr<F>(
    values: &[f64],
    block_len: usize,
    n_boot: usize,
    seed: u64,
    estimator: F,
) -> Result<f64, StatsError>
where
    F: Fn(&[f64]) -> Option<f64>,
{
    let n = values.len();
    if n_boot < 2 {
        return Err(StatsError::TooFewResamples { n_boot });
    }
    if block_len == 0 || n < 2 * block_len {
        return Err(StatsError::BlockTooLong {
            block_len,
            n,
        });
    }

    let n_blocks = n.div_ceil(block_len);
    let max_start = n - block_len;
    let mut estimates = Vec::with_capacity(n_boot);
    let mut failed = 0usize;
    let mut resample = Vec::with_capacity(n_blocks * block_len);
    for r in 0..n_boot {
        let mut rng = rng::seeded(rng::derive_seed(seed, r as u64));
        resample.clear();
        for _ in 0..n_blocks {
            let start = rng.random_range(0..=max_start);
            resample.extend_from_slice(&values[start..start + block_len]);
        }
        resample.truncate(n);
        match estimator(&resample) {
            Some(est) => estimates.push(est),
            None => failed += 1,
        }
    }

    if failed * 10 > n_boot || estimates.len() < 2 {
        return Err(StatsError::BootstrapFailures {
            failed,
            total: n_boot,
        });
    }
    let (_, var) = mean_variance(&estimates);
    let stderr = libm::sqrt(var);
    if stderr <= 0.0 {
        return Err(StatsError::DegenerateStderr);
    }
    Ok(stderr)
}
