//! Relaxation-rate estimation from the up-count autocorrelation.
//!
//! The slowest mode of the full-graph chain decays per step at
//! `1 - lambda_1 = (1-p)(D+U) / (N (N+D+U-1))`, so the fitted decay rate
//! of the autocovariance checks the simulator against the spectrum.

use alloc::string::ToString;
use alloc::vec::Vec;

use libm::{fabs, log, sqrt};

use super::chain::Chain;
use super::{SimConfig, SimError};
use crate::topology::Topology;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationEstimate {
    /// Fitted exponential decay rate per node-update step.
    pub rate_per_step: f64,
    /// Relative standard error of the fitted rate.
    pub rel_stderr: f64,
    /// False when the fit is too unstable (relative stderr above 25%).
    pub reliable: bool,
    /// Number of sweep lags entering the fit.
    pub lags_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelaxationOutcome {
    Decaying(RelaxationEstimate),
    /// Autocorrelation does not decay (`p = 1`, or an absorbed chain).
    NonDecaying,
}

/// Estimate the autocovariance decay rate of the up-count.
///
/// Records one sample per sweep for `config.sample_sweeps` sweeps after
/// burn-in, then fits a log-linear decay over the sweep lags where the
/// autocovariance stays above 15% of the variance. Defined on the fully
/// connected topology, where the analytic rate is available.
pub fn relaxation_estimate(
    topology: &Topology,
    u: u64,
    d: u64,
    p: f64,
    config: &SimConfig,
) -> Result<RelaxationOutcome, SimError> {
    if !topology.is_full() {
        return Err(SimError::RelaxationTooShort {
            reason: "analytic comparison is defined on the fully connected topology".to_string(),
        });
    }
    config.validate()?;
    let mut chain = Chain::new(topology, u, d, p, config.seed)?;
    for _ in 0..config.burn_in_sweeps {
        chain.sweep();
    }
    let n_samples = config.sample_sweeps as usize;
    let mut series = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        chain.sweep();
        series.push(chain.up_count() as f64);
    }

    let mean = series.iter().sum::<f64>() / n_samples as f64;
    let max_lag = (n_samples / 10).min(500);
    if max_lag < 2 {
        return Err(SimError::RelaxationTooShort {
            reason: "need at least 20 recorded sweeps".to_string(),
        });
    }

    let autocov = |lag: usize| -> f64 {
        let m = n_samples - lag;
        let mut acc = 0.0;
        for t in 0..m {
            acc += (series[t] - mean) * (series[t + lag] - mean);
        }
        acc / m as f64
    };

    let c0 = autocov(0);
    if c0 <= 1e-9 * (mean * mean + 1.0) {
        return Ok(RelaxationOutcome::NonDecaying);
    }

    // Log-linear fit over the clean part of the decay.
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for lag in 0..=max_lag {
        let c = autocov(lag);
        if c <= 0.15 * c0 && xs.len() >= 3 {
            break;
        }
        if c <= 0.0 {
            break;
        }
        xs.push(lag as f64);
        ys.push(log(c));
    }
    if xs.len() < 3 {
        return Err(SimError::RelaxationTooShort {
            reason: "fewer than 3 usable autocovariance lags".to_string(),
        });
    }

    let m = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean) * (x - x_mean)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum();
    let slope = sxy / sxx;
    if slope >= 0.0 {
        return Ok(RelaxationOutcome::NonDecaying);
    }
    let residual_ss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let fitted = y_mean + slope * (x - x_mean);
            (y - fitted) * (y - fitted)
        })
        .sum();
    let slope_stderr = sqrt(residual_ss / (m - 2.0).max(1.0) / sxx);
    let rel_stderr = fabs(slope_stderr / slope);

    // Lag unit is one sweep of N steps.
    let rate_per_step = -slope / topology.n_nodes() as f64;
    Ok(RelaxationOutcome::Decaying(RelaxationEstimate {
        rate_per_step,
        rel_stderr,
        reliable: rel_stderr <= 0.25,
        lags_used: xs.len(),
    }))
}
