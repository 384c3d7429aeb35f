//! Stationary distribution of the up-count.
//!
//! The equilibrium probability of finding `k` of the `N` variable nodes up
//! is a ratio of generalized binomial coefficients in `U`, `D`, evaluated
//! through the log-gamma function so that non-integer strengths and node
//! counts in the thousands stay in range. After exponentiation the vector
//! is renormalized once; entries span hundreds of orders of magnitude in
//! log space at extreme parameters.

use alloc::vec::Vec;

use libm::{exp, lgamma};
use rand::Rng;

use super::ModelParams;

/// Equilibrium law of the up-count `k = 0..=N`.
#[derive(Debug, Clone)]
pub struct StationaryDist {
    n_nodes: usize,
    probs: Vec<f64>,
}

/// Exact stationary pmf of the up-count.
///
/// `rho(k)` is proportional to `C(U+k-1, k) * C(N+D-k-1, N-k)`, the
/// beta-binomial law with shapes `(U, D)`. At `U = D = 1` every entry is
/// exactly `1/(N+1)`.
pub fn stationary_pmf(params: &ModelParams) -> StationaryDist {
    let n = params.n_nodes();
    let u = params.u();
    let d = params.d();

    // log rho(k) up to the k-independent normalization:
    //   lgamma(U+k) - lgamma(k+1) + lgamma(D+N-k) - lgamma(N-k+1)
    // Grouped as (positive terms) - (factorial terms) so that U = D gives
    // bitwise-identical values at k and N-k.
    let mut log_weights = Vec::with_capacity(n + 1);
    let mut max_lw = f64::NEG_INFINITY;
    for k in 0..=n {
        let kf = k as f64;
        let nkf = (n - k) as f64;
        let lw = (lgamma(u + kf) + lgamma(d + nkf)) - (lgamma(kf + 1.0) + lgamma(nkf + 1.0));
        if lw > max_lw {
            max_lw = lw;
        }
        log_weights.push(lw);
    }

    let mut probs: Vec<f64> = log_weights.iter().map(|&lw| exp(lw - max_lw)).collect();
    let total: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= total;
    }

    StationaryDist { n_nodes: n, probs }
}

impl StationaryDist {
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Probabilities indexed by `k = 0..=N`.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, k: usize) -> f64 {
        self.probs[k]
    }

    /// Mean of the up-count by direct summation.
    pub fn mean_count(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(k, &p)| k as f64 * p)
            .sum()
    }

    /// Mean of the positive fraction `k/N`.
    pub fn mean_fraction(&self) -> f64 {
        self.mean_count() / self.n_nodes as f64
    }

    /// Variance of the positive fraction `k/N` by direct summation.
    pub fn variance_fraction(&self) -> f64 {
        let mean = self.mean_fraction();
        let n = self.n_nodes as f64;
        self.probs
            .iter()
            .enumerate()
            .map(|(k, &p)| {
                let delta = k as f64 / n - mean;
                delta * delta * p
            })
            .sum()
    }

    /// Total-variation distance to an empirical frequency vector over the
    /// same support.
    pub fn tv_distance(&self, frequencies: &[f64]) -> f64 {
        assert_eq!(frequencies.len(), self.probs.len(), "support mismatch");
        0.5 * self
            .probs
            .iter()
            .zip(frequencies)
            .map(|(&p, &q)| (p - q).abs())
            .sum::<f64>()
    }

    /// Inverse-CDF sampler over the support.
    pub fn sampler(&self) -> StationarySampler {
        let mut cdf = Vec::with_capacity(self.probs.len());
        let mut acc = 0.0f64;
        for &p in &self.probs {
            acc += p;
            cdf.push(acc);
        }
        // Guard the tail against rounding: the last entry must catch u -> 1.
        if let Some(last) = cdf.last_mut() {
            *last = 1.0;
        }
        StationarySampler { cdf }
    }
}

/// Cached inverse-CDF sampler for a [`StationaryDist`].
#[derive(Debug, Clone)]
pub struct StationarySampler {
    cdf: Vec<f64>,
}

impl StationarySampler {
    /// Draw an up-count `k`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        self.cdf.partition_point(|&c| c < u).min(self.cdf.len() - 1)
    }
}
