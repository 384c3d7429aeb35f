//! Mapping to the Wright–Fisher–Moran model with two alleles and mutation.
//!
//! The up-count chain is the allele-count chain of a haploid Moran
//! population once the mutation probabilities are translated into frozen
//! influence strengths.

use super::ModelError;

/// Two-allele Moran model with mutation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightFisherParams {
    mu1: f64,
    mu2: f64,
    n_pop: usize,
}

impl WrightFisherParams {
    /// `mu1`: mutation probability A1 -> A2; `mu2`: A2 -> A1. Both must be
    /// in `[0, 1/2)`.
    pub fn new(mu1: f64, mu2: f64, n_pop: usize) -> Result<Self, ModelError> {
        if n_pop == 0 {
            return Err(ModelError::NoNodes);
        }
        let in_range = |m: f64| (0.0..0.5).contains(&m);
        if !in_range(mu1) || !in_range(mu2) || mu1 + mu2 >= 1.0 {
            return Err(ModelError::BadMutation { mu1, mu2 });
        }
        Ok(Self { mu1, mu2, n_pop })
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }

    pub fn mu2(&self) -> f64 {
        self.mu2
    }

    pub fn n_pop(&self) -> usize {
        self.n_pop
    }
}

/// Influence strengths reproducing the Moran equilibrium:
/// `U = 2 mu2 (N-1) / (1 - mu1 - mu2)`, `D = 2 mu1 (N-1) / (1 - mu1 - mu2)`.
///
/// The stationary pmf at these values is the equilibrium distribution of
/// the number of `A1` alleles. Zero mutation maps to the absorbing
/// `U = D = 0` limit.
pub fn wright_fisher_map(wf: &WrightFisherParams) -> (f64, f64) {
    let n_minus_1 = (wf.n_pop - 1) as f64;
    let denom = 1.0 - wf.mu1 - wf.mu2;
    let u = 2.0 * wf.mu2 * n_minus_1 / denom;
    let d = 2.0 * wf.mu1 * n_minus_1 / denom;
    (u, d)
}
