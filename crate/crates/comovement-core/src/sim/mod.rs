//! Monte Carlo simulation of the node-copying dynamics.
//!
//! One step selects a variable node at random; with probability `p` it
//! keeps its sign, otherwise it copies a source drawn uniformly from its
//! variable neighbors plus all `U + D` frozen nodes (frozen nodes are
//! neighbors of every variable node regardless of topology). One sweep is
//! `N` steps, so sampling cadences read the same at any system size.
//!
//! Simulation works with integer `U`, `D`; the non-integer continuation
//! belongs to the solved formulas in [`crate::model`].

mod chain;
mod relaxation;

pub use chain::{Chain, EmpiricalDist};
pub use relaxation::{relaxation_estimate, RelaxationEstimate, RelaxationOutcome};

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("sample_sweeps must be at least 1")]
    NoSamples,
    #[error("thin must be at least 1")]
    ZeroThin,
    #[error("lazy probability must be in [0, 1], got {p}")]
    BadLazyProbability { p: f64 },
    #[error("no copy sources: a single variable node needs at least one frozen node")]
    NoCopySources,
    #[error("initial state has {got} signs for {want} nodes")]
    StateSizeMismatch { got: usize, want: usize },
    #[error("histograms cover different node counts ({a} vs {b})")]
    MergeMismatch { a: usize, b: usize },
    #[error("relaxation fit needs more data: {reason}")]
    RelaxationTooShort { reason: String },
}

/// Run configuration for [`run`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    /// Sweeps discarded before sampling starts.
    pub burn_in_sweeps: u64,
    /// Number of samples recorded, one every `thin` sweeps.
    pub sample_sweeps: u64,
    /// Sweeps between consecutive samples.
    pub thin: u64,
    pub seed: u64,
    /// Probability that a selected node keeps its state.
    pub p: f64,
}

impl SimConfig {
    pub fn new(burn_in_sweeps: u64, sample_sweeps: u64, thin: u64, seed: u64) -> Self {
        Self {
            burn_in_sweeps,
            sample_sweeps,
            thin,
            seed,
            p: 0.0,
        }
    }

    pub fn with_lazy(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.sample_sweeps == 0 {
            return Err(SimError::NoSamples);
        }
        if self.thin == 0 {
            return Err(SimError::ZeroThin);
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(SimError::BadLazyProbability { p: self.p });
        }
        Ok(())
    }
}

/// Equilibrium sampling run: burn in, then record the up-count every
/// `thin` sweeps. Deterministic for a given config.
pub fn run(
    topology: &crate::topology::Topology,
    u: u64,
    d: u64,
    config: &SimConfig,
) -> Result<EmpiricalDist, SimError> {
    config.validate()?;
    let mut chain = Chain::new(topology, u, d, config.p, config.seed)?;
    for _ in 0..config.burn_in_sweeps {
        chain.sweep();
    }
    let mut dist = EmpiricalDist::empty(topology.n_nodes());
    for _ in 0..config.sample_sweeps {
        for _ in 0..config.thin {
            chain.sweep();
        }
        dist.record(chain.up_count());
    }
    Ok(dist)
}
