//! Exact mathematics of the fully connected model.
//!
//! `N` variable nodes plus `U` up-frozen and `D` down-frozen influence
//! nodes. The up-count `k` performs a birth-death chain whose stationary
//! law is beta-binomial with shapes `(U, D)`; `U` and `D` extend to
//! positive reals by analytic continuation of the binomial coefficients.

mod evolution;
mod moments;
mod spectrum;
mod stationary;
mod wright_fisher;

pub use evolution::EvolutionMatrix;
pub use moments::{invert_moments, moments_of, params_from_moments, Moments};
pub use spectrum::{eigenvalues_analytic, transition_probability, Spectrum};
pub use stationary::{stationary_pmf, StationaryDist, StationarySampler};
pub use wright_fisher::{wright_fisher_map, WrightFisherParams};

use crate::linalg::EigenError;
use crate::topology::Topology;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("node count must be at least 1")]
    NoNodes,
    #[error("influence strengths must be positive finite reals, got u = {u}, d = {d}")]
    NonPositiveInfluence { u: f64, d: f64 },
    #[error("influence strengths must be non-negative finite reals, got u = {u}, d = {d}")]
    NegativeInfluence { u: f64, d: f64 },
    #[error("lazy probability must be in [0, 1], got {p}")]
    BadLazyProbability { p: f64 },
    #[error("degenerate evolution matrix: N + D + U = 1 gives a zero denominator")]
    DegenerateDenominator,
    #[error("matrix is reducible (a vanishing off-diagonal); spectrum undefined for u = {u}, d = {d}")]
    ReducibleMatrix { u: f64, d: f64 },
    #[error("state {state} out of range 0..={n_nodes}")]
    StateOutOfRange { state: usize, n_nodes: usize },
    #[error("mean must lie strictly inside (0, 1), got {c1}")]
    BadMean { c1: f64 },
    #[error("variance {c2} at or below the floor {floor} = c1(1-c1)/N; implied external influence exceeds the model range")]
    VarianceTooSmall { c2: f64, floor: f64 },
    #[error("variance {c2} at or above the ceiling {ceiling} = c1(1-c1); exceeds the U, D -> 0 limit")]
    VarianceTooLarge { c2: f64, ceiling: f64 },
    #[error("mutation probabilities must be in [0, 0.5), got mu1 = {mu1}, mu2 = {mu2}")]
    BadMutation { mu1: f64, mu2: f64 },
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

/// Parameters of the fully connected model.
///
/// `u` and `d` are the strengths of the frozen up/down influences; they may
/// be non-integer. `p` is the probability that a selected node keeps its
/// state (it rescales time without changing the stationary law).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n_nodes: usize,
    u: f64,
    d: f64,
    p: f64,
}

impl ModelParams {
    pub fn new(n_nodes: usize, u: f64, d: f64, p: f64) -> Result<Self, ModelError> {
        if n_nodes == 0 {
            return Err(ModelError::NoNodes);
        }
        if !(u > 0.0 && d > 0.0 && u.is_finite() && d.is_finite()) {
            return Err(ModelError::NonPositiveInfluence { u, d });
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(ModelError::BadLazyProbability { p });
        }
        Ok(Self { n_nodes, u, d, p })
    }

    /// Symmetric parameters `U = D` with `p = 0`, the configuration fitted
    /// to market data.
    pub fn symmetric(n_nodes: usize, u_eq_d: f64) -> Result<Self, ModelError> {
        Self::new(n_nodes, u_eq_d, u_eq_d, 0.0)
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Total external strength `a = U + D`.
    pub fn strength_sum(&self) -> f64 {
        self.u + self.d
    }

    /// External bias `xi = U / (U + D)`.
    pub fn bias(&self) -> f64 {
        self.u / (self.u + self.d)
    }
}

/// Effective influence strengths on a partly connected network.
///
/// A sparser graph amplifies the frozen nodes: `(U_ef, D_ef) = (f U, f D)`
/// with `f = (N-1)/k_av`. The full graph returns the inputs unchanged.
/// `Topology` validation guarantees `k_av > 0`.
pub fn effective_params(u: f64, d: f64, topology: &Topology) -> (f64, f64) {
    if topology.is_full() {
        return (u, d);
    }
    let f = topology.rescale_factor();
    (f * u, f * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validate() {
        assert!(ModelParams::new(0, 1.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(10, 0.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(10, 1.0, -2.0, 0.0).is_err());
        assert!(ModelParams::new(10, 1.0, 1.0, 1.5).is_err());
        assert!(ModelParams::new(10, f64::NAN, 1.0, 0.0).is_err());
        let p = ModelParams::new(10, 2.5, 0.5, 0.25).unwrap();
        assert_eq!(p.strength_sum(), 3.0);
        assert!((p.bias() - 2.5 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn effective_params_full_graph_is_identity() {
        let full = Topology::full(100).unwrap();
        assert_eq!(effective_params(1.0, 1.0, &full), (1.0, 1.0));
    }

    #[test]
    fn effective_params_amplify_on_sparse_graphs() {
        // f = (101-1)/20 = 5, so (U, D) = (1, 2) -> (5, 10).
        let t = Topology::regular_random(101, 20, 4).unwrap();
        let (u_ef, d_ef) = effective_params(1.0, 2.0, &t);
        assert_eq!(u_ef, 5.0);
        assert_eq!(d_ef, 10.0);
        assert!(t.rescale_factor() >= 1.0);
    }
}
