//! Moments of the positive fraction and their inversion.
//!
//! The mean and variance of `k/N` have closed forms in `xi = U/(U+D)` and
//! `a = U + D`, and the pair can be inverted: this is the whole fitting
//! machinery of the market indicator.

use super::{ModelError, ModelParams};

/// Mean and variance of the positive fraction, with the natural
/// parameters they encode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    /// Mean of `k/N`; equals `xi`.
    pub c1: f64,
    /// Variance of `k/N`.
    pub c2: f64,
    /// External bias `U/(U+D)`.
    pub xi: f64,
    /// Total external strength `U + D`.
    pub a: f64,
}

/// Closed-form moments of the stationary positive fraction.
pub fn moments_of(params: &ModelParams) -> Moments {
    let n = params.n_nodes() as f64;
    let xi = params.bias();
    let a = params.strength_sum();
    let c2 = xi * (1.0 - xi) * (1.0 + a / n) / (a + 1.0);
    Moments { c1: xi, c2, xi, a }
}

/// Invert `(c1, c2)` to `(xi, a)` for a given node count.
///
/// The variance must lie strictly between `c1(1-c1)/N` (the `a -> inf`
/// floor) and `c1(1-c1)` (the `U, D -> 0` ceiling), otherwise no positive
/// `a` reproduces it.
pub fn invert_moments(c1: f64, c2: f64, n_nodes: usize) -> Result<(f64, f64), ModelError> {
    if !(c1 > 0.0 && c1 < 1.0) || !c1.is_finite() {
        return Err(ModelError::BadMean { c1 });
    }
    let ceiling = c1 * (1.0 - c1);
    let floor = ceiling / n_nodes as f64;
    if !(c2 > floor) {
        return Err(ModelError::VarianceTooSmall { c2, floor });
    }
    if !(c2 < ceiling) {
        return Err(ModelError::VarianceTooLarge { c2, ceiling });
    }
    let a = (ceiling - c2) / (c2 - floor);
    Ok((c1, a))
}

/// Inversion straight to model parameters: `U = xi a`, `D = (1 - xi) a`.
pub fn params_from_moments(
    c1: f64,
    c2: f64,
    n_nodes: usize,
    p: f64,
) -> Result<ModelParams, ModelError> {
    let (xi, a) = invert_moments(c1, c2, n_nodes)?;
    ModelParams::new(n_nodes, xi * a, (1.0 - xi) * a, p)
}
