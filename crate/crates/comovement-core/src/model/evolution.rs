//! Tridiagonal time-evolution matrix of the up-count chain.
//!
//! `P_{t+1} = T P_t` with `T = I - (1-p) / (N (N+D+U-1)) * A`. The
//! auxiliary matrix `A` is independent of `p`. Columns index the
//! from-state, so `T` is column-stochastic.

use alloc::vec::Vec;

use super::{ModelError, ModelParams};

#[derive(Debug, Clone)]
pub struct EvolutionMatrix {
    n_nodes: usize,
    u: f64,
    d: f64,
    p: f64,
    /// `(1-p) / (N (N+D+U-1))`.
    scale: f64,
    a_diag: Vec<f64>,
    /// `a_super[m] = A[m][m+1]`, length `N`.
    a_super: Vec<f64>,
    /// `a_sub[m] = A[m+1][m]`, length `N`.
    a_sub: Vec<f64>,
}

impl EvolutionMatrix {
    /// Build from validated parameters.
    pub fn new(params: &ModelParams) -> Result<Self, ModelError> {
        Self::from_raw(params.n_nodes(), params.u(), params.d(), params.p())
    }

    /// Build from raw values; unlike [`ModelParams`], `u` and `d` may be
    /// zero here (the absorbing case), but `N + D + U = 1` is rejected as
    /// a zero denominator.
    pub fn from_raw(n_nodes: usize, u: f64, d: f64, p: f64) -> Result<Self, ModelError> {
        if n_nodes == 0 {
            return Err(ModelError::NoNodes);
        }
        if !(u >= 0.0 && d >= 0.0 && u.is_finite() && d.is_finite()) {
            return Err(ModelError::NegativeInfluence { u, d });
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(ModelError::BadLazyProbability { p });
        }
        let n = n_nodes as f64;
        let denom = n * (n + d + u - 1.0);
        if denom == 0.0 {
            return Err(ModelError::DegenerateDenominator);
        }
        let scale = (1.0 - p) / denom;

        let mut a_diag = Vec::with_capacity(n_nodes + 1);
        let mut a_super = Vec::with_capacity(n_nodes);
        let mut a_sub = Vec::with_capacity(n_nodes);
        for k in 0..=n_nodes {
            let m = k as f64;
            a_diag.push(2.0 * m * (n - m) + u * (n - m) + d * m);
            if k < n_nodes {
                a_super.push(-(m + 1.0) * (n + d - m - 1.0));
                a_sub.push(-(n - m) * (u + m));
            }
        }
        Ok(Self {
            n_nodes,
            u,
            d,
            p,
            scale,
            a_diag,
            a_super,
            a_sub,
        })
    }

    /// Matrix dimension `N + 1`.
    pub fn dimension(&self) -> usize {
        self.n_nodes + 1
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

    pub fn a_diag(&self) -> &[f64] {
        &self.a_diag
    }

    pub fn a_super(&self) -> &[f64] {
        &self.a_super
    }

    pub fn a_sub(&self) -> &[f64] {
        &self.a_sub
    }

    pub fn t_diag(&self, m: usize) -> f64 {
        1.0 - self.scale * self.a_diag[m]
    }

    /// `T[m][m+1]`: probability of the `m+1 -> m` transition.
    pub fn t_super(&self, m: usize) -> f64 {
        -self.scale * self.a_super[m]
    }

    /// `T[m+1][m]`: probability of the `m -> m+1` transition.
    pub fn t_sub(&self, m: usize) -> f64 {
        -self.scale * self.a_sub[m]
    }

    /// One evolution step: `T v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let dim = self.dimension();
        assert_eq!(v.len(), dim, "vector length mismatch");
        let mut out = Vec::with_capacity(dim);
        for m in 0..dim {
            let mut w = self.t_diag(m) * v[m];
            if m + 1 < dim {
                w += self.t_super(m) * v[m + 1];
            }
            if m > 0 {
                w += self.t_sub(m - 1) * v[m - 1];
            }
            out.push(w);
        }
        out
    }

    /// Column sums; 1 for every column of a stochastic matrix.
    pub fn column_sums(&self) -> Vec<f64> {
        let dim = self.dimension();
        (0..dim)
            .map(|m| {
                let mut s = self.t_diag(m);
                if m > 0 {
                    s += self.t_super(m - 1);
                }
                if m < dim - 1 {
                    s += self.t_sub(m);
                }
                s
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::stationary_pmf;

    #[test]
    fn hand_checked_elements_and_column_sums() {
        // N = 2, U = D = 1, p = 0: A[1][1] = 2*1*1 + 1*1 + 1*1 = 4.
        let t = EvolutionMatrix::from_raw(2, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(t.a_diag()[1], 4.0);
        for s in t.column_sums() {
            assert!((s - 1.0).abs() < 1e-12);
        }
        for m in 0..2 {
            assert!(t.t_super(m) >= 0.0);
            assert!(t.t_sub(m) >= 0.0);
        }
    }

    #[test]
    fn frozen_dynamics_is_identity() {
        let t = EvolutionMatrix::from_raw(7, 2.0, 3.5, 1.0).unwrap();
        for m in 0..=7 {
            assert_eq!(t.t_diag(m), 1.0);
        }
        for m in 0..7 {
            assert_eq!(t.t_super(m), 0.0);
            assert_eq!(t.t_sub(m), 0.0);
        }
    }

    #[test]
    fn stationary_distribution_is_a_fixed_point() {
        let params = ModelParams::new(40, 2.5, 0.8, 0.3).unwrap();
        let t = EvolutionMatrix::new(&params).unwrap();
        let rho = stationary_pmf(&params);
        let next = t.apply(rho.probs());
        for (a, b) in next.iter().zip(rho.probs()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn degenerate_denominator_is_rejected() {
        assert!(matches!(
            EvolutionMatrix::from_raw(1, 0.0, 0.0, 0.0),
            Err(ModelError::DegenerateDenominator)
        ));
    }

    #[test]
    fn absorbing_limit_allows_zero_strengths() {
        let t = EvolutionMatrix::from_raw(5, 0.0, 0.0, 0.0).unwrap();
        // Nothing leaves consensus: columns 0 and N are point masses.
        assert_eq!(t.t_sub(0), 0.0);
        assert_eq!(t.t_diag(0), 1.0);
        assert_eq!(t.t_super(4), 0.0);
        assert_eq!(t.t_diag(5), 1.0);
    }
}
