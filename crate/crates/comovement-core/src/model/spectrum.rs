//! Spectrum of the evolution matrix and finite-time transition
//! probabilities.
//!
//! The eigenvalues have the closed form
//! `lambda_r = 1 - (1-p) r (r-1+D+U) / (N (N+D+U-1))`, `r = 0..=N`.
//! Eigenvectors are computed numerically: `T` has positive sub/super
//! diagonals for valid parameters, so a diagonal similarity turns it into
//! a symmetric tridiagonal matrix. The scaling is kept in log space, since
//! its entries track `sqrt(rho(k))` and overflow otherwise at large `N`.

use alloc::vec;
use alloc::vec::Vec;

use libm::{exp, log, pow};

use super::{EvolutionMatrix, ModelError, ModelParams};
use crate::linalg::symmetric_tridiagonal_eigen;

/// Closed-form eigenvalues of `T`, indexed by `r = 0..=N` (descending).
pub fn eigenvalues_analytic(params: &ModelParams) -> Vec<f64> {
    let n = params.n_nodes() as f64;
    let strength = params.strength_sum();
    let scale = (1.0 - params.p()) / (n * (n + strength - 1.0));
    (0..=params.n_nodes())
        .map(|r| {
            let r = r as f64;
            1.0 - scale * r * (r - 1.0 + strength)
        })
        .collect()
}

/// Numeric eigendecomposition of `T` with left and right eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors of the symmetrized matrix, one per
    /// eigenvalue, in eigenvalue order.
    sym_vectors: Vec<Vec<f64>>,
    /// `log d_k` of the similarity scaling: right vectors carry
    /// `exp(+log d)`, left vectors `exp(-log d)`.
    log_scale: Vec<f64>,
}

impl Spectrum {
    pub fn compute(params: &ModelParams) -> Result<Self, ModelError> {
        Self::of_matrix(&EvolutionMatrix::new(params)?)
    }

    /// Decompose an evolution matrix. Requires strictly positive sub- and
    /// super-diagonals (`u, d > 0`), except for the trivial `p = 1` case.
    pub fn of_matrix(matrix: &EvolutionMatrix) -> Result<Self, ModelError> {
        let dim = matrix.dimension();
        if matrix.p() == 1.0 {
            // T is the identity: every state is an eigenvector.
            let sym_vectors = (0..dim)
                .map(|r| {
                    let mut v = vec![0.0; dim];
                    v[r] = 1.0;
                    v
                })
                .collect();
            return Ok(Self {
                eigenvalues: vec![1.0; dim],
                sym_vectors,
                log_scale: vec![0.0; dim],
            });
        }

        let mut log_scale = Vec::with_capacity(dim);
        log_scale.push(0.0);
        let mut sym_off = Vec::with_capacity(dim - 1);
        for m in 0..dim - 1 {
            let up = matrix.t_sub(m);
            let down = matrix.t_super(m);
            if up <= 0.0 || down <= 0.0 {
                return Err(ModelError::ReducibleMatrix {
                    u: matrix.u(),
                    d: matrix.d(),
                });
            }
            sym_off.push(libm::sqrt(up * down));
            let prev = *log_scale.last().expect("non-empty");
            log_scale.push(prev + 0.5 * (log(up) - log(down)));
        }
        let sym_diag: Vec<f64> = (0..dim).map(|m| matrix.t_diag(m)).collect();

        let eig = symmetric_tridiagonal_eigen(&sym_diag, &sym_off)?;
        // Descending order: r = 0 is the stationary eigenvalue 1.
        let mut eigenvalues = eig.values;
        let mut sym_vectors = eig.vectors;
        eigenvalues.reverse();
        sym_vectors.reverse();
        Ok(Self {
            eigenvalues,
            sym_vectors,
            log_scale,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Right eigenvector of the r-th eigenvalue, scaled so that
    /// `left_vector(r) . right_vector(r) = 1`. Entries can overflow for
    /// large `N` at extreme parameters; transition probabilities use the
    /// stable log-space route instead.
    pub fn right_vector(&self, r: usize) -> Vec<f64> {
        self.sym_vectors[r]
            .iter()
            .zip(&self.log_scale)
            .map(|(&v, &ls)| v * exp(ls))
            .collect()
    }

    /// Left eigenvector of the r-th eigenvalue (see [`Self::right_vector`]).
    pub fn left_vector(&self, r: usize) -> Vec<f64> {
        self.sym_vectors[r]
            .iter()
            .zip(&self.log_scale)
            .map(|(&v, &ls)| v * exp(-ls))
            .collect()
    }

    /// Stationary law recovered from the unit eigenvector, normalized to
    /// sum 1.
    pub fn stationary(&self) -> Vec<f64> {
        let mut v = self.right_vector(0);
        let total: f64 = v.iter().sum();
        for x in &mut v {
            *x /= total;
        }
        v
    }

    /// `P(to, t; from, 0)`: spectral sum over `b_{r,from} a_{r,to} lambda_r^t`.
    pub fn transition(&self, from: usize, to: usize, t: u64) -> f64 {
        let scale = exp(self.log_scale[to] - self.log_scale[from]);
        let mut acc = 0.0;
        for (r, lambda) in self.eigenvalues.iter().enumerate() {
            acc += self.sym_vectors[r][to] * self.sym_vectors[r][from] * lambda_pow(*lambda, t);
        }
        acc * scale
    }
}

/// Probability of reaching `to` from `from` after `t` steps.
///
/// Uses the spectral decomposition; if the eigensolver fails to converge,
/// falls back to `t` tridiagonal matrix applications.
pub fn transition_probability(
    params: &ModelParams,
    from: usize,
    to: usize,
    t: u64,
) -> Result<f64, ModelError> {
    let n = params.n_nodes();
    for state in [from, to] {
        if state > n {
            return Err(ModelError::StateOutOfRange { state, n_nodes: n });
        }
    }
    let matrix = EvolutionMatrix::new(params)?;
    match Spectrum::of_matrix(&matrix) {
        Ok(spectrum) => Ok(spectrum.transition(from, to, t)),
        Err(ModelError::Eigen(_)) => Ok(transition_by_iteration(&matrix, from, to, t)),
        Err(other) => Err(other),
    }
}

fn transition_by_iteration(matrix: &EvolutionMatrix, from: usize, to: usize, t: u64) -> f64 {
    let mut v = vec![0.0; matrix.dimension()];
    v[from] = 1.0;
    for _ in 0..t {
        v = matrix.apply(&v);
    }
    v[to]
}

fn lambda_pow(lambda: f64, t: u64) -> f64 {
    if t == 0 || lambda == 1.0 {
        return 1.0;
    }
    if lambda <= 0.0 {
        // The analytic spectrum lies in [p, 1]; tiny negatives are rounding.
        if lambda > -1e-12 {
            return 0.0;
        }
        let mag = pow(-lambda, t as f64);
        return if t % 2 == 0 { mag } else { -mag };
    }
    pow(lambda, t as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::stationary_pmf;

    #[test]
    fn three_state_spectrum_by_hand() {
        // N = 2, U = D = 1, p = 0: lambda = {1, 2/3, 0}.
        let params = ModelParams::new(2, 1.0, 1.0, 0.0).unwrap();
        let analytic = eigenvalues_analytic(&params);
        assert!((analytic[0] - 1.0).abs() < 1e-15);
        assert!((analytic[1] - 2.0 / 3.0).abs() < 1e-15);
        assert!(analytic[2].abs() < 1e-15);

        let spectrum = Spectrum::compute(&params).unwrap();
        for (a, b) in spectrum.eigenvalues().iter().zip(&analytic) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn analytic_spectrum_is_bounded_and_decreasing() {
        let params = ModelParams::new(50, 2.5, 0.7, 0.2).unwrap();
        let lambdas = eigenvalues_analytic(&params);
        assert_eq!(lambdas[0], 1.0);
        for pair in lambdas.windows(2) {
            assert!(pair[0] > pair[1]);
        }
        for &l in &lambdas {
            assert!(l >= params.p() - 1e-12 && l <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn numeric_spectrum_matches_analytic() {
        for (n, u, d, p) in [(5usize, 1.0, 1.0, 0.0), (20, 3.2, 0.4, 0.5), (50, 0.3, 0.3, 0.0)] {
            let params = ModelParams::new(n, u, d, p).unwrap();
            let spectrum = Spectrum::compute(&params).unwrap();
            let analytic = eigenvalues_analytic(&params);
            for (got, want) in spectrum.eigenvalues().iter().zip(&analytic) {
                assert!((got - want).abs() < 1e-9, "N={n}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn unit_left_eigenvector_is_constant() {
        let params = ModelParams::new(30, 2.0, 5.0, 0.1).unwrap();
        let spectrum = Spectrum::compute(&params).unwrap();
        let left = spectrum.left_vector(0);
        let first = left[0];
        for &x in &left {
            assert!((x / first - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn stationary_from_spectrum_matches_pmf() {
        let params = ModelParams::new(60, 1.7, 0.9, 0.0).unwrap();
        let via_spectrum = Spectrum::compute(&params).unwrap().stationary();
        let direct = stationary_pmf(&params);
        for (a, b) in via_spectrum.iter().zip(direct.probs()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_time_is_identity() {
        let params = ModelParams::new(8, 2.0, 2.0, 0.0).unwrap();
        for from in 0..=8 {
            for to in 0..=8 {
                let p = transition_probability(&params, from, to, 0).unwrap();
                let expected = if from == to { 1.0 } else { 0.0 };
                assert!((p - expected).abs() < 1e-10, "P({to}, 0; {from}) = {p}");
            }
        }
    }

    #[test]
    fn long_time_reaches_equilibrium_from_any_state() {
        let params = ModelParams::new(10, 2.0, 2.0, 0.0).unwrap();
        let rho = stationary_pmf(&params);
        let spectrum = Spectrum::compute(&params).unwrap();
        for from in [0usize, 3, 10] {
            for to in 0..=10 {
                let p = spectrum.transition(from, to, 100_000);
                assert!(
                    (p - rho.prob(to)).abs() < 1e-6,
                    "from {from} to {to}: {p} vs {}",
                    rho.prob(to)
                );
            }
        }
    }

    #[test]
    fn transition_rows_are_a_distribution() {
        let params = ModelParams::new(12, 0.8, 1.9, 0.3).unwrap();
        let spectrum = Spectrum::compute(&params).unwrap();
        for from in 0..=12 {
            let total: f64 = (0..=12).map(|to| spectrum.transition(from, to, 17)).sum();
            assert!((total - 1.0).abs() < 1e-10);
        }
    }
}
