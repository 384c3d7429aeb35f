//! Symmetric tridiagonal eigendecomposition.
//!
//! QL iteration with implicit Wilkinson shifts, accumulating the rotations
//! into the eigenvector matrix. The evolution matrix of the model is
//! nonsymmetric tridiagonal but similar to a symmetric one via a diagonal
//! scaling, so this solver covers the whole spectral layer.

use alloc::vec;
use alloc::vec::Vec;

use libm::hypot;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum EigenError {
    #[error("QL iteration failed to converge for eigenvalue {index}")]
    NoConvergence { index: usize },
}

/// Eigenvalues in ascending order; `vectors[r]` is the orthonormal
/// eigenvector belonging to `values[r]`.
#[derive(Debug, Clone)]
pub struct SymTriEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

const MAX_SWEEPS: usize = 50;

/// Decompose the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off.len() == diag.len() - 1`).
pub fn symmetric_tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<SymTriEigen, EigenError> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n.max(1), "off-diagonal length mismatch");
    if n == 0 {
        return Ok(SymTriEigen {
            values: Vec::new(),
            vectors: Vec::new(),
        });
    }

    let mut d = diag.to_vec();
    let mut e = vec![0.0f64; n];
    e[..n - 1].copy_from_slice(off);

    // Row-major accumulation matrix; column r holds eigenvector r.
    let mut z = vec![0.0f64; n * n];
    for k in 0..n {
        z[k * n + k] = 1.0;
    }

    for l in 0..n {
        let mut sweeps = 0usize;
        'convergence: loop {
            // Smallest m >= l with a negligible coupling e[m].
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(EigenError::NoConvergence { index: l });
            }

            // Wilkinson shift.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + copysign_mag(r, g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;

            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Negligible rotation: deflate and restart this eigenvalue.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    continue 'convergence;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let t = z[k * n + i + 1];
                    z[k * n + i + 1] = s * z[k * n + i] + c * t;
                    z[k * n + i] = c * z[k * n + i] - s * t;
                }
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("eigenvalues are finite"));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&i| (0..n).map(|k| z[k * n + i]).collect())
        .collect();
    Ok(SymTriEigen { values, vectors })
}

/// Magnitude of `a` with the sign of `b` (Fortran SIGN).
fn copysign_mag(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let eig = symmetric_tridiagonal_eigen(&[2.0, 2.0], &[1.0]).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
        for v in &eig.vectors {
            let norm: f64 = v.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn discrete_laplacian_matches_closed_form() {
        // d_i = 2, e_i = -1 has eigenvalues 2 - 2 cos(pi k / (n+1)).
        let n = 40;
        let eig = symmetric_tridiagonal_eigen(&vec![2.0; n], &vec![-1.0; n - 1]).unwrap();
        for (k, &lambda) in eig.values.iter().enumerate() {
            let expected =
                2.0 - 2.0 * libm::cos(core::f64::consts::PI * (k + 1) as f64 / (n + 1) as f64);
            assert!(
                (lambda - expected).abs() < 1e-12,
                "eigenvalue {k}: {lambda} vs {expected}"
            );
        }
    }

    #[test]
    fn residuals_and_orthonormality() {
        use rand::Rng;
        let mut rng = crate::rng::seeded(31);
        let n = 60;
        let diag: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let off: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-1.0..1.0)).collect();
        let eig = symmetric_tridiagonal_eigen(&diag, &off).unwrap();

        for (r, v) in eig.vectors.iter().enumerate() {
            // A v = lambda v
            for i in 0..n {
                let mut av = diag[i] * v[i];
                if i > 0 {
                    av += off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    av += off[i] * v[i + 1];
                }
                assert!(
                    (av - eig.values[r] * v[i]).abs() < 1e-10,
                    "residual too large at ({r}, {i})"
                );
            }
        }
        for a in 0..n {
            for b in a..n {
                let dot: f64 = (0..n).map(|i| eig.vectors[a][i] * eig.vectors[b][i]).sum();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((dot - expected).abs() < 1e-10);
            }
        }
    }
}
