//! Gaussian kernel density estimates of the daily fraction distribution.
//!
//! Kernels are not reflected at the interval boundary; instead each curve
//! is renormalized by its trapezoid integral over the grid so empirical
//! and model curves integrate to 1 and stay comparable.

use alloc::vec::Vec;

use libm::exp;

use super::{ComovementSeries, DayCount, StatsError};
use crate::dates::DateInterval;
use crate::model::StationaryDist;

/// Density curves on a uniform grid over `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityCurve {
    pub grid: Vec<f64>,
    pub empirical: Vec<f64>,
    pub model: Option<Vec<f64>>,
}

impl DensityCurve {
    pub fn with_model(mut self, model: Vec<f64>) -> Self {
        assert_eq!(model.len(), self.grid.len(), "grid length mismatch");
        self.model = Some(model);
        self
    }
}

/// Kernel density of the window's daily fractions.
pub fn kde(
    series: &ComovementSeries,
    window: DateInterval,
    sigma: f64,
    grid_points: usize,
) -> Result<DensityCurve, StatsError> {
    let slice = series.window_slice(window);
    if slice.is_empty() {
        return Err(StatsError::EmptyWindow);
    }
    let fractions: Vec<f64> = slice.iter().map(DayCount::fraction).collect();
    Ok(kde_of_values(&fractions, sigma, grid_points))
}

/// Kernel density of raw fraction values.
pub fn kde_of_values(values: &[f64], sigma: f64, grid_points: usize) -> DensityCurve {
    let grid = uniform_grid(grid_points);
    let norm = 1.0 / (values.len() as f64 * sigma * SQRT_TAU);
    let mut density: Vec<f64> = grid
        .iter()
        .map(|&x| {
            let mut acc = 0.0;
            for &v in values {
                let z = (x - v) / sigma;
                acc += exp(-0.5 * z * z);
            }
            acc * norm
        })
        .collect();
    renormalize(&grid, &mut density);
    DensityCurve {
        grid,
        empirical: density,
        model: None,
    }
}

/// Exact pmf smoothed with the same Gaussian kernel, for like-for-like
/// overlays on the empirical curve.
pub fn model_overlay(dist: &StationaryDist, sigma: f64, grid_points: usize) -> Vec<f64> {
    let grid = uniform_grid(grid_points);
    let n = dist.n_nodes() as f64;
    let norm = 1.0 / (sigma * SQRT_TAU);
    let mut density: Vec<f64> = grid
        .iter()
        .map(|&x| {
            let mut acc = 0.0;
            for (k, &p) in dist.probs().iter().enumerate() {
                let z = (x - k as f64 / n) / sigma;
                acc += p * exp(-0.5 * z * z);
            }
            acc * norm
        })
        .collect();
    renormalize(&grid, &mut density);
    density
}

/// Unsmoothed alternative: the pmf rescaled to a density by the nearest
/// support point.
pub fn model_overlay_raw(dist: &StationaryDist, grid_points: usize) -> Vec<f64> {
    let grid = uniform_grid(grid_points);
    let n = dist.n_nodes();
    let mut density: Vec<f64> = grid
        .iter()
        .map(|&x| {
            let k = libm::round(x * n as f64) as usize;
            dist.prob(k.min(n)) * (n as f64 + 1.0)
        })
        .collect();
    renormalize(&grid, &mut density);
    density
}

/// Trapezoid integral of `values` over `grid`.
pub fn trapezoid(grid: &[f64], values: &[f64]) -> f64 {
    grid.windows(2)
        .zip(values.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

const SQRT_TAU: f64 = 2.5066282746310002; // sqrt(2 pi)

fn uniform_grid(grid_points: usize) -> Vec<f64> {
    let g = grid_points.max(2);
    (0..g).map(|i| i as f64 / (g - 1) as f64).collect()
}

fn renormalize(grid: &[f64], values: &mut [f64]) {
    let integral = trapezoid(grid, values);
    if integral > 0.0 {
        for v in values.iter_mut() {
            *v /= integral;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{stationary_pmf, ModelParams};

    #[test]
    fn single_observation_is_a_bump_at_the_point() {
        // 513 grid points put 0.5 exactly on the grid.
        let curve = kde_of_values(&[0.5], 0.06, 513);
        let peak_idx = curve
            .empirical
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        assert!((curve.grid[peak_idx] - 0.5).abs() < 0.01);
        // Symmetric around the peak.
        let left = curve.empirical[peak_idx - 50];
        let right = curve.empirical[peak_idx + 50];
        assert!((left / right - 1.0).abs() < 1e-6);
    }

    #[test]
    fn curves_integrate_to_one() {
        let values: Vec<f64> = (0..500).map(|i| (i as f64 + 0.5) / 500.0).collect();
        let curve = kde_of_values(&values, 0.06, 512);
        let integral = trapezoid(&curve.grid, &curve.empirical);
        assert!((integral - 1.0).abs() < 1e-3);

        let dist = stationary_pmf(&ModelParams::symmetric(500, 2.0).unwrap());
        let overlay = model_overlay(&dist, 0.06, 512);
        assert!((trapezoid(&curve.grid, &overlay) - 1.0).abs() < 1e-3);
        let raw = model_overlay_raw(&dist, 512);
        assert!((trapezoid(&curve.grid, &raw) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn uniform_data_gives_a_flat_interior() {
        let values: Vec<f64> = (0..2000).map(|i| (i as f64 + 0.5) / 2000.0).collect();
        let curve = kde_of_values(&values, 0.06, 512);
        let sigma = 0.06;
        let interior: Vec<f64> = curve
            .grid
            .iter()
            .zip(&curve.empirical)
            .filter(|(&x, _)| x >= 3.0 * sigma && x <= 1.0 - 3.0 * sigma)
            .map(|(_, &y)| y)
            .collect();
        let mean = interior.iter().sum::<f64>() / interior.len() as f64;
        for y in &interior {
            assert!((y / mean - 1.0).abs() < 0.05, "{y} vs interior mean {mean}");
        }
    }

    #[test]
    fn critical_model_overlay_is_flat_inside() {
        let dist = stationary_pmf(&ModelParams::symmetric(500, 1.0).unwrap());
        let overlay = model_overlay(&dist, 0.06, 512);
        let grid = uniform_grid(512);
        let interior: Vec<f64> = grid
            .iter()
            .zip(&overlay)
            .filter(|(&x, _)| (0.2..=0.8).contains(&x))
            .map(|(_, &y)| y)
            .collect();
        let mean = interior.iter().sum::<f64>() / interior.len() as f64;
        for y in &interior {
            assert!((y / mean - 1.0).abs() < 0.02);
        }
    }
}
