//! Variance-based parameter fits over a date window.
//!
//! The symmetric fit pins the mean at `c1 = 0.5` (return distributions
//! are empirically symmetric over year windows) and inverts the unbiased
//! sample variance of the daily fractions, leaving `U = D = a/2` as the
//! single fitted parameter. The free fit uses the empirical mean instead
//! and exists to test that symmetry convention.

use alloc::vec::Vec;

use chrono::NaiveDate;

use super::{bootstrap_stderr, mean_variance, ComovementSeries, DayCount, StatsError};
use crate::dates::DateInterval;
use crate::model::invert_moments;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Minimum trading days the window must hold.
    pub min_occupancy: usize,
    /// Bootstrap resamples for the sampling error.
    pub n_boot: usize,
    /// Moving-block length in trading days.
    pub block_len: usize,
    pub seed: u64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            min_occupancy: 200,
            n_boot: 1000,
            block_len: 20,
            seed: 0,
        }
    }
}

/// Symmetric one-parameter fit result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    /// Fitted symmetric influence strength `U = D`.
    pub u_eq_d: f64,
    /// Bootstrap sampling error of `u_eq_d`.
    pub stderr: f64,
    /// Reference node count used in the inversion (window median `n_day`).
    pub n_ref: usize,
    pub window: DateInterval,
    /// Trading days in the window.
    pub n_days: usize,
    /// Unbiased sample variance of the daily fractions.
    pub c2: f64,
}

/// Asymmetric two-parameter fit result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeFitResult {
    pub u: f64,
    pub d: f64,
    pub u_stderr: f64,
    pub d_stderr: f64,
    /// Empirical mean of the fractions (the fitted `xi`).
    pub xi: f64,
    pub a: f64,
    pub n_ref: usize,
    pub window: DateInterval,
    pub n_days: usize,
}

fn window_data(
    series: &ComovementSeries,
    window: DateInterval,
    min_occupancy: usize,
) -> Result<(Vec<f64>, usize), StatsError> {
    let slice = series.window_slice(window);
    if slice.len() < min_occupancy {
        return Err(StatsError::WindowTooSparse {
            got: slice.len(),
            need: min_occupancy,
        });
    }
    let fractions: Vec<f64> = slice.iter().map(DayCount::fraction).collect();
    Ok((fractions, median_n_day(slice)))
}

fn median_n_day(slice: &[DayCount]) -> usize {
    let mut sizes: Vec<u32> = slice.iter().map(|e| e.n_day).collect();
    sizes.sort_unstable();
    sizes[(sizes.len() - 1) / 2] as usize
}

fn symmetric_u(fractions: &[f64], n_ref: usize) -> Result<f64, StatsError> {
    let (_, c2) = mean_variance(fractions);
    let (_, a) = invert_moments(0.5, c2, n_ref).map_err(|source| StatsError::Inversion {
        c2,
        source,
    })?;
    Ok(a / 2.0)
}

/// Fit `U = D` to the trailing-window fractions via the variance
/// inversion, with a moving-block bootstrap sampling error.
pub fn fit_symmetric(
    series: &ComovementSeries,
    window: DateInterval,
    opts: &FitOptions,
) -> Result<FitResult, StatsError> {
    let (fractions, n_ref) = window_data(series, window, opts.min_occupancy)?;
    let (_, c2) = mean_variance(&fractions);
    let u_eq_d = symmetric_u(&fractions, n_ref)?;
    let stderr = bootstrap_stderr(&fractions, opts.block_len, opts.n_boot, opts.seed, |res| {
        symmetric_u(res, n_ref).ok()
    })?;
    Ok(FitResult {
        u_eq_d,
        stderr,
        n_ref,
        window,
        n_days: fractions.len(),
        c2,
    })
}

/// Two-parameter fit using the empirical mean for `c1`.
pub fn fit_free(
    series: &ComovementSeries,
    window: DateInterval,
    opts: &FitOptions,
) -> Result<FreeFitResult, StatsError> {
    let (fractions, n_ref) = window_data(series, window, opts.min_occupancy)?;
    let free = |values: &[f64]| -> Result<(f64, f64), StatsError> {
        let (c1, c2) = mean_variance(values);
        let (xi, a) = invert_moments(c1, c2, n_ref).map_err(|source| StatsError::Inversion {
            c2,
            source,
        })?;
        Ok((xi * a, (1.0 - xi) * a))
    };
    let (u, d) = free(&fractions)?;
    let (c1, _) = mean_variance(&fractions);
    // Same seed on both passes: identical resamples, per-component spread.
    let u_stderr = bootstrap_stderr(&fractions, opts.block_len, opts.n_boot, opts.seed, |res| {
        free(res).map(|(u, _)| u).ok()
    })?;
    let d_stderr = bootstrap_stderr(&fractions, opts.block_len, opts.n_boot, opts.seed, |res| {
        free(res).map(|(_, d)| d).ok()
    })?;
    Ok(FreeFitResult {
        u,
        d,
        u_stderr,
        d_stderr,
        xi: c1,
        a: u + d,
        n_ref,
        window,
        n_days: fractions.len(),
    })
}

/// Synthetic fraction series: `n_days` consecutive weekdays starting at
/// `start`, with up-counts drawn i.i.d. from the stationary law.
pub fn synthetic_series(
    dist: &crate::model::StationaryDist,
    start: NaiveDate,
    n_days: usize,
    seed: u64,
) -> ComovementSeries {
    let sampler = dist.sampler();
    let mut rng = crate::rng::seeded(seed);
    let n = dist.n_nodes() as u32;
    let mut entries = Vec::with_capacity(n_days);
    let mut date = start;
    while entries.len() < n_days {
        if is_weekday(date) {
            entries.push(DayCount {
                date,
                k_up: sampler.sample(&mut rng) as u32,
                n_day: n,
            });
        }
        date = date.succ_opt().expect("date within calendar range");
    }
    ComovementSeries::from_entries(entries).expect("construction preserves ordering")
}

pub(crate) fn is_weekday(date: NaiveDate) -> bool {
    use chrono::Datelike;
    !matches!(date.weekday(), chrono::Weekday::Sat | chrono::Weekday::Sun)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{stationary_pmf, ModelParams};

    fn d(s: &str) -> NaiveDate {
        s.parse().unwrap()
    }

    fn opts(seed: u64) -> FitOptions {
        FitOptions {
            min_occupancy: 200,
            n_boot: 400,
            block_len: 20,
            seed,
        }
    }

    #[test]
    fn recovers_known_symmetric_parameter() {
        let params = ModelParams::symmetric(1000, 5.79).unwrap();
        let dist = stationary_pmf(&params);
        let series = synthetic_series(&dist, d("2000-01-03"), 252, 42);
        let window = DateInterval::new(d("2000-01-01"), d("2001-02-01")).unwrap();
        let fit = fit_symmetric(&series, window, &opts(1)).unwrap();
        assert!(
            (fit.u_eq_d - 5.79).abs() < 3.0 * fit.stderr,
            "u = {} +- {}",
            fit.u_eq_d,
            fit.stderr
        );
        assert_eq!(fit.n_ref, 1000);
        assert_eq!(fit.n_days, 252);
    }

    #[test]
    fn constant_fractions_fail_with_variance_too_small() {
        let entries: Vec<DayCount> = (0..300)
            .map(|i| DayCount {
                date: d("2000-01-01") + chrono::Days::new(i),
                k_up: 250,
                n_day: 500,
            })
            .collect();
        let series = ComovementSeries::from_entries(entries).unwrap();
        let window = DateInterval::new(d("2000-01-01"), d("2001-01-01")).unwrap();
        let err = fit_symmetric(&series, window, &opts(0)).unwrap_err();
        assert!(matches!(
            err,
            StatsError::Inversion {
                source: crate::model::ModelError::VarianceTooSmall { .. },
                ..
            }
        ));
    }

    #[test]
    fn uniform_fractions_fit_near_the_critical_point() {
        // k uniform on 0..=N is the U = D = 1 stationary law.
        let params = ModelParams::symmetric(500, 1.0).unwrap();
        let dist = stationary_pmf(&params);
        let series = synthetic_series(&dist, d("2000-01-03"), 5000, 7);
        let window = DateInterval::new(d("1999-12-01"), d("2030-01-01")).unwrap();
        let fit = fit_symmetric(&series, window, &opts(2)).unwrap();
        assert!(
            (fit.u_eq_d - 1.0).abs() < 0.05,
            "u = {} after 5000 days",
            fit.u_eq_d
        );
    }

    #[test]
    fn free_fit_recovers_asymmetric_bias() {
        let params = ModelParams::new(1000, 6.0, 2.0, 0.0).unwrap();
        let dist = stationary_pmf(&params);
        let series = synthetic_series(&dist, d("2000-01-03"), 1000, 3);
        let window = DateInterval::new(d("1999-12-01"), d("2005-01-01")).unwrap();
        let fit = fit_free(&series, window, &opts(3)).unwrap();
        assert!((fit.xi - 0.75).abs() < 0.03, "xi = {}", fit.xi);
        assert!((fit.u - 6.0).abs() < 3.0 * fit.u_stderr.max(0.5));
        assert!((fit.d - 2.0).abs() < 3.0 * fit.d_stderr.max(0.2));
    }

    #[test]
    fn free_and_symmetric_agree_on_symmetric_truth() {
        let params = ModelParams::symmetric(1000, 2.21).unwrap();
        let dist = stationary_pmf(&params);
        let series = synthetic_series(&dist, d("2000-01-03"), 1000, 9);
        let window = DateInterval::new(d("1999-12-01"), d("2005-01-01")).unwrap();
        let sym = fit_symmetric(&series, window, &opts(4)).unwrap();
        let free = fit_free(&series, window, &opts(4)).unwrap();
        let a_sym = 2.0 * sym.u_eq_d;
        let spread = 2.0 * (sym.stderr * 2.0);
        assert!(
            (free.a - a_sym).abs() < 2.0 * spread,
            "a: free {} vs symmetric {a_sym}",
            free.a
        );
    }

    #[test]
    fn fit_is_invariant_to_day_order() {
        // The estimator is exchangeable; shuffling dates relabels days.
        let params = ModelParams::symmetric(800, 3.0).unwrap();
        let dist = stationary_pmf(&params);
        let series = synthetic_series(&dist, d("2000-01-03"), 300, 11);
        let mut reversed: Vec<DayCount> = series.entries().to_vec();
        let dates: Vec<NaiveDate> = reversed.iter().map(|e| e.date).collect();
        reversed.reverse();
        for (entry, date) in reversed.iter_mut().zip(&dates) {
            entry.date = *date;
        }
        let shuffled = ComovementSeries::from_entries(reversed).unwrap();
        let window = DateInterval::new(d("1999-12-01"), d("2005-01-01")).unwrap();
        let a = fit_symmetric(&series, window, &opts(5)).unwrap();
        let b = fit_symmetric(&shuffled, window, &opts(5)).unwrap();
        assert!((a.u_eq_d - b.u_eq_d).abs() < 1e-12);
    }

    #[test]
    fn sparse_window_is_rejected() {
        let params = ModelParams::symmetric(500, 2.0).unwrap();
        let series = synthetic_series(&stationary_pmf(&params), d("2000-01-03"), 100, 1);
        let window = DateInterval::new(d("1999-12-01"), d("2005-01-01")).unwrap();
        assert!(matches!(
            fit_symmetric(&series, window, &opts(0)),
            Err(StatsError::WindowTooSparse { got: 100, need: 200 })
        ));
    }
}
