//! Chi-square goodness-of-fit of window fractions against the model law.
//!
//! Bins are contiguous up-count ranges of near-equal model probability
//! (20 targeted), merged until every expected count reaches 5. Degrees of
//! freedom are reduced by the number of fitted parameters (one for the
//! symmetric fit).

use alloc::vec;
use alloc::vec::Vec;

use super::special::chi2_sf;
use super::{ComovementSeries, DayCount, StatsError};
use crate::dates::DateInterval;
use crate::model::{stationary_pmf, ModelParams};

const TARGET_BINS: usize = 20;
const MIN_EXPECTED: f64 = 5.0;
const MIN_OCCUPANCY: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct GofBin {
    /// Inclusive up-count range under the reference node count.
    pub k_lo: usize,
    pub k_hi: usize,
    pub observed: u64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GofReport {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub bins: Vec<GofBin>,
    pub n_days: usize,
}

/// Test the window's daily fractions against the stationary law of
/// `params`. `fitted_param_count` is subtracted from the degrees of
/// freedom (1 for the symmetric fit).
pub fn chi2_gof(
    series: &ComovementSeries,
    window: DateInterval,
    params: &ModelParams,
    fitted_param_count: usize,
) -> Result<GofReport, StatsError> {
    let slice = series.window_slice(window);
    let n_days = slice.len();
    if n_days < MIN_OCCUPANCY {
        return Err(StatsError::WindowTooSparse {
            got: n_days,
            need: MIN_OCCUPANCY,
        });
    }

    let dist = stationary_pmf(params);
    let n = params.n_nodes();
    let probs = dist.probs();

    // Equal-model-probability cut points, then expected-count merging.
    let mut edges = cut_points(probs);
    merge_for_expected(&mut edges, probs, n_days as f64);
    if edges.len() < 4 || edges.len() - 1 <= fitted_param_count + 1 {
        return Err(StatsError::TooFewBins);
    }

    // Map each observation to its bin through the reference support.
    let mut bin_of_k = vec![0usize; n + 1];
    for (b, pair) in edges.windows(2).enumerate() {
        for k in pair[0]..pair[1] {
            bin_of_k[k] = b;
        }
    }
    let n_bins = edges.len() - 1;
    let mut observed = vec![0u64; n_bins];
    for day in slice {
        let k = nearest_support(day, n);
        observed[bin_of_k[k]] += 1;
    }

    let mut bins = Vec::with_capacity(n_bins);
    let mut statistic = 0.0;
    for (b, pair) in edges.windows(2).enumerate() {
        let expected: f64 = probs[pair[0]..pair[1]].iter().sum::<f64>() * n_days as f64;
        let delta = observed[b] as f64 - expected;
        statistic += delta * delta / expected;
        bins.push(GofBin {
            k_lo: pair[0],
            k_hi: pair[1] - 1,
            observed: observed[b],
            expected,
        });
    }
    let dof = n_bins - 1 - fitted_param_count;
    let p_value = chi2_sf(statistic, dof);
    Ok(GofReport {
        statistic,
        dof,
        p_value,
        bins,
        n_days,
    })
}

fn nearest_support(day: &DayCount, n: usize) -> usize {
    let k = libm::round(day.fraction() * n as f64) as i64;
    k.clamp(0, n as i64) as usize
}

/// Exclusive bin edges over `0..=n+1`, cutting the cumulative pmf at
/// multiples of `1/TARGET_BINS`.
fn cut_points(probs: &[f64]) -> Vec<usize> {
    let mut edges = vec![0usize];
    let mut cum = 0.0;
    let mut next_quantile = 1.0 / TARGET_BINS as f64;
    for (k, &p) in probs.iter().enumerate() {
        cum += p;
        if cum >= next_quantile - 1e-12 && k + 1 < probs.len() {
            edges.push(k + 1);
            while next_quantile <= cum + 1e-12 {
                next_quantile += 1.0 / TARGET_BINS as f64;
            }
        }
    }
    edges.push(probs.len());
    edges.dedup();
    edges
}

/// Merge the smallest-expected bin into its smaller neighbor until every
/// expected count reaches `MIN_EXPECTED`.
fn merge_for_expected(edges: &mut Vec<usize>, probs: &[f64], n_days: f64) {
    loop {
        let expected: Vec<f64> = edges
            .windows(2)
            .map(|pair| probs[pair[0]..pair[1]].iter().sum::<f64>() * n_days)
            .collect();
        if expected.len() <= 1 {
            return;
        }
        let (worst, &value) = expected
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).expect("expected counts are finite"))
            .expect("at least one bin");
        if value >= MIN_EXPECTED {
            return;
        }
        // Remove the edge shared with the smaller neighbor.
        let remove_edge = if worst == 0 {
            1
        } else if worst == expected.len() - 1 {
            worst
        } else if expected[worst - 1] <= expected[worst + 1] {
            worst
        } else {
            worst + 1
        };
        edges.remove(remove_edge);
    }
}
