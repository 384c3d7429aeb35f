//! Statistical layer: positive-fraction series, the variance-based
//! parameter fit, bootstrap sampling errors, kernel density estimates,
//! and the chi-square goodness-of-fit test.

mod bootstrap;
mod chi2;
mod fit;
mod kde;
pub mod special;

pub use bootstrap::bootstrap_stderr;
pub use chi2::{chi2_gof, GofBin, GofReport};
pub use fit::{fit_free, fit_symmetric, synthetic_series, FitOptions, FitResult, FreeFitResult};
pub use kde::{kde, kde_of_values, model_overlay, model_overlay_raw, trapezoid, DensityCurve};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use chrono::NaiveDate;

use crate::dates::DateInterval;
use crate::model::ModelError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("no return records")]
    EmptyInput,
    #[error("duplicate return for {ticker} on {date}")]
    DuplicateReturn { date: NaiveDate, ticker: String },
    #[error("non-finite return for {ticker} on {date}")]
    BadReturn { date: NaiveDate, ticker: String },
    #[error("duplicate date {date} in series")]
    DuplicateDate { date: NaiveDate },
    #[error("day {date}: k_up = {k_up} exceeds n_day = {n_day}")]
    BadCount {
        date: NaiveDate,
        k_up: u32,
        n_day: u32,
    },
    #[error("window holds {got} days, need at least {need}")]
    WindowTooSparse { got: usize, need: usize },
    #[error("fit failed with sample variance c2 = {c2}: {source}")]
    Inversion {
        c2: f64,
        #[source]
        source: ModelError,
    },
    #[error("bootstrap needs at least 2 resamples, got {n_boot}")]
    TooFewResamples { n_boot: usize },
    #[error("block length {block_len} leaves no resampling variation over {n} observations")]
    BlockTooLong { block_len: usize, n: usize },
    #[error("{failed} of {total} bootstrap resamples failed")]
    BootstrapFailures { failed: usize, total: usize },
    #[error("bootstrap produced a degenerate standard error")]
    DegenerateStderr,
    #[error("empty window")]
    EmptyWindow,
    #[error("fewer than 3 chi-square bins survive expected-count merging")]
    TooFewBins,
}

/// One day of return-sign data: the ticker and its daily simple return.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnRecord {
    pub date: NaiveDate,
    pub ticker: String,
    pub ret: f64,
}

/// One day of co-movement data: `k_up` of `n_day` stocks closed up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DayCount {
    pub date: NaiveDate,
    pub k_up: u32,
    pub n_day: u32,
}

impl DayCount {
    pub fn fraction(&self) -> f64 {
        self.k_up as f64 / self.n_day as f64
    }
}

/// Dated positive-fraction series with strictly increasing dates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComovementSeries {
    entries: Vec<DayCount>,
}

impl ComovementSeries {
    /// Build from per-day counts; entries are sorted by date, duplicate
    /// dates and `k_up > n_day` are rejected.
    pub fn from_entries(mut entries: Vec<DayCount>) -> Result<Self, StatsError> {
        entries.sort_by_key(|e| e.date);
        for pair in entries.windows(2) {
            if pair[0].date == pair[1].date {
                return Err(StatsError::DuplicateDate { date: pair[0].date });
            }
        }
        for e in &entries {
            if e.k_up > e.n_day || e.n_day == 0 {
                return Err(StatsError::BadCount {
                    date: e.date,
                    k_up: e.k_up,
                    n_day: e.n_day,
                });
            }
        }
        Ok(Self { entries })
    }

    /// Build from counts, dropping days with fewer than `min_stocks`
    /// non-zero names; returns the number of dropped days alongside.
    pub fn from_counts(
        entries: Vec<DayCount>,
        min_stocks: u32,
    ) -> Result<(Self, usize), StatsError> {
        let series = Self::from_entries(entries)?;
        Ok(series.filter_min_stocks(min_stocks))
    }

    fn filter_min_stocks(self, min_stocks: u32) -> (Self, usize) {
        let before = self.entries.len();
        let entries: Vec<DayCount> = self
            .entries
            .into_iter()
            .filter(|e| e.n_day >= min_stocks)
            .collect();
        let dropped = before - entries.len();
        (Self { entries }, dropped)
    }

    pub fn entries(&self) -> &[DayCount] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first_date(&self) -> Option<NaiveDate> {
        self.entries.first().map(|e| e.date)
    }

    pub fn last_date(&self) -> Option<NaiveDate> {
        self.entries.last().map(|e| e.date)
    }

    /// Entries with dates inside the half-open window.
    pub fn window_slice(&self, window: DateInterval) -> &[DayCount] {
        let lo = self.entries.partition_point(|e| e.date < window.start());
        let hi = self.entries.partition_point(|e| e.date < window.end());
        &self.entries[lo..hi]
    }

    pub fn fractions_in(&self, window: DateInterval) -> Vec<f64> {
        self.window_slice(window)
            .iter()
            .map(DayCount::fraction)
            .collect()
    }
}

/// Result of building a fraction series from raw returns.
#[derive(Debug, Clone)]
pub struct FractionBuild {
    pub series: ComovementSeries,
    /// Days dropped for having fewer than `min_stocks` non-zero returns.
    pub days_dropped: usize,
    /// Exact-zero returns excluded from both numerator and denominator.
    pub zero_returns_excluded: u64,
}

/// Per-day positive-return fractions from raw return records.
///
/// `k_up` counts returns strictly above zero and `n_day` counts non-zero
/// returns: exact zeros (stale prices) are excluded from both sides. Days
/// retaining fewer than `min_stocks` names are dropped and counted.
pub fn positive_fraction(
    records: &[ReturnRecord],
    min_stocks: u32,
) -> Result<FractionBuild, StatsError> {
    if records.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    let mut keys: Vec<(NaiveDate, &str)> = records
        .iter()
        .map(|r| (r.date, r.ticker.as_str()))
        .collect();
    keys.sort_unstable();
    for pair in keys.windows(2) {
        if pair[0] == pair[1] {
            return Err(StatsError::DuplicateReturn {
                date: pair[0].0,
                ticker: String::from(pair[0].1),
            });
        }
    }

    let mut days: BTreeMap<NaiveDate, (u32, u32)> = BTreeMap::new();
    let mut zeros = 0u64;
    for r in records {
        if !r.ret.is_finite() {
            return Err(StatsError::BadReturn {
                date: r.date,
                ticker: r.ticker.clone(),
            });
        }
        if r.ret == 0.0 {
            zeros += 1;
            continue;
        }
        let day = days.entry(r.date).or_insert((0, 0));
        day.1 += 1;
        if r.ret > 0.0 {
            day.0 += 1;
        }
    }

    let entries: Vec<DayCount> = days
        .into_iter()
        .filter(|&(_, (_, n_day))| n_day > 0)
        .map(|(date, (k_up, n_day))| DayCount { date, k_up, n_day })
        .collect();
    let (series, days_dropped) = ComovementSeries { entries }.filter_min_stocks(min_stocks);
    Ok(FractionBuild {
        series,
        days_dropped,
        zero_returns_excluded: zeros,
    })
}

/// Sample mean and unbiased (`n-1` divisor) variance, one-pass Welford.
pub fn mean_variance(values: &[f64]) -> (f64, f64) {
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, &x) in values.iter().enumerate() {
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
    }
    let var = if values.len() > 1 {
        m2 / (values.len() - 1) as f64
    } else {
        0.0
    };
    (mean, var)
}
