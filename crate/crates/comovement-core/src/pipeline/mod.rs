//! End-to-end market pipeline: rolling-window indicator, normalized
//! annual-change signal, warning-window detection, crash-coverage
//! evaluation with permutation significance, and a synthetic market
//! generator for closed-loop testing.

mod detect;
mod events;
mod indicator;
mod signal;
mod synth;

pub use detect::{detect_warnings, DetectorConfig};
pub use events::{
    evaluate_events, permutation_pvalue, CrashAssessment, EventReport, PermutationMode,
    PermutationPlan, PermutationResult, PERMUTATION_CHUNKS,
};
pub use indicator::{rolling_indicator, IndicatorGap, IndicatorResult, StepSize};
pub use signal::{normalized_change, SignalOrder};
pub use synth::{synth_market, ScheduleSegment, SynthMarket};

pub use crate::stats::ReturnRecord;

use alloc::string::String;
use alloc::vec::Vec;

use chrono::NaiveDate;

use crate::dates::DateInterval;
use crate::sim::SimError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PipelineError {
    #[error("series must span more than {need_months} months")]
    SpanTooShort { need_months: u32 },
    #[error("indicator series is empty")]
    EmptyIndicator,
    #[error("indicator dates must be strictly increasing (violated at {date})")]
    UnorderedIndicator { date: NaiveDate },
    #[error("indicator stderr must be positive (violated at {date})")]
    BadStderr { date: NaiveDate },
    #[error("schedule is empty")]
    EmptySchedule,
    #[error("schedule starts must be strictly increasing (violated at {date})")]
    UnorderedSchedule { date: NaiveDate },
    #[error("windows overlap")]
    OverlappingWindows,
    #[error("total window length {total} days exceeds the study period of {period} days")]
    WindowsExceedPeriod { total: i64, period: i64 },
    #[error("permutation test needs at least 10000 trials, got {got}")]
    TooFewTrials { got: u64 },
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// One rolling-fit estimate: the indicator value at `date` is fitted over
/// the 12 calendar months strictly prior to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorPoint {
    pub date: NaiveDate,
    pub u_hat: f64,
    pub stderr: f64,
    pub n_days: usize,
    pub n_ref: usize,
}

/// Dated sequence of rolling-fit estimates with strictly increasing dates.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorSeries {
    points: Vec<IndicatorPoint>,
}

impl IndicatorSeries {
    pub fn from_points(points: Vec<IndicatorPoint>) -> Result<Self, PipelineError> {
        for pair in points.windows(2) {
            if pair[0].date >= pair[1].date {
                return Err(PipelineError::UnorderedIndicator { date: pair[1].date });
            }
        }
        if let Some(bad) = points.iter().find(|p| !(p.stderr > 0.0)) {
            return Err(PipelineError::BadStderr { date: bad.date });
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[IndicatorPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// One point of the crash-warning signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalPoint {
    pub date: NaiveDate,
    /// `U(t) - U(t - 1y)`.
    pub raw_change: f64,
    /// Raw change divided by the sampling error one year earlier.
    pub normalized: f64,
    /// Mean of the normalized change over the year ending at `date`.
    pub smoothed: f64,
}

/// Normalized annual-change signal derived from an indicator series.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SignalSeries {
    points: Vec<SignalPoint>,
}

impl SignalSeries {
    pub fn points(&self) -> &[SignalPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub(crate) fn from_points(points: Vec<SignalPoint>) -> Self {
        Self { points }
    }
}

/// Year-long warning interval opened by the detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WarningWindow {
    /// Trigger date; the window opens here.
    pub start: NaiveDate,
    /// Exclusive end, one `window_len` after the trigger.
    pub end: NaiveDate,
    /// Smoothed signal value at the trigger.
    pub trigger_value: f64,
    /// Whether the smoothed signal was positive within the lookback.
    pub preceded_by_positive: bool,
}

impl WarningWindow {
    pub fn interval(&self) -> DateInterval {
        DateInterval::new(self.start, self.end).expect("windows have positive length")
    }

    pub fn covers(&self, date: NaiveDate) -> bool {
        self.start <= date && date < self.end
    }
}

/// A dated crash to evaluate warnings against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrashEvent {
    pub date: NaiveDate,
    pub label: String,
}
