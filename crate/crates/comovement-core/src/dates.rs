//! Calendar intervals used by windows, indicators, and event evaluation.
//!
//! All intervals are half-open `[start, end)`: windows compose without
//! double counting and a window ending on a date does not cover it.

use chrono::{Months, NaiveDate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("interval start {start} is not before end {end}")]
pub struct InvalidInterval {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

/// Half-open date interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DateInterval {
    start: NaiveDate,
    end: NaiveDate,
}

impl DateInterval {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Result<Self, InvalidInterval> {
        if start < end {
            Ok(Self { start, end })
        } else {
            Err(InvalidInterval { start, end })
        }
    }

    /// The 12 calendar months strictly before `end`.
    pub fn year_ending_at(end: NaiveDate) -> Self {
        Self {
            start: months_before(end, 12),
            end,
        }
    }

    pub fn start(&self) -> NaiveDate {
        self.start
    }

    pub fn end(&self) -> NaiveDate {
        self.end
    }

    pub fn contains(&self, date: NaiveDate) -> bool {
        self.start <= date && date < self.end
    }

    /// Length in calendar days.
    pub fn num_days(&self) -> i64 {
        (self.end - self.start).num_days()
    }

    pub fn intersects(&self, other: &DateInterval) -> bool {
        self.start < other.end && other.start < self.end
    }
}

pub fn months_before(date: NaiveDate, months: u32) -> NaiveDate {
    date.checked_sub_months(Months::new(months))
        .expect("date arithmetic within calendar range")
}

pub fn months_after(date: NaiveDate, months: u32) -> NaiveDate {
    date.checked_add_months(Months::new(months))
        .expect("date arithmetic within calendar range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> NaiveDate {
        s.parse().unwrap()
    }

    #[test]
    fn interval_is_half_open() {
        let w = DateInterval::new(d("2008-01-01"), d("2009-01-01")).unwrap();
        assert!(w.contains(d("2008-01-01")));
        assert!(w.contains(d("2008-12-31")));
        assert!(!w.contains(d("2009-01-01")));
        assert_eq!(w.num_days(), 366);
    }

    #[test]
    fn degenerate_interval_is_rejected() {
        assert!(DateInterval::new(d("2008-01-01"), d("2008-01-01")).is_err());
    }

    #[test]
    fn trailing_year_handles_month_ends() {
        // Feb 29 minus 12 months clamps to Feb 28.
        let w = DateInterval::year_ending_at(d("2008-02-29"));
        assert_eq!(w.start(), d("2007-02-28"));
    }
}
