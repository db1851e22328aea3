//! The streaming interface shared by every confidence sequence.

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// A closed interval `[lower, upper]` inside `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub const UNIT: Interval = Interval {
        lower: 0.0,
        upper: 1.0,
    };

    pub fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, m: f64) -> bool {
        self.lower <= m && m <= self.upper
    }

    /// True if `self` lies inside `other` widened by `slack` on both ends.
    pub fn is_within(&self, other: &Interval, slack: f64) -> bool {
        self.lower >= other.lower - slack && self.upper <= other.upper + slack
    }
}

impl Default for Interval {
    fn default() -> Self {
        Self::UNIT
    }
}

/// A time-uniform confidence sequence for the mean of a `[0, 1]` stream.
///
/// With probability at least `1 - delta`, every interval returned by `push`
/// contains the conditional mean, simultaneously over all times. Except for
/// the pointwise Clopper-Pearson baseline, implementations return nested
/// intervals.
pub trait ConfidenceSequence {
    /// Short identifier used in CSV output.
    fn name(&self) -> &'static str;

    /// Consumes one sample and returns the updated interval.
    fn push(&mut self, x: f64) -> Result<Interval>;

    /// Current interval; `[0, 1]` before the first sample.
    fn interval(&self) -> Interval;

    /// Number of samples consumed.
    fn t(&self) -> u64;

    /// Feeds every sample in order and returns the final interval.
    fn extend(&mut self, xs: &[f64]) -> Result<Interval> {
        for &x in xs {
            self.push(x)?;
        }
        Ok(self.interval())
    }
}

impl<T: ConfidenceSequence + ?Sized> ConfidenceSequence for Box<T> {
    fn name(&self) -> &'static str {
        (**self).name()
    }

    fn push(&mut self, x: f64) -> Result<Interval> {
        (**self).push(x)
    }

    fn interval(&self) -> Interval {
        (**self).interval()
    }

    fn t(&self) -> u64 {
        (**self).t()
    }
}

/// Binary-search precision on `m` used by the numerically inverted sequences.
pub const DEFAULT_PRECISION: f64 = 1e-4;
