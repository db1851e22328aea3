//! Explicit empirical-Bernstein confidence sequence.
//!
//! Inverting a quadratic lower bound on the log wealth under the worst-case
//! portfolio regret gives a closed-form radius `eps_i` around the running mean.
//! The sequence is the running intersection of `[mean_i - eps_i, mean_i + eps_i]`.

use crate::error::{check_delta, Result};
use crate::moments::RunningMoments;
use crate::regret::worst_case_regret;
use crate::sequence::{ConfidenceSequence, Interval};

/// Radius after `i` samples with centered sum of squares `v`; `+inf` while
/// `i <= 2 R_i`, where `R_i = worst_case_regret(i) + ln(1/delta)`.
pub fn epsilon_bernstein(i: u64, v: f64, delta: f64) -> f64 {
    if i == 0 {
        return f64::INFINITY;
    }
    let r = worst_case_regret(i).value - delta.ln();
    let n = i as f64;
    if n <= 2.0 * r {
        return f64::INFINITY;
    }
    let lin = 4.0 / 3.0 * n * r;
    let disc = 16.0 / 9.0 * n * n * r * r + 8.0 * v * r * (n * n - 2.0 * n * r);
    (lin + disc.sqrt()) / (2.0 * n * n - 4.0 * n * r)
}

/// Running intersection of the empirical-Bernstein intervals, clipped to `[0, 1]`.
#[derive(Debug, Clone)]
pub struct Bernstein {
    delta: f64,
    moments: RunningMoments,
    interval: Interval,
}

impl Bernstein {
    pub fn new(delta: f64) -> Result<Self> {
        check_delta(delta)?;
        Ok(Self {
            delta,
            moments: RunningMoments::new(),
            interval: Interval::UNIT,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn moments(&self) -> &RunningMoments {
        &self.moments
    }
}

impl ConfidenceSequence for Bernstein {
    fn name(&self) -> &'static str {
        "bernstein"
    }

    fn push(&mut self, x: f64) -> Result<Interval> {
        self.moments.push(x)?;
        let eps = epsilon_bernstein(self.moments.t(), self.moments.css(), self.delta);
        let mean = self.moments.mean();
        let prev = self.interval;
        let lower = prev.lower.max(mean - eps).min(prev.upper);
        let upper = prev.upper.min(mean + eps).max(lower);
        self.interval = Interval::new(lower, upper);
        Ok(self.interval)
    }

    fn interval(&self) -> Interval {
        self.interval
    }

    fn t(&self) -> u64 {
        self.moments.t()
    }
}
