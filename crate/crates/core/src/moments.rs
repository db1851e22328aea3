//! Streaming sufficient statistics of a `[0, 1]`-valued sample.

use serde::{Deserialize, Serialize};

use crate::error::{check_sample, Result};

/// Running count, mean, centered sum of squares and extremes.
///
/// While every sample seen so far is exactly 0 or 1 the struct also tracks the
/// number of ones; `mean` and `css` are then recomputed from the counts so that
/// the binary identities hold exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunningMoments {
    t: u64,
    mean: f64,
    css: f64,
    x_min: f64,
    x_max: f64,
    ones: u64,
    is_binary: bool,
}

impl Default for RunningMoments {
    fn default() -> Self {
        Self::new()
    }
}

impl RunningMoments {
    pub fn new() -> Self {
        Self {
            t: 0,
            mean: 0.0,
            css: 0.0,
            x_min: f64::INFINITY,
            x_max: f64::NEG_INFINITY,
            ones: 0,
            is_binary: true,
        }
    }

    pub fn from_samples(xs: &[f64]) -> Result<Self> {
        let mut m = Self::new();
        for &x in xs {
            m.push(x)?;
        }
        Ok(m)
    }

    /// Adds one sample in `[0, 1]`.
    pub fn push(&mut self, x: f64) -> Result<()> {
        check_sample(x)?;
        self.t += 1;
        let n = self.t as f64;
        self.x_min = self.x_min.min(x);
        self.x_max = self.x_max.max(x);

        if self.is_binary && (x == 0.0 || x == 1.0) {
            if x == 1.0 {
                self.ones += 1;
            }
            let ones = self.ones as f64;
            self.mean = ones / n;
            self.css = ones * (n - ones) / n;
            return Ok(());
        }
        self.is_binary = false;

        let prev = self.mean;
        self.mean = prev + (x - prev) / n;
        self.css += (x - prev) * (x - self.mean);
        self.mean = self.mean.clamp(self.x_min, self.x_max);
        self.css = self.css.clamp(0.0, n / 4.0);
        Ok(())
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Centered sum of squares `sum (x_i - mean)^2`.
    pub fn css(&self) -> f64 {
        self.css
    }

    /// `css / t`, zero before the first sample.
    pub fn vbar(&self) -> f64 {
        if self.t == 0 {
            0.0
        } else {
            self.css / self.t as f64
        }
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    /// True while every sample is exactly 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.is_binary
    }

    /// Number of ones; meaningful only while [`is_binary`](Self::is_binary).
    pub fn ones(&self) -> u64 {
        self.ones
    }

    pub fn zeros(&self) -> u64 {
        self.t - self.ones
    }

    /// `sum (x_i - m)^2`, via the shift identity `css + t (mean - m)^2`.
    pub fn centered_css(&self, m: f64) -> f64 {
        let d = self.mean - m;
        self.css + self.t as f64 * d * d
    }
}
