//! Pointwise Clopper-Pearson intervals, the classical non-sequential baseline.

use crate::error::{check_delta, CsError, Result};
use crate::sequence::{ConfidenceSequence, Interval};
use crate::special::inc_beta_inv;

/// Exact binomial interval for `k` successes out of `n` at level `1 - delta`.
pub fn clopper_pearson(k: u64, n: u64, delta: f64) -> Result<Interval> {
    check_delta(delta)?;
    if n == 0 || k > n {
        return Err(CsError::InvalidCounts { k, n });
    }
    let (kf, nf) = (k as f64, n as f64);
    let lower = if k == 0 {
        0.0
    } else {
        inc_beta_inv(kf, nf - kf + 1.0, delta / 2.0)?
    };
    let upper = if k == n {
        1.0
    } else {
        inc_beta_inv(kf + 1.0, nf - kf, 1.0 - delta / 2.0)?
    };
    Ok(Interval::new(lower, upper))
}

/// Recomputes the Clopper-Pearson interval at every step.
///
/// Not time-uniform and not nested; accepts only samples in `{0, 1}`.
#[derive(Debug, Clone)]
pub struct ClopperPearson {
    delta: f64,
    ones: u64,
    n: u64,
    interval: Interval,
}

impl ClopperPearson {
    pub fn new(delta: f64) -> Result<Self> {
        check_delta(delta)?;
        Ok(Self {
            delta,
            ones: 0,
            n: 0,
            interval: Interval::UNIT,
        })
    }
}

impl ConfidenceSequence for ClopperPearson {
    fn name(&self) -> &'static str {
        "clopper_pearson"
    }

    fn push(&mut self, x: f64) -> Result<Interval> {
        if x != 0.0 && x != 1.0 {
            return Err(CsError::InvalidSample(x));
        }
        self.n += 1;
        self.ones += x as u64;
        self.interval = clopper_pearson(self.ones, self.n, self.delta)?;
        Ok(self.interval)
    }

    fn interval(&self) -> Interval {
        self.interval
    }

    fn t(&self) -> u64 {
        self.n
    }
}
