//! Exact inversion of the universal portfolio wealth bound.
//!
//! A mean `m` is excluded once the best constant-fraction log wealth `H(m)`,
//! minus a data-dependent regret of the Dirichlet(1/2, 1/2) portfolio, reaches
//! `ln(1/delta)`. Each endpoint is located by searching from its previous value
//! towards the empirical mean, which is valid because `H` is quasiconvex with
//! minimum at the mean.

use crate::error::{check_delta, check_sample, Result};
use crate::regret::{side_regret, RegretBound, RegretKind, Side};
use crate::search::shrink;
use crate::sequence::{ConfidenceSequence, Interval, DEFAULT_PRECISION};
use crate::wealth::{beta_to_weight, max_log_wealth, SampleStore, Samples};

/// Optimal portfolio weight on the first stock for the market at mean `m`.
pub(crate) fn edge_weight(s: &Samples<'_>, m: f64) -> f64 {
    let mo = s.moments();
    if m <= 0.0 {
        return if mo.x_max() > 0.0 { 1.0 } else { 0.0 };
    }
    if m >= 1.0 {
        return if mo.x_min() < 1.0 { 0.0 } else { 1.0 };
    }
    beta_to_weight(max_log_wealth(s, m).beta_star, m).clamp(0.0, 1.0)
}

/// Side regrets for the current step, with edges taken at the previous interval.
pub(crate) fn side_regrets(s: &Samples<'_>, prev: Interval) -> (RegretBound, RegretBound) {
    let (t, mean) = (s.t(), s.mean());
    (
        side_regret(Side::Lower, edge_weight(s, prev.lower), mean, t),
        side_regret(Side::Upper, edge_weight(s, prev.upper), mean, t),
    )
}

/// `H(m) - regret`, with `+inf` wherever `H` diverges.
pub(crate) fn regret_adjusted_log_wealth(s: &Samples<'_>, m: f64, regret: f64) -> f64 {
    let h = max_log_wealth(s, m).log_wealth;
    if h == f64::INFINITY {
        h
    } else {
        h - regret
    }
}

/// The interval after a single sample: `[x delta / 2, 1 - (1 - x) delta / 2]`.
pub fn co96_closed_form_t1(x: f64, delta: f64) -> Result<Interval> {
    check_sample(x)?;
    check_delta(delta)?;
    Ok(Interval::new(
        x * delta / 2.0,
        1.0 - (1.0 - x) * delta / 2.0,
    ))
}

/// Confidence sequence from the exact maximal wealth and data-dependent regret.
///
/// Each step costs a handful of wealth maximizations, each O(1) on binary data
/// and O(t) otherwise.
#[derive(Debug, Clone)]
pub struct Co96 {
    delta: f64,
    log_inv_delta: f64,
    precision: f64,
    store: SampleStore,
    interval: Interval,
    regrets: (RegretBound, RegretBound),
}

impl Co96 {
    pub fn new(delta: f64) -> Result<Self> {
        check_delta(delta)?;
        let zero = |kind| RegretBound { value: 0.0, kind };
        Ok(Self {
            delta,
            log_inv_delta: -delta.ln(),
            precision: DEFAULT_PRECISION,
            store: SampleStore::new(),
            interval: Interval::UNIT,
            regrets: (zero(RegretKind::LowerSide), zero(RegretKind::UpperSide)),
        })
    }

    /// Sets the search precision on `m`.
    pub fn with_precision(mut self, precision: f64) -> Self {
        self.precision = precision;
        self
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn samples(&self) -> Samples<'_> {
        self.store.view()
    }

    /// Lower- and upper-side regrets used at the latest step.
    pub fn regrets(&self) -> (RegretBound, RegretBound) {
        self.regrets
    }

    /// The lower bound on the portfolio log wealth at `m` that the latest step
    /// compared against `ln(1/delta)`.
    pub fn log_wealth_bound(&self, m: f64) -> f64 {
        let s = self.store.view();
        let regret = if m <= s.mean() {
            self.regrets.0
        } else {
            self.regrets.1
        };
        regret_adjusted_log_wealth(&s, m, regret.value)
    }
}

impl ConfidenceSequence for Co96 {
    fn name(&self) -> &'static str {
        "co96"
    }

    fn push(&mut self, x: f64) -> Result<Interval> {
        self.store.push(x)?;
        let s = self.store.view();
        let prev = self.interval;
        let (rl, ru) = side_regrets(&s, prev);
        let thr = self.log_inv_delta;
        self.interval = shrink(
            prev,
            s.mean(),
            self.precision,
            |m| regret_adjusted_log_wealth(&s, m, rl.value) >= thr,
            |m| regret_adjusted_log_wealth(&s, m, ru.value) >= thr,
        );
        self.regrets = (rl, ru);
        Ok(self.interval)
    }

    fn interval(&self) -> Interval {
        self.interval
    }

    fn t(&self) -> u64 {
        self.store.moments().t()
    }
}
