//! Splitting the initial wealth between the Dirichlet and Robbins portfolios.
//!
//! A convex combination of two betting strategies is a betting strategy, so
//! `w e^{lb_co96} + (1 - w) e^{lb_r70}` lower-bounds a valid wealth process.

use crate::co96::{regret_adjusted_log_wealth, side_regrets};
use crate::error::{check_delta, CsError, Result};
use crate::r70::{r70_bound, RobbinsPrior};
use crate::search::shrink;
use crate::sequence::{ConfidenceSequence, Interval, DEFAULT_PRECISION};
use crate::wealth::{SampleStore, Samples};

/// Default share of the initial wealth given to the Dirichlet portfolio.
pub const DEFAULT_WEIGHT: f64 = 0.5;

fn log_add(a: f64, b: f64) -> f64 {
    let hi = a.max(b);
    if hi.is_infinite() {
        return hi;
    }
    hi + ((a - hi).exp() + (b - hi).exp()).ln()
}

/// Confidence sequence of the two-portfolio mixture.
#[derive(Debug, Clone)]
pub struct Mixture {
    delta: f64,
    log_inv_delta: f64,
    ln_weight: f64,
    ln_rest: f64,
    precision: f64,
    prior: RobbinsPrior,
    store: SampleStore,
    interval: Interval,
}

impl Mixture {
    /// Mixture with the default even split.
    pub fn new(delta: f64) -> Result<Self> {
        Self::with_weight(delta, DEFAULT_WEIGHT)
    }

    /// `weight` in `(0, 1]` is the share of the Dirichlet portfolio; 1 recovers
    /// the exact Dirichlet sequence.
    pub fn with_weight(delta: f64, weight: f64) -> Result<Self> {
        check_delta(delta)?;
        if !(weight > 0.0 && weight <= 1.0) {
            return Err(CsError::InvalidWeight(weight));
        }
        Ok(Self {
            delta,
            log_inv_delta: -delta.ln(),
            ln_weight: weight.ln(),
            ln_rest: (-weight).ln_1p(),
            precision: DEFAULT_PRECISION,
            prior: RobbinsPrior::new(),
            store: SampleStore::new(),
            interval: Interval::UNIT,
        })
    }

    pub fn with_precision(mut self, precision: f64) -> Self {
        self.precision = precision;
        self
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn weight(&self) -> f64 {
        self.ln_weight.exp()
    }

    pub fn samples(&self) -> Samples<'_> {
        self.store.view()
    }

    fn log_bound(&self, s: &Samples<'_>, m: f64, regret: f64) -> f64 {
        let a = self.ln_weight + regret_adjusted_log_wealth(s, m, regret);
        if self.ln_rest == f64::NEG_INFINITY {
            return a;
        }
        let b = self.ln_rest + r70_bound(s, m, &self.prior).log_lower_bound();
        log_add(a, b)
    }
}

impl ConfidenceSequence for Mixture {
    fn name(&self) -> &'static str {
        "mix"
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
            |m| self.log_bound(&s, m, rl.value) >= thr,
            |m| self.log_bound(&s, m, ru.value) >= thr,
        );
        Ok(self.interval)
    }

    fn interval(&self) -> Interval {
        self.interval
    }

    fn t(&self) -> u64 {
        self.store.moments().t()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::co96::Co96;

    #[test]
    fn rejects_bad_weight() {
        assert!(matches!(
            Mixture::with_weight(0.05, 0.0),
            Err(CsError::InvalidWeight(_))
        ));
        assert!(Mixture::with_weight(0.05, 1.5).is_err());
        assert!(Mixture::with_weight(1.0, 0.5).is_err());
    }

    #[test]
    fn full_weight_matches_dirichlet_sequence() {
        let xs: Vec<f64> = (0..200).map(|i| ((i * 37) % 101) as f64 / 100.0).collect();
        let mut mix = Mixture::with_weight(0.05, 1.0).unwrap();
        let mut co = Co96::new(0.05).unwrap();
        for &x in &xs {
            let a = mix.push(x).unwrap();
            let b = co.push(x).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn first_step_width() {
        for &delta in &[0.1, 0.05, 0.01] {
            for &x in &[0.0, 0.3, 0.5, 1.0] {
                let mut mix = Mixture::new(delta).unwrap();
                let w = mix.push(x).unwrap().width();
                assert!(w <= 1.0 - delta / 4.0 + 2e-4, "x={x} delta={delta} w={w}");
            }
        }
    }
}
