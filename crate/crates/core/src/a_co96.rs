//! Constant-time-per-step inversion with closed-form wealth lower bounds.
//!
//! The maximal log wealth is bounded below, per sample, by the larger of a
//! Fan-type quadratic bound `G` (evaluated at its closed-form maximizer) and
//! the Bernoulli KL divergence. Only the running mean and variance are read.

use crate::error::{check_delta, Result};
use crate::moments::RunningMoments;
use crate::regret::{worst_case_regret, Side};
use crate::search::shrink;
use crate::sequence::{ConfidenceSequence, Interval, DEFAULT_PRECISION};
use crate::special::kl;

const BETA_SHRINK: f64 = 1.0 - 1e-12;

// (-ln(1 - q) - q) / q^2, increasing on [0, 1) and infinite at 1.
fn phi(q: f64) -> f64 {
    if q >= 1.0 {
        return f64::INFINITY;
    }
    if q.abs() < 1e-3 {
        // Series 1/2 + q/3 + q^2/4 + q^3/5.
        return 0.5 + q * (1.0 / 3.0 + q * (0.25 + q * 0.2));
    }
    (-(-q).ln_1p() - q) / (q * q)
}

/// Lower-side bound `beta (mean - m) - (-ln(1 - beta m) - beta m) (vbar + (mean - m)^2) / m^2`
/// for `beta` in `[0, 1/m)`; `-inf` once `beta m >= 1`.
pub fn g_lower(beta: f64, m: f64, mean: f64, vbar: f64) -> f64 {
    if beta == 0.0 {
        return 0.0;
    }
    let q = beta * m;
    if q >= 1.0 {
        return f64::NEG_INFINITY;
    }
    let d = mean - m;
    beta * d - beta * beta * phi(q) * (vbar + d * d)
}

/// Upper-side bound, the mirror of [`g_lower`] for `beta` in `(-1/(1-m), 0]`.
pub fn g_upper(beta: f64, m: f64, mean: f64, vbar: f64) -> f64 {
    if beta == 0.0 {
        return 0.0;
    }
    let q = -(1.0 - m) * beta;
    if q >= 1.0 {
        return f64::NEG_INFINITY;
    }
    let d = mean - m;
    beta * d - beta * beta * phi(q) * (vbar + d * d)
}

/// Closed-form maximizer of the quadratic surrogate of `g_lower` (resp. `g_upper`).
///
/// Zero in the degenerate case `m = mean`, `vbar = 0`.
pub fn beta_tilde(side: Side, m: f64, mean: f64, vbar: f64) -> f64 {
    let d = mean - m;
    let (num, den) = match side {
        Side::Lower => (d, m * d + vbar + d * d),
        Side::Upper => (d, -(1.0 - m) * d + vbar + d * d),
    };
    if num == 0.0 || den <= 0.0 {
        return 0.0;
    }
    num / den
}

/// `max(g_lower(beta~), g_upper(beta~) or 0, KL)`: the per-sample lower bound on
/// `H(m) / t`, nonincreasing in `m` below the mean and nondecreasing above.
pub fn combined_bound(mo: &RunningMoments, m: f64, use_range: bool) -> f64 {
    let (mean, vbar) = (mo.mean(), mo.vbar());
    let g = if m <= mean {
        let b = beta_tilde(Side::Lower, m, mean, vbar).clamp(0.0, BETA_SHRINK / m);
        g_lower(b, m, mean, vbar)
    } else {
        let b = beta_tilde(Side::Upper, m, mean, vbar).clamp(-BETA_SHRINK / (1.0 - m), 0.0);
        g_upper(b, m, mean, vbar)
    };
    let mut best = g.max(kl(mean, m));
    if use_range {
        best = best.max(two_point_bound(mo, m));
    }
    best
}

/// Per-sample max log wealth of the two-point market on `{x_min, x_max}` with
/// the empirical mean, a lower bound on `H(m) / t` by concavity of the log.
fn two_point_bound(mo: &RunningMoments, m: f64) -> f64 {
    let (lo, hi, mean) = (mo.x_min(), mo.x_max(), mo.mean());
    if hi <= lo {
        return 0.0;
    }
    let p = ((mean - lo) / (hi - lo)).clamp(0.0, 1.0);
    let (a, b) = (hi - m, lo - m);
    let d = mean - m;
    if d == 0.0 {
        return 0.0;
    }
    let beta_min = if m < 1.0 {
        -BETA_SHRINK / (1.0 - m)
    } else {
        f64::NEG_INFINITY
    };
    let beta_max = if m > 0.0 {
        BETA_SHRINK / m
    } else {
        f64::INFINITY
    };
    // Interior stationary point of p ln(1 + beta a) + (1 - p) ln(1 + beta b).
    let raw = -d / (a * b);
    let beta = if raw.is_finite() && a * b < 0.0 {
        raw.clamp(beta_min, beta_max)
    } else if d > 0.0 {
        beta_max
    } else {
        beta_min
    };
    if !beta.is_finite() {
        return f64::INFINITY;
    }
    let term = |w: f64, c: f64| {
        if w == 0.0 {
            0.0
        } else {
            w * (beta * c).ln_1p()
        }
    };
    (term(p, a) + term(1.0 - p, b)).max(0.0)
}

/// Confidence sequence from the closed-form wealth bounds and the worst-case
/// regret; O(log(1/precision)) work per sample.
#[derive(Debug, Clone)]
pub struct ACo96 {
    delta: f64,
    log_inv_delta: f64,
    precision: f64,
    use_range: bool,
    moments: RunningMoments,
    interval: Interval,
}

impl ACo96 {
    pub fn new(delta: f64) -> Result<Self> {
        check_delta(delta)?;
        Ok(Self {
            delta,
            log_inv_delta: -delta.ln(),
            precision: DEFAULT_PRECISION,
            use_range: false,
            moments: RunningMoments::new(),
            interval: Interval::UNIT,
        })
    }

    pub fn with_precision(mut self, precision: f64) -> Self {
        self.precision = precision;
        self
    }

    /// Also bounds the wealth through the observed sample range. Off by default.
    pub fn with_range_refinement(mut self, on: bool) -> Self {
        self.use_range = on;
        self
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn moments(&self) -> &RunningMoments {
        &self.moments
    }

    /// Per-sample exclusion threshold `(R_t + ln(1/delta)) / t`.
    pub fn threshold(&self) -> f64 {
        let t = self.moments.t();
        (worst_case_regret(t).value + self.log_inv_delta) / t as f64
    }
}

impl ConfidenceSequence for ACo96 {
    fn name(&self) -> &'static str {
        "a_co96"
    }

    fn push(&mut self, x: f64) -> Result<Interval> {
        self.moments.push(x)?;
        let thr = self.threshold();
        let mo = self.moments;
        let r = self.use_range;
        self.interval = shrink(
            self.interval,
            mo.mean(),
            self.precision,
            |m| combined_bound(&mo, m, r) > thr,
            |m| combined_bound(&mo, m, r) > thr,
        );
        Ok(self.interval)
    }

    fn interval(&self) -> Interval {
        self.interval
    }

    fn t(&self) -> u64 {
        self.moments.t()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wealth::{max_log_wealth, Samples};
    use proptest::prelude::*;

    #[test]
    fn g_lower_examples() {
        assert_eq!(g_lower(0.0, 0.3, 0.5, 0.25), 0.0);
        // 0.5714 * 0.2 - (-ln(1 - 0.17142) - 0.17142) * 0.29 / 0.09.
        let q: f64 = 0.5714 * 0.3;
        let direct = 0.5714 * 0.2 - (-(1.0 - q).ln() - q) * 0.29 / 0.09;
        let g = g_lower(0.5714, 0.3, 0.5, 0.25);
        assert!((g - direct).abs() < 1e-14);
        assert!((g - 0.0606).abs() < 5e-4, "{g}");
        assert_eq!(g_lower(4.0, 0.3, 0.5, 0.25), f64::NEG_INFINITY);
    }

    #[test]
    fn beta_tilde_examples() {
        assert_eq!(beta_tilde(Side::Lower, 0.5, 0.5, 0.1), 0.0);
        assert_eq!(beta_tilde(Side::Lower, 0.4, 0.4, 0.0), 0.0);
        let b = beta_tilde(Side::Lower, 0.3, 0.5, 0.25);
        assert!((b - 0.2 / 0.35).abs() < 1e-12);
        let b = beta_tilde(Side::Upper, 0.7, 0.5, 0.25);
        assert!((b + 0.2 / 0.35).abs() < 1e-12);
    }

    #[test]
    fn beta_tilde_near_grid_optimum() {
        let (m, mean, vbar) = (0.3, 0.5, 0.25);
        let bt = beta_tilde(Side::Lower, m, mean, vbar);
        let gt = g_lower(bt, m, mean, vbar);
        let n = 100_000;
        let best = (0..n)
            .map(|i| g_lower(i as f64 / n as f64 / m, m, mean, vbar))
            .fold(f64::NEG_INFINITY, f64::max);
        // beta~ is the exact stationary point of g_lower.
        assert!(best <= gt + 1e-12);
        assert!(gt - best < 1e-9);
    }

    #[test]
    fn phi_series_is_continuous() {
        for &q in &[-0.002f64, -0.001, 0.000_999_9, 0.001, 0.002] {
            let direct = (-(-q).ln_1p() - q) / (q * q);
            assert!((phi(q) - direct).abs() < 1e-9);
        }
        assert_eq!(phi(1.0), f64::INFINITY);
    }

    proptest! {
        #[test]
        fn sandwich(xs in prop::collection::vec(0.0f64..=1.0, 1..25), j in 1usize..100, range in any::<bool>()) {
            let s = Samples::from_slice(&xs).unwrap();
            let mo = *s.moments();
            let m = j as f64 / 100.0;
            let t = xs.len() as f64;
            let lb = combined_bound(&mo, m, range);
            let h = max_log_wealth(&s, m).log_wealth / t;
            prop_assert!(kl(mo.mean(), m) <= lb + 1e-12);
            prop_assert!(lb <= h + 1e-8, "lb {} h {}", lb, h);
        }

        #[test]
        fn monotone_on_each_side(xs in prop::collection::vec(0.0f64..=1.0, 1..25), range in any::<bool>()) {
            let mo = RunningMoments::from_samples(&xs).unwrap();
            let grid: Vec<f64> = (0..=400).map(|i| i as f64 / 400.0).collect();
            let vals: Vec<f64> = grid.iter().map(|&m| combined_bound(&mo, m, range)).collect();
            for i in 1..grid.len() {
                if grid[i] <= mo.mean() {
                    prop_assert!(vals[i] <= vals[i - 1] + 1e-9);
                } else if grid[i - 1] >= mo.mean() {
                    prop_assert!(vals[i] >= vals[i - 1] - 1e-9);
                }
            }
        }
    }
}
