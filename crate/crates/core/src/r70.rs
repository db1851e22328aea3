//! Confidence sequences with law-of-the-iterated-logarithm width from a
//! Robbins-style mixture over betting fractions in `[-1, 1]`.

use std::f64::consts::E;

use crate::error::{check_delta, CsError, Result};
use crate::moments::RunningMoments;
use crate::search::shrink;
use crate::sequence::{ConfidenceSequence, Interval, DEFAULT_PRECISION};
use crate::special::lambert_w_m1;
use crate::wealth::{max_log_wealth_capped, SampleStore, Samples};

/// The mixing density `F(beta) = 1 / (|beta| h(|beta|))` on `[-1, 1]`, where
/// `h(x) = (2 / ln ln c) ln(c/x) (ln ln(c/x))^2` and `c = 6.6 e`.
///
/// `h` is decreasing on `(0, 1]` with `h(1) > 6`, and each sign carries mass 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobbinsPrior {
    c: f64,
    lnln_c: f64,
}

impl Default for RobbinsPrior {
    fn default() -> Self {
        Self::new()
    }
}

impl RobbinsPrior {
    pub const C: f64 = 6.6 * E;

    pub fn new() -> Self {
        Self {
            c: Self::C,
            lnln_c: Self::C.ln().ln(),
        }
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `h(x)` for `x` in `(0, 1]`.
    pub fn h(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x <= 1.0) {
            return Err(CsError::Domain {
                func: "h_robbins",
                value: x,
                domain: "(0, 1]",
            });
        }
        Ok(self.h_unchecked(x))
    }

    fn h_unchecked(&self, x: f64) -> f64 {
        let l = (self.c / x).ln();
        let ll = l.ln();
        2.0 / self.lnln_c * l * ll * ll
    }

    fn ln_h(&self, x: f64) -> f64 {
        let l = self.c.ln() - x.ln();
        (2.0 / self.lnln_c).ln() + l.ln() + 2.0 * l.ln().ln()
    }

    /// `F(beta)`; zero outside `[-1, 1]` and infinite at zero.
    pub fn density(&self, beta: f64) -> f64 {
        let a = beta.abs();
        if a > 1.0 {
            0.0
        } else if a == 0.0 {
            f64::INFINITY
        } else {
            1.0 / (a * self.h_unchecked(a))
        }
    }

    /// `ln F(beta)` for `0 < |beta| <= 1`, without underflow for tiny `beta`.
    pub fn ln_density(&self, beta: f64) -> f64 {
        let a = beta.abs();
        -(a.ln() + self.ln_h(a))
    }

    /// Maps `u` in `(0, 1]` to `beta` in `(0, 1]` so that `u` is uniform under
    /// the prior restricted to positive `beta`: `beta = c exp(-exp(lnln(c) / u))`.
    pub fn beta_from_unit(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        (self.c.ln() - (self.lnln_c / u).exp()).exp()
    }

    /// Prior mass of `{|beta| < eps}` for `eps` in `(0, 1]`.
    pub fn mass_below(&self, eps: f64) -> f64 {
        self.lnln_c / (self.c / eps).ln().ln()
    }
}

/// `h(x)` of the default [`RobbinsPrior`].
pub fn h_robbins(x: f64) -> Result<f64> {
    RobbinsPrior::new().h(x)
}

/// Ingredients of the mixture wealth lower bound at one `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct R70Bound {
    /// Maximizer of the wealth over `beta` in `[-1, 1]`.
    pub beta_star: f64,
    /// `ln W*`, the maximal log wealth over `[-1, 1]`.
    pub log_wealth: f64,
    /// `ln rho` with `W* rho` a lower bound on the mixture wealth; `-inf` when
    /// `beta_star = 0`.
    pub log_ratio: f64,
}

impl R70Bound {
    /// `ln(W* rho)`.
    pub fn log_lower_bound(&self) -> f64 {
        if self.log_ratio == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.log_wealth + self.log_ratio
        }
    }
}

/// Lower bound on the Robbins-mixture wealth at `m` as `W*(m) rho(m)`.
///
/// `rho` is the larger of two proven ratios: one from log-concavity of the
/// wealth between 0 and `beta*`, one from a quadratic lower bound on the log
/// wealth over a window of width `Delta` next to `beta*`.
pub fn r70_bound(s: &Samples<'_>, m: f64, prior: &RobbinsPrior) -> R70Bound {
    let w = max_log_wealth_capped(s, m, 1.0);
    let beta = w.beta_star;
    let lw = w.log_wealth;
    let abs_beta = beta.abs();
    if beta == 0.0 || s.t() == 0 {
        return R70Bound {
            beta_star: beta,
            log_wealth: lw,
            log_ratio: f64::NEG_INFINITY,
        };
    }
    let mo = s.moments();

    // (1 - 1/W) / ln W, tending to 1 as W -> 1.
    let shape = if lw < 1e-8 {
        1.0 - 0.5 * lw
    } else {
        -(-lw).exp_m1() / lw
    };
    let ln_b1 = shape.ln() + abs_beta.ln();

    let q = if beta > 0.0 {
        mo.x_min() - m
    } else {
        m - mo.x_max()
    };
    let a = 1.0 + (q * beta).min(0.0);
    let v = mo.centered_css(m);
    let delta_tilde = if abs_beta < 1.0 && v > 0.0 {
        a / v.sqrt()
    } else {
        0.0
    };
    let step = delta_tilde.min(abs_beta);
    let ln_b2 = if step > 0.0 && a > 0.0 {
        -step * step * v / (2.0 * a * a) + step.ln()
    } else {
        f64::NEG_INFINITY
    };

    R70Bound {
        beta_star: beta,
        log_wealth: lw,
        log_ratio: ln_b1.max(ln_b2) + prior.ln_density(abs_beta),
    }
}

/// `rho(m)`, the ratio such that the mixture wealth is at least `W*(m) rho(m)`.
pub fn r70_regret_ratio(s: &Samples<'_>, m: f64) -> f64 {
    r70_bound(s, m, &RobbinsPrior::new()).log_ratio.exp()
}

/// Closed-form upper bound on `u_t - mean` and `mean - l_t`; 1 while
/// `t <= 2 U_t`.
pub fn lil_width_bound(moments: &RunningMoments, delta: f64) -> Result<f64> {
    let u = lil_u(moments, delta)?;
    let t = moments.t() as f64;
    let v = moments.css();
    if t <= 2.0 * u {
        return Ok(1.0);
    }
    Ok(
        (f64::max(u / (1.0 - 2.0 * u / t), 1.0) * 2.0 * v).sqrt() / t
            + (4.0 / 3.0) * u / (t - 2.0 * u)
            + 24.0 / t * (7.0 / (6.0 * delta)).ln(),
    )
}

/// The `U_t` term of [`lil_width_bound`].
pub fn lil_u(moments: &RunningMoments, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let prior = RobbinsPrior::new();
    let hv = prior.h_unchecked(1.0 / (2.0 + (moments.css() / 2.0).sqrt()));
    let scale = 20.0 / (3.0 * delta) * hv;
    Ok(-0.5 * lambert_w_m1(-2.0 / (scale * scale))?)
}

/// Confidence sequence keeping `m` while `W*(m) rho(m) < 1/delta`.
#[derive(Debug, Clone)]
pub struct R70 {
    delta: f64,
    log_inv_delta: f64,
    precision: f64,
    prior: RobbinsPrior,
    store: SampleStore,
    interval: Interval,
}

impl R70 {
    pub fn new(delta: f64) -> Result<Self> {
        check_delta(delta)?;
        Ok(Self {
            delta,
            log_inv_delta: -delta.ln(),
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

    pub fn samples(&self) -> Samples<'_> {
        self.store.view()
    }

    /// The wealth lower bound `ln(W* rho)` at `m` on the current samples.
    pub fn log_wealth_bound(&self, m: f64) -> f64 {
        r70_bound(&self.store.view(), m, &self.prior).log_lower_bound()
    }
}

impl ConfidenceSequence for R70 {
    fn name(&self) -> &'static str {
        "r70"
    }

    fn push(&mut self, x: f64) -> Result<Interval> {
        self.store.push(x)?;
        let s = self.store.view();
        let thr = self.log_inv_delta;
        let prior = self.prior;
        let excluded = |m: f64| r70_bound(&s, m, &prior).log_lower_bound() >= thr;
        self.interval = shrink(self.interval, s.mean(), self.precision, excluded, excluded);
        Ok(self.interval)
    }

    fn interval(&self) -> Interval {
        self.interval
    }

    fn t(&self) -> u64 {
        self.store.moments().t()
    }
}
