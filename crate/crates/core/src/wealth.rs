//! Wealth of constant betting fractions on the coin `x - m`.
//!
//! The coin outcome `c = x - m` lies in `[-m, 1 - m]` and a fraction `beta` in
//! `[-1/(1-m), 1/m]` keeps every factor `1 + beta c` nonnegative. The maximal
//! log wealth `H(m)` over that range is the quantity every tracker inverts.

use serde::{Deserialize, Serialize};

use crate::error::{check_sample, CsError, Result};
use crate::moments::RunningMoments;
use crate::quadrature;
use crate::r70::RobbinsPrior;

/// Result of maximizing the log wealth over the betting fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WealthMax {
    /// Optimal signed betting fraction; infinite when the supremum diverges.
    pub beta_star: f64,
    pub log_wealth: f64,
    /// The optimum sits at an end of the feasible range.
    pub at_boundary: bool,
}

impl WealthMax {
    const ZERO: WealthMax = WealthMax {
        beta_star: 0.0,
        log_wealth: 0.0,
        at_boundary: false,
    };
}

/// A centered sample `c = x - m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinOutcome {
    c: f64,
    m: f64,
}

impl CoinOutcome {
    pub fn new(c: f64, m: f64) -> Result<Self> {
        if !(m > 0.0 && m < 1.0) {
            return Err(CsError::Domain {
                func: "CoinOutcome::new",
                value: m,
                domain: "(0, 1)",
            });
        }
        if !(c >= -m && c <= 1.0 - m) {
            return Err(CsError::Domain {
                func: "CoinOutcome::new",
                value: c,
                domain: "[-m, 1 - m]",
            });
        }
        Ok(Self { c, m })
    }

    pub fn from_sample(x: f64, m: f64) -> Result<Self> {
        check_sample(x)?;
        Self::new(x - m, m)
    }
}

/// Market gains of the two-stock portfolio equivalent to betting on `c`.
///
/// For any `b` in `[0, 1]`, `b w1 + (1 - b) w2 = 1 + c beta` with `beta`
/// given by [`weight_to_beta`].
pub fn coin_to_market(outcome: CoinOutcome) -> (f64, f64) {
    let CoinOutcome { c, m } = outcome;
    (1.0 + c / m, 1.0 - c / (1.0 - m))
}

/// Portfolio weight on the first stock to signed betting fraction.
pub fn weight_to_beta(b: f64, m: f64) -> f64 {
    -1.0 / (1.0 - m) + (1.0 / (1.0 - m) + 1.0 / m) * b
}

/// Signed betting fraction to portfolio weight on the first stock.
pub fn beta_to_weight(beta: f64, m: f64) -> f64 {
    (1.0 - m) * m * beta + m
}

/// Which prior mixes the constant-fraction wealths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MixturePrior {
    /// Dirichlet(1/2, 1/2) on the portfolio weight `b`.
    Dirichlet,
    /// The Robbins-style heavy-near-zero density on `beta` in `[-1, 1]`.
    Robbins,
    /// Equal-weight mixture of the two.
    Half,
}

#[derive(Debug, Clone, Copy)]
enum Atoms<'a> {
    Counts { zeros: u64, ones: u64 },
    Values(&'a [f64]),
}

/// Read-only view of a sample, with the running moments attached.
///
/// Binary data is represented by its counts so that every wealth evaluation is
/// O(1); otherwise each evaluation is a pass over the stored values.
#[derive(Debug, Clone, Copy)]
pub struct Samples<'a> {
    atoms: Atoms<'a>,
    moments: RunningMoments,
}

impl<'a> Samples<'a> {
    /// View over a slice, computing its moments. Fails on values outside `[0, 1]`.
    pub fn from_slice(xs: &'a [f64]) -> Result<Self> {
        let moments = RunningMoments::from_samples(xs)?;
        Ok(Self::with_moments(xs, moments))
    }

    fn with_moments(xs: &'a [f64], moments: RunningMoments) -> Self {
        let atoms = if moments.is_binary() {
            Atoms::Counts {
                zeros: moments.zeros(),
                ones: moments.ones(),
            }
        } else {
            Atoms::Values(xs)
        };
        Self { atoms, moments }
    }

    pub fn moments(&self) -> &RunningMoments {
        &self.moments
    }

    pub fn t(&self) -> u64 {
        self.moments.t()
    }

    pub fn mean(&self) -> f64 {
        self.moments.mean()
    }

    pub fn is_binary(&self) -> bool {
        matches!(self.atoms, Atoms::Counts { .. })
    }

    #[inline]
    fn sum<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        match self.atoms {
            Atoms::Counts { zeros, ones } => {
                let mut s = 0.0;
                if zeros > 0 {
                    s += zeros as f64 * f(0.0);
                }
                if ones > 0 {
                    s += ones as f64 * f(1.0);
                }
                s
            }
            Atoms::Values(xs) => xs.iter().map(|&x| f(x)).sum(),
        }
    }

    #[inline]
    fn sum2<F: Fn(f64) -> (f64, f64)>(&self, f: F) -> (f64, f64) {
        match self.atoms {
            Atoms::Counts { zeros, ones } => {
                let (mut s, mut s2) = (0.0, 0.0);
                for (n, x) in [(zeros, 0.0), (ones, 1.0)] {
                    if n > 0 {
                        let (a, b) = f(x);
                        s += n as f64 * a;
                        s2 += n as f64 * b;
                    }
                }
                (s, s2)
            }
            Atoms::Values(xs) => xs.iter().fold((0.0, 0.0), |(s, s2), &x| {
                let (a, b) = f(x);
                (s + a, s2 + b)
            }),
        }
    }
}

/// Growing sample buffer feeding the O(t) wealth evaluations.
///
/// Values are only materialized once a non-binary sample arrives; before that
/// the counts are enough because the wealth does not depend on sample order.
#[derive(Debug, Clone, Default)]
pub struct SampleStore {
    values: Vec<f64>,
    moments: RunningMoments,
}

impl SampleStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) -> Result<()> {
        let was_binary = self.moments.is_binary();
        self.moments.push(x)?;
        if !self.moments.is_binary() {
            if was_binary {
                // `ones` stays frozen at its count before this sample.
                let ones = self.moments.ones() as usize;
                let zeros = self.moments.t() as usize - 1 - ones;
                self.values.reserve(self.moments.t() as usize);
                self.values.extend(std::iter::repeat_n(0.0, zeros));
                self.values.extend(std::iter::repeat_n(1.0, ones));
            }
            self.values.push(x);
        }
        Ok(())
    }

    pub fn moments(&self) -> &RunningMoments {
        &self.moments
    }

    pub fn view(&self) -> Samples<'_> {
        Samples::with_moments(&self.values, self.moments)
    }
}

#[derive(Debug, Clone, Copy)]
struct Range {
    lo: f64,
    hi: f64,
    // Endpoints equal to -1/(1-m) and 1/m, where a factor can vanish.
    lo_is_edge: bool,
    hi_is_edge: bool,
}

impl Range {
    fn new(m: f64, cap: f64) -> Self {
        let hi_full = 1.0 / m;
        let lo_full = -1.0 / (1.0 - m);
        Self {
            lo: lo_full.max(-cap),
            hi: hi_full.min(cap),
            lo_is_edge: lo_full >= -cap,
            hi_is_edge: hi_full <= cap,
        }
    }
}

#[inline]
fn log_factor(x: f64, m: f64, beta: f64, range: &Range) -> f64 {
    if range.hi_is_edge && beta == range.hi {
        (x / m).ln()
    } else if range.lo_is_edge && beta == range.lo {
        ((1.0 - x) / (1.0 - m)).ln()
    } else {
        (beta * (x - m)).ln_1p()
    }
}

fn log_wealth_in(s: &Samples<'_>, m: f64, beta: f64, range: &Range) -> f64 {
    if beta == 0.0 {
        return 0.0;
    }
    s.sum(|x| log_factor(x, m, beta, range))
}

/// `sum ln(1 + beta (x_i - m))`, `-inf` if a factor is nonpositive.
pub fn log_wealth_at(s: &Samples<'_>, m: f64, beta: f64) -> f64 {
    if beta == 0.0 {
        return 0.0;
    }
    s.sum(|x| {
        let f = 1.0 + beta * (x - m);
        if f <= 0.0 {
            f64::NEG_INFINITY
        } else {
            (beta * (x - m)).ln_1p()
        }
    })
}

// Derivative of the log wealth at an endpoint of the range.
fn edge_slope(s: &Samples<'_>, m: f64, beta: f64, upper: bool, range: &Range) -> f64 {
    let mo = s.moments();
    if upper && range.hi_is_edge {
        if mo.x_min() == 0.0 {
            return f64::NEG_INFINITY;
        }
        return s.sum(|x| m * (x - m) / x);
    }
    if !upper && range.lo_is_edge {
        if mo.x_max() == 1.0 {
            return f64::INFINITY;
        }
        return s.sum(|x| (1.0 - m) * (x - m) / (1.0 - x));
    }
    s.sum(|x| {
        let c = x - m;
        c / (1.0 + beta * c)
    })
}

/// Maximal log wealth over the full range `[-1/(1-m), 1/m]`.
///
/// At `m = 0` (resp. `m = 1`) the range is unbounded and the supremum is
/// `+inf` as soon as one sample exceeds 0 (resp. falls below 1).
pub fn max_log_wealth(s: &Samples<'_>, m: f64) -> WealthMax {
    let mo = s.moments();
    if m <= 0.0 {
        return if mo.t() > 0 && mo.x_max() > 0.0 {
            WealthMax {
                beta_star: f64::INFINITY,
                log_wealth: f64::INFINITY,
                at_boundary: true,
            }
        } else {
            WealthMax::ZERO
        };
    }
    if m >= 1.0 {
        return if mo.t() > 0 && mo.x_min() < 1.0 {
            WealthMax {
                beta_star: f64::NEG_INFINITY,
                log_wealth: f64::INFINITY,
                at_boundary: true,
            }
        } else {
            WealthMax::ZERO
        };
    }
    maximize(s, m, Range::new(m, f64::INFINITY))
}

/// Maximal log wealth with the betting fraction further restricted to
/// `[-cap, cap]`.
pub fn max_log_wealth_capped(s: &Samples<'_>, m: f64, cap: f64) -> WealthMax {
    let m = m.clamp(0.0, 1.0);
    let mut range = Range::new(m, cap);
    if m == 0.0 {
        range.hi = cap;
        range.hi_is_edge = false;
    }
    if m == 1.0 {
        range.lo = -cap;
        range.lo_is_edge = false;
    }
    maximize(s, m, range)
}

fn maximize(s: &Samples<'_>, m: f64, range: Range) -> WealthMax {
    let mo = s.moments();
    if mo.t() == 0 {
        return WealthMax::ZERO;
    }
    let d = mo.mean() - m;
    if d == 0.0 || (mo.x_min() == m && mo.x_max() == m) {
        return WealthMax::ZERO;
    }

    let (mut a, mut b) = if d > 0.0 {
        (0.0, range.hi)
    } else {
        (range.lo, 0.0)
    };
    let edge = if d > 0.0 { range.hi } else { range.lo };
    let slope = edge_slope(s, m, edge, d > 0.0, &range);
    if (d > 0.0 && slope >= 0.0) || (d < 0.0 && slope <= 0.0) {
        return WealthMax {
            beta_star: edge,
            log_wealth: log_wealth_in(s, m, edge, &range),
            at_boundary: true,
        };
    }

    // Newton on the decreasing derivative, kept inside a shrinking bracket.
    let t = mo.t() as f64;
    let curvature0 = mo.centered_css(m);
    let mut beta = t * d / curvature0;
    if !(beta > a && beta < b) {
        beta = 0.5 * (a + b);
    }
    for _ in 0..200 {
        let (g1, g2) = s.sum2(|x| {
            let c = x - m;
            let den = 1.0 + beta * c;
            if den <= 0.0 {
                let inf = if c < 0.0 {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                };
                (inf, f64::INFINITY)
            } else {
                let r = c / den;
                (r, r * r)
            }
        });
        if g1 > 0.0 {
            a = beta;
        } else if g1 < 0.0 {
            b = beta;
        } else {
            break;
        }
        let mut next = beta + g1 / g2;
        if !(next > a && next < b) {
            next = 0.5 * (a + b);
        }
        let scale = beta.abs().max(1.0);
        let done = (next - beta).abs() <= 1e-15 * scale || b - a <= 1e-13 * scale;
        beta = next;
        if done {
            break;
        }
    }
    WealthMax {
        beta_star: beta,
        log_wealth: log_wealth_in(s, m, beta, &range).max(0.0),
        at_boundary: false,
    }
}

/// `H(m)` on each grid point.
pub fn h_profile(s: &Samples<'_>, grid: &[f64]) -> Vec<f64> {
    grid.iter()
        .map(|&m| max_log_wealth(s, m).log_wealth)
        .collect()
}

/// Log of the prior-weighted mixture of constant-fraction wealths,
/// `ln int prod (1 + beta (x_i - m)) dF(beta)`, by adaptive quadrature.
///
/// Meant as a reference value for tests; requires `m` in `(0, 1)`.
pub fn mixture_log_wealth(s: &Samples<'_>, m: f64, prior: MixturePrior) -> Result<f64> {
    if s.t() == 0 {
        return Ok(0.0);
    }
    if !(m > 0.0 && m < 1.0) {
        return Err(CsError::Domain {
            func: "mixture_log_wealth",
            value: m,
            domain: "(0, 1)",
        });
    }
    match prior {
        MixturePrior::Dirichlet => dirichlet_log_wealth(s, m),
        MixturePrior::Robbins => robbins_log_wealth(s, m),
        MixturePrior::Half => {
            let a = dirichlet_log_wealth(s, m)?;
            let b = robbins_log_wealth(s, m)?;
            let hi = a.max(b);
            Ok(hi + (0.5 * (a - hi).exp() + 0.5 * (b - hi).exp()).ln())
        }
    }
}

const QUAD_REL_TOL: f64 = 1e-11;
const QUAD_SEGMENTS: usize = 20_000;

fn dirichlet_log_wealth(s: &Samples<'_>, m: f64) -> Result<f64> {
    // b = sin^2(theta) turns the arcsine density into the constant 2 / pi.
    let shift = max_log_wealth(s, m).log_wealth;
    let integrand = |theta: f64| {
        let b = theta.sin().powi(2);
        let lw = s.sum(|x| (b * x / m + (1.0 - b) * (1.0 - x) / (1.0 - m)).ln());
        (lw - shift).exp()
    };
    let v = quadrature::integrate(
        integrand,
        0.0,
        std::f64::consts::FRAC_PI_2,
        QUAD_REL_TOL,
        0.0,
        QUAD_SEGMENTS,
    )?;
    Ok(shift + (v * 2.0 / std::f64::consts::PI).ln())
}

fn robbins_log_wealth(s: &Samples<'_>, m: f64) -> Result<f64> {
    // With v = ln ln(c / |beta|) and u = v0 / v, each sign carries mass 1/2
    // spread uniformly over u in (0, 1].
    let prior = RobbinsPrior::new();
    let shift = max_log_wealth_capped(s, m, 1.0).log_wealth;
    let mut total = 0.0;
    for sign in [1.0, -1.0] {
        let integrand = |u: f64| {
            let beta = sign * prior.beta_from_unit(u);
            (log_wealth_at(s, m, beta) - shift).exp()
        };
        total +=
            0.5 * quadrature::integrate(integrand, 0.0, 1.0, QUAD_REL_TOL, 0.0, QUAD_SEGMENTS)?;
    }
    Ok(shift + total.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{kl, ln_gamma};
    use proptest::prelude::*;
    use std::f64::consts::LN_2;

    fn view(xs: &[f64]) -> Samples<'_> {
        Samples::from_slice(xs).unwrap()
    }

    #[test]
    fn market_gain_examples() {
        let gains = |c, m| coin_to_market(CoinOutcome::new(c, m).unwrap());
        assert_eq!(gains(0.0, 0.3), (1.0, 1.0));
        assert_eq!(gains(0.5, 0.5), (2.0, 0.0));
        assert_eq!(gains(-0.25, 0.5), (0.5, 1.5));
        assert!(CoinOutcome::new(0.1, 0.0).is_err());
        assert!(CoinOutcome::new(0.1, 1.0).is_err());
        assert!(CoinOutcome::new(0.8, 0.5).is_err());
    }

    #[test]
    fn reduction_identity() {
        for &m in &[0.1, 0.37, 0.5, 0.9] {
            for &x in &[0.0, 0.2, 0.5, 1.0] {
                let o = CoinOutcome::from_sample(x, m).unwrap();
                let (w1, w2) = coin_to_market(o);
                assert!(w1 >= 0.0 && w2 >= 0.0);
                for i in 0..=10 {
                    let b = i as f64 / 10.0;
                    let beta = weight_to_beta(b, m);
                    let lhs = b * w1 + (1.0 - b) * w2;
                    assert!((lhs - (1.0 + (x - m) * beta)).abs() < 1e-12);
                    assert!((beta_to_weight(beta, m) - b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn max_log_wealth_examples() {
        let w = max_log_wealth(&view(&[0.5]), 0.5);
        assert_eq!((w.beta_star, w.log_wealth), (0.0, 0.0));

        let w = max_log_wealth(&view(&[1.0]), 0.5);
        assert_eq!(w.beta_star, 2.0);
        assert!(w.at_boundary);
        assert!((w.log_wealth - LN_2).abs() < 1e-15);

        let w = max_log_wealth(&view(&[1.0, 0.0, 1.0, 1.0]), 0.5);
        assert!((w.log_wealth - 0.523_248_143_764_547_8).abs() < 1e-10);
        assert!((w.log_wealth - 4.0 * kl(0.75, 0.5)).abs() < 1e-10);
    }

    #[test]
    fn extreme_means() {
        let s = view(&[0.0, 0.3]);
        assert_eq!(max_log_wealth(&s, 0.0).log_wealth, f64::INFINITY);
        assert_eq!(max_log_wealth(&s, 1.0).log_wealth, f64::INFINITY);
        let zeros = view(&[0.0, 0.0]);
        assert_eq!(max_log_wealth(&zeros, 0.0).log_wealth, 0.0);
        let ones = view(&[1.0, 1.0, 1.0]);
        assert_eq!(max_log_wealth(&ones, 1.0).log_wealth, 0.0);
        assert_eq!(h_profile(&s, &[0.0])[0], f64::INFINITY);
    }

    #[test]
    fn sign_of_beta_follows_mean() {
        let s = view(&[0.2, 0.9, 0.4, 0.55]);
        for i in 1..100 {
            let m = i as f64 / 100.0;
            let w = max_log_wealth(&s, m);
            let d = s.mean() - m;
            assert!(w.log_wealth >= 0.0);
            assert!(w.beta_star >= -1.0 / (1.0 - m) && w.beta_star <= 1.0 / m);
            assert!(w.beta_star.signum() == d.signum(), "m = {m}");
        }
    }

    #[test]
    fn store_matches_slice_after_binary_prefix() {
        let xs = [1.0, 0.0, 1.0, 0.25, 0.0, 1.0, 0.75];
        let mut store = SampleStore::new();
        for &x in &xs {
            store.push(x).unwrap();
        }
        let a = store.view();
        let b = view(&xs);
        for &m in &[0.1, 0.4, 0.8] {
            let wa = max_log_wealth(&a, m).log_wealth;
            let wb = max_log_wealth(&b, m).log_wealth;
            assert!((wa - wb).abs() < 1e-12);
        }
    }

    #[test]
    fn dirichlet_mixture_matches_gamma_ratio() {
        // Samples [1, 0] at m = 1/2 give gains (2, 0) then (0, 2), so the
        // mixture is 4 * Gamma(3/2)^2 / (Gamma(1/2)^2 Gamma(3)).
        let s = view(&[1.0, 0.0]);
        let lg = |x| ln_gamma(x).unwrap();
        let closed = 4.0_f64.ln() + 2.0 * lg(1.5) - 2.0 * lg(0.5) - lg(3.0);
        let got = mixture_log_wealth(&s, 0.5, MixturePrior::Dirichlet).unwrap();
        assert!((got - closed).abs() < 1e-8, "{got} vs {closed}");
        assert!((got - 0.5_f64.ln()).abs() < 1e-8);
    }

    #[test]
    fn empty_mixture_is_zero() {
        let s = view(&[]);
        assert_eq!(
            mixture_log_wealth(&s, 0.5, MixturePrior::Robbins).unwrap(),
            0.0
        );
    }

    #[test]
    fn robbins_mixture_matches_midpoint_oracle() {
        let prior = RobbinsPrior::new();
        let cases: [(&[f64], f64); 3] = [
            (&[0.9, 0.8, 1.0, 0.7, 0.95], 0.4),
            (&[0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0], 0.5),
            (&[0.1, 0.2, 0.05, 0.3], 0.6),
        ];
        for (xs, m) in cases {
            let s = view(xs);
            // Midpoint rule in ln|beta| on [1e-12, 1]; below that the wealth is 1.
            let (lo, n) = (1e-12_f64.ln(), 200_000);
            let step = -lo / n as f64;
            let mut total = 2.0 * (0.5 * prior.mass_below(1e-12));
            for sign in [1.0, -1.0] {
                for i in 0..n {
                    let b = (lo + (i as f64 + 0.5) * step).exp();
                    let w: f64 = xs.iter().map(|&x| 1.0 + sign * b * (x - m)).product();
                    total += w * prior.density(b) * b * step;
                }
            }
            let got = mixture_log_wealth(&s, m, MixturePrior::Robbins).unwrap();
            assert!((got - total.ln()).abs() < 1e-6, "{got} vs {}", total.ln());
        }
    }

    fn sample_strategy() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(prop_oneof![Just(0.0), Just(1.0), 0.0f64..=1.0], 1..=20)
    }

    proptest! {
        #[test]
        fn wealth_dominates_kl(xs in sample_strategy(), j in 1usize..200) {
            let s = view(&xs);
            let m = j as f64 / 200.0;
            let h = max_log_wealth(&s, m).log_wealth;
            let t = xs.len() as f64;
            prop_assert!(h >= t * kl(s.mean(), m) - 1e-8);
            if s.is_binary() {
                prop_assert!((h - t * kl(s.mean(), m)).abs() < 1e-6);
            }
        }

        #[test]
        fn wealth_is_order_invariant(xs in sample_strategy(), j in 1usize..100) {
            let mut ys = xs.clone();
            ys.reverse();
            let m = j as f64 / 100.0;
            let a = max_log_wealth(&view(&xs), m).log_wealth;
            let b = max_log_wealth(&view(&ys), m).log_wealth;
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()));
        }

        #[test]
        fn h_is_quasiconvex(xs in sample_strategy()) {
            let s = view(&xs);
            let grid: Vec<f64> = (1..2000).map(|i| i as f64 / 2000.0).collect();
            let h = h_profile(&s, &grid);
            let peak = h.iter().cloned().fold(f64::INFINITY, f64::min);
            let argmin = h.iter().position(|&v| v == peak).unwrap();
            for i in 1..=argmin {
                prop_assert!(h[i] <= h[i - 1] + 1e-9);
            }
            for i in argmin + 1..h.len() {
                prop_assert!(h[i] >= h[i - 1] - 1e-9);
            }
        }

        #[test]
        fn dirichlet_mixture_is_convex(xs in prop::collection::vec(0.0f64..=1.0, 1..=10)) {
            let s = view(&xs);
            let grid: Vec<f64> = (1..60).map(|i| i as f64 / 60.0).collect();
            let w: Vec<f64> = grid
                .iter()
                .map(|&m| mixture_log_wealth(&s, m, MixturePrior::Dirichlet).unwrap().exp())
                .collect();
            for i in 1..w.len() - 1 {
                prop_assert!(w[i + 1] - 2.0 * w[i] + w[i - 1] >= -1e-7 * w[i].max(1.0));
            }
        }

        #[test]
        fn inner_max_matches_beta_grid(xs in prop::collection::vec(0.0f64..=1.0, 1..=20), j in 1usize..100) {
            let s = view(&xs);
            let m = j as f64 / 100.0;
            let (lo, hi) = (-1.0 / (1.0 - m), 1.0 / m);
            let n = 20_000;
            let best = (1..n)
                .map(|i| log_wealth_at(&s, m, lo + (hi - lo) * i as f64 / n as f64))
                .fold(f64::NEG_INFINITY, f64::max);
            let h = max_log_wealth(&s, m).log_wealth;
            prop_assert!(best <= h + 1e-9);
            prop_assert!(h - best < 1e-3 * (1.0 + xs.len() as f64));
        }
    }
}
