//! Regret bounds of the Dirichlet(1/2, 1/2)-weighted portfolio.
//!
//! All Gamma ratios go through [`ln_gamma`](crate::special::ln_gamma) so the
//! bounds stay finite for horizons in the millions.

use std::f64::consts::PI;

use crate::error::{CsError, Result};
use crate::special::ln_gamma_pos;

const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Which bound produced a [`RegretBound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegretKind {
    WorstCase,
    LowerSide,
    UpperSide,
}

/// Upper bound on the log-wealth gap to the best constant rebalanced portfolio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegretBound {
    /// Nonnegative, in nats.
    pub value: f64,
    pub kind: RegretKind,
}

/// Which end of the confidence interval a side regret serves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

fn xlogy(k: f64, y: f64) -> f64 {
    if k == 0.0 {
        0.0
    } else {
        k * y.ln()
    }
}

pub(crate) fn f_unchecked(b: f64, k: u64, t: u64) -> f64 {
    let (kf, tf) = (k as f64, t as f64);
    LN_PI + xlogy(kf, b) + xlogy(tf - kf, 1.0 - b) + ln_gamma_pos(tf + 1.0)
        - ln_gamma_pos(kf + 0.5)
        - ln_gamma_pos(tf - kf + 0.5)
}

/// `ln[pi b^k (1-b)^(t-k) Gamma(t+1) / (Gamma(k+1/2) Gamma(t-k+1/2))]`, with
/// `0^0 = 1`. Returns `-inf` where the power term vanishes.
pub fn f_regret(b: f64, k: u64, t: u64) -> Result<f64> {
    if !(0.0..=1.0).contains(&b) {
        return Err(CsError::Domain {
            func: "f_regret",
            value: b,
            domain: "[0, 1]",
        });
    }
    if t == 0 || k > t {
        return Err(CsError::InvalidCounts { k, n: t });
    }
    Ok(f_unchecked(b, k, t))
}

// Rounds `y` to the nearest integer when it is within float noise of one.
fn snap(y: f64) -> Option<f64> {
    let r = y.round();
    ((y - r).abs() <= 1e-9 * y.abs().max(1.0)).then_some(r)
}

fn ceil_half_down(b: f64, t: u64) -> u64 {
    let y = b * t as f64 - 0.5;
    let k = snap(y).unwrap_or_else(|| y.ceil());
    k.clamp(0.0, t as f64) as u64
}

fn floor_half_up(b: f64, t: u64) -> u64 {
    let y = b * t as f64 + 0.5;
    let k = snap(y).unwrap_or_else(|| y.floor());
    k.clamp(0.0, t as f64) as u64
}

/// The integers `k` maximizing `f(b, k, t)`: `{ceil(tb - 1/2), floor(tb + 1/2)}`.
///
/// Two elements only when `tb + 1/2` is an integer, where both tie.
pub fn argmax_k(b: f64, t: u64) -> Vec<u64> {
    let lo = ceil_half_down(b, t);
    let hi = floor_half_up(b, t);
    if lo == hi {
        vec![lo]
    } else {
        vec![lo.min(hi), lo.max(hi)]
    }
}

/// `max_k f(b, k, t)`.
pub fn h_regret(b: f64, t: u64) -> f64 {
    argmax_k(b, t)
        .into_iter()
        .map(|k| f_unchecked(b, k, t))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `ln(sqrt(pi) Gamma(t+1) / Gamma(t+1/2))`, strictly increasing in `t`.
pub fn worst_case_regret(t: u64) -> RegretBound {
    let tf = t as f64;
    RegretBound {
        value: 0.5 * PI.ln() + ln_gamma_pos(tf + 1.0) - ln_gamma_pos(tf + 0.5),
        kind: RegretKind::WorstCase,
    }
}

/// Data-dependent regret over the portfolio weights between `b_edge` and the
/// empirical mean.
///
/// `b_edge` is the optimal weight at the previous interval endpoint on `side`.
/// The result is clamped to `[0, worst_case_regret(t)]`.
pub fn side_regret(side: Side, b_edge: f64, mean: f64, t: u64) -> RegretBound {
    let b_edge = b_edge.clamp(0.0, 1.0);
    let mean = mean.clamp(0.0, 1.0);
    let (k1, k2, kind) = match side {
        Side::Lower => (
            ceil_half_down(b_edge, t),
            floor_half_up(mean, t),
            RegretKind::LowerSide,
        ),
        Side::Upper => (
            floor_half_up(b_edge, t),
            ceil_half_down(mean, t),
            RegretKind::UpperSide,
        ),
    };
    let tf = t as f64;
    let v = f_unchecked(k1 as f64 / tf, k1, t).max(f_unchecked(k2 as f64 / tf, k2, t));
    RegretBound {
        value: v.clamp(0.0, worst_case_regret(t).value),
        kind,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ln_gamma;
    use std::f64::consts::LN_2;

    #[test]
    fn f_examples() {
        assert!((f_regret(0.5, 1, 2).unwrap() - LN_2).abs() < 1e-13);
        assert!((f_regret(0.0, 0, 1).unwrap() - LN_2).abs() < 1e-13);
        assert!((f_regret(1.0, 1, 1).unwrap() - LN_2).abs() < 1e-13);
        assert_eq!(f_regret(0.0, 1, 1).unwrap(), f64::NEG_INFINITY);
        assert!(f_regret(1.2, 0, 1).is_err());
        assert!(f_regret(0.5, 3, 2).is_err());
    }

    #[test]
    fn worst_case_examples() {
        assert!((worst_case_regret(1).value - LN_2).abs() < 1e-12);
        assert!((worst_case_regret(2).value - (8.0f64 / 3.0).ln()).abs() < 1e-12);
        // sqrt(pi) * 24 / Gamma(9/2) with Gamma(9/2) = 105 sqrt(pi) / 16.
        let exact = (24.0f64 * 16.0 / 105.0).ln();
        assert!((worst_case_regret(4).value - exact).abs() < 1e-12);
        assert!((exact - 1.296_682_202_430_203_5).abs() < 1e-13);
        let mut prev = 0.0;
        for t in 1..2000 {
            let v = worst_case_regret(t).value;
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn argmax_examples() {
        let scan = |b: f64, t: u64| {
            let vals: Vec<f64> = (0..=t).map(|k| f_unchecked(b, k, t)).collect();
            let best = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            (0..=t)
                .filter(|&k| vals[k as usize] >= best - 1e-12)
                .collect::<Vec<_>>()
        };
        assert_eq!(argmax_k(0.5, 10), vec![5]);
        assert_eq!(argmax_k(0.05, 10), vec![0, 1]);
        assert_eq!(argmax_k(1.0, 10), vec![10]);
        for t in [1u64, 2, 7, 10, 33] {
            for j in 0..=997 {
                let b = j as f64 / 997.0;
                let got = argmax_k(b, t);
                let want = scan(b, t);
                assert!(got.iter().all(|k| want.contains(k)), "b={b} t={t}");
            }
        }
    }

    #[test]
    fn local_maxima_at_multiples_of_one_over_t() {
        let t = 10;
        let n = 10_000;
        let h: Vec<f64> = (0..=n).map(|j| h_regret(j as f64 / n as f64, t)).collect();
        let mut peaks = Vec::new();
        for j in 0..=n {
            let left = if j > 0 { h[j - 1] } else { f64::NEG_INFINITY };
            let right = if j < n { h[j + 1] } else { f64::NEG_INFINITY };
            if h[j] > left && h[j] > right {
                peaks.push(j);
            }
        }
        assert_eq!(peaks, (0..=10).map(|i| i * 1000).collect::<Vec<_>>());
    }

    #[test]
    fn peak_heights_dip_towards_the_middle() {
        for t in 1..=50u64 {
            let peak = |i: u64| h_regret(i as f64 / t as f64, t);
            let half = (t + 1).div_ceil(2) - 1;
            for i in 0..half {
                assert!(peak(i + 1) <= peak(i) + 1e-12, "t={t} i={i}");
                assert!(peak(t - i - 1) <= peak(t - i) + 1e-12, "t={t} i={i}");
            }
        }
    }

    #[test]
    fn h_below_worst_case() {
        for t in 1..=100u64 {
            let wc = worst_case_regret(t).value;
            for j in 0..=500 {
                assert!(h_regret(j as f64 / 500.0, t) <= wc + 1e-12);
            }
        }
    }

    #[test]
    fn side_regret_examples() {
        let r = side_regret(Side::Lower, 1.0, 0.5, 10);
        let f_top = f_regret(1.0, 10, 10).unwrap();
        assert!(f_top > f_regret(0.5, 5, 10).unwrap());
        assert!((r.value - f_top.min(worst_case_regret(10).value)).abs() < 1e-12);
        assert_eq!(r.kind, RegretKind::LowerSide);

        let r = side_regret(Side::Upper, 0.3, 0.3, 10);
        assert!((r.value - f_regret(0.3, 3, 10).unwrap()).abs() < 1e-12);

        for t in [1u64, 5, 40, 1000] {
            let wc = worst_case_regret(t).value;
            for j in 0..=40 {
                for i in 0..=40 {
                    let (b, mu) = (j as f64 / 40.0, i as f64 / 40.0);
                    for side in [Side::Lower, Side::Upper] {
                        let v = side_regret(side, b, mu, t).value;
                        assert!((0.0..=wc + 1e-12).contains(&v));
                    }
                }
            }
        }
    }

    #[test]
    fn f_matches_gamma_ratio() {
        // Direct evaluation of the Gamma ratio at small arguments.
        let (b, k, t) = (0.3f64, 2u64, 5u64);
        let direct = PI * b.powi(2) * (1.0 - b).powi(3) * 120.0
            / (ln_gamma(2.5).unwrap().exp() * ln_gamma(3.5).unwrap().exp());
        assert!((f_regret(b, k, t).unwrap() - direct.ln()).abs() < 1e-12);
    }
}
