//! Scalar special functions.
//!
//! Everything here is pure and allocation free. Gamma ratios elsewhere in the
//! crate go through [`ln_gamma`] so that nothing overflows at large sample sizes.

use std::f64::consts::{E, PI};

use crate::error::{CsError, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Below this argument `ln_gamma` shifts upward with the recurrence before
/// applying the asymptotic series.
const STIRLING_CUTOFF: f64 = 15.0;

// Stirling series coefficients B_{2k} / (2k (2k - 1)).
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

/// Natural logarithm of the gamma function for `x > 0`.
///
/// Uses the Stirling series for `x >= 15`, the upward recurrence below that,
/// and reflection for `x < 0.5`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(CsError::Domain {
            func: "ln_gamma",
            value: x,
            domain: "(0, inf)",
        });
    }
    Ok(ln_gamma_pos(x))
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x.is_infinite() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        // Gamma(x) Gamma(1 - x) = pi / sin(pi x), both factors positive here.
        return (PI / (PI * x).sin()).ln() - ln_gamma_pos(1.0 - x);
    }
    if x >= STIRLING_CUTOFF {
        return stirling(x);
    }
    let mut z = x;
    let mut prod = 1.0;
    while z < STIRLING_CUTOFF {
        prod *= z;
        z += 1.0;
    }
    stirling(z) - prod.ln()
}

fn stirling(z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for c in STIRLING.iter().rev() {
        series = series * inv2 + c;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series * inv
}

/// Lower branch `W_{-1}` of the Lambert function on `[-1/e, 0)`.
///
/// Returns `w <= -1` with `w e^w = z`.
pub fn lambert_w_m1(z: f64) -> Result<f64> {
    let branch = -1.0 / E;
    if z.is_nan() || z < branch || z >= 0.0 {
        return Err(CsError::Domain {
            func: "lambert_w_m1",
            value: z,
            domain: "[-1/e, 0)",
        });
    }
    if z == branch {
        return Ok(-1.0);
    }

    let residual = |w: f64| w * w.exp() - z;

    // w e^w decreases from 0 to -1/e on (-inf, -1], so residual(w) > 0 left of the root.
    let mut hi = -1.0;
    let mut lo = 2.0 * (-z).ln() - 1.0;
    while residual(lo) <= 0.0 {
        lo *= 2.0;
    }

    let mut w = if z < -0.25 {
        // Series about the branch point in p = sqrt(2 (1 + e z)).
        let p = (2.0 * (1.0 + E * z)).max(0.0).sqrt();
        -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p
    } else {
        let l1 = (-z).ln();
        let l2 = (-l1).ln();
        l1 - l2 + l2 / l1
    };
    if !(w > lo && w < hi) {
        w = 0.5 * (lo + hi);
    }

    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - z;
        if f == 0.0 {
            return Ok(w);
        }
        if f > 0.0 {
            lo = w;
        } else {
            hi = w;
        }
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let mut next = w - f / denom;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - w).abs() <= 4.0 * f64::EPSILON * w.abs()
            || hi - lo <= 4.0 * f64::EPSILON * w.abs()
        {
            return Ok(next);
        }
        w = next;
    }
    Ok(w)
}

/// A pair of probabilities, the arguments of the Bernoulli KL divergence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbPair {
    pub p: f64,
    pub q: f64,
}

impl ProbPair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        for v in [p, q] {
            if !(0.0..=1.0).contains(&v) {
                return Err(CsError::Domain {
                    func: "ProbPair::new",
                    value: v,
                    domain: "[0, 1]",
                });
            }
        }
        Ok(Self { p, q })
    }
}

/// Bernoulli KL divergence `D(p, q)`, `+inf` when `q` is 0 or 1 and differs from `p`.
pub fn kl_bernoulli(pair: ProbPair) -> f64 {
    kl(pair.p, pair.q)
}

pub(crate) fn kl(p: f64, q: f64) -> f64 {
    if p == q {
        return 0.0;
    }
    let a = xlog_ratio(p, q);
    let b = xlog_ratio(1.0 - p, 1.0 - q);
    (a + b).max(0.0)
}

// p ln(p / q) with 0 ln 0 = 0.
fn xlog_ratio(p: f64, q: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else if q == 0.0 {
        f64::INFINITY
    } else {
        p * (p / q).ln()
    }
}

/// `psi(x) = |x| - ln(|x| + 1)`.
pub fn psi(x: f64) -> f64 {
    let a = x.abs();
    a - a.ln_1p()
}

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn inc_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    check_beta_params("inc_beta", a, b)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(CsError::Domain {
            func: "inc_beta",
            value: x,
            domain: "[0, 1]",
        });
    }
    Ok(inc_beta_unchecked(a, b, x))
}

fn check_beta_params(func: &'static str, a: f64, b: f64) -> Result<()> {
    for v in [a, b] {
        if v.is_nan() || v <= 0.0 || v.is_infinite() {
            return Err(CsError::Domain {
                func,
                value: v,
                domain: "(0, inf)",
            });
        }
    }
    Ok(())
}

fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma_pos(a) + ln_gamma_pos(b) - ln_gamma_pos(a + b)
}

fn inc_beta_unchecked(a: f64, b: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return 1.0;
    }
    let ln_front = a * x.ln() + b * (-x).ln_1p() - ln_beta(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        (ln_front.exp() * beta_cf(a, b, x) / a).clamp(0.0, 1.0)
    } else {
        (1.0 - ln_front.exp() * beta_cf(b, a, 1.0 - x) / b).clamp(0.0, 1.0)
    }
}

// Continued fraction for I_x(a, b), modified Lentz.
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=10_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

/// Inverse of the regularized incomplete beta in its last argument:
/// returns `x` with `I_x(a, b) = p`.
pub fn inc_beta_inv(a: f64, b: f64, p: f64) -> Result<f64> {
    check_beta_params("inc_beta_inv", a, b)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(CsError::Domain {
            func: "inc_beta_inv",
            value: p,
            domain: "[0, 1]",
        });
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(1.0);
    }
    let lb = ln_beta(a, b);
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut x = 0.5;
    for _ in 0..300 {
        let f = inc_beta_unchecked(a, b, x) - p;
        if f == 0.0 {
            return Ok(x);
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= 1e-16 * hi.max(1e-300) {
            break;
        }
        let ln_density = (a - 1.0) * x.ln() + (b - 1.0) * (-x).ln_1p() - lb;
        let mut next = x - f / ln_density.exp();
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-17 {
            x = next;
            break;
        }
        x = next;
    }
    Ok(x)
}
