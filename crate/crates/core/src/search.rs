//! Locating interval endpoints of a keep-set.

use crate::sequence::Interval;

/// Walks from `from` towards `to` and returns the last excluded point before
/// the first kept one, to within `precision`.
///
/// `from` is the previous endpoint. If it is already kept it is returned
/// unchanged. Otherwise the step doubles until a kept point is hit (galloping)
/// and the last bracket is bisected. The returned point is always excluded, so
/// the endpoint errs on the wide side. If every probed point up to `to` is
/// excluded, `to` itself is returned.
///
/// Works in either direction: `from > to` searches downwards.
pub fn find_boundary<F: FnMut(f64) -> bool>(
    mut excluded: F,
    from: f64,
    to: f64,
    precision: f64,
) -> f64 {
    if !excluded(from) {
        return from;
    }
    let dir = if to >= from { 1.0 } else { -1.0 };
    let span = (to - from).abs();
    let at = |s: f64| if s >= span { to } else { from + dir * s };

    // Offsets from `from`: `lo` excluded, `hi` kept.
    let mut lo = 0.0;
    let mut step = precision;
    let hi = loop {
        let s = (lo + step).min(span);
        if !excluded(at(s)) {
            break s;
        }
        if s >= span {
            return to;
        }
        lo = s;
        step *= 2.0;
    };

    let mut hi = hi;
    while hi - lo > precision {
        let mid = 0.5 * (lo + hi);
        if excluded(at(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(lo)
}

/// Shrinks `prev` to the keep-set of the current step.
///
/// The lower endpoint moves up from `prev.lower` towards the empirical mean and
/// the upper endpoint moves down from `prev.upper`; the result is nested in
/// `prev`. When the mean has left `prev` the result can collapse to a point.
pub fn shrink<L, U>(
    prev: Interval,
    mean: f64,
    precision: f64,
    excluded_below: L,
    excluded_above: U,
) -> Interval
where
    L: FnMut(f64) -> bool,
    U: FnMut(f64) -> bool,
{
    let to_lower = mean.clamp(prev.lower, prev.upper);
    let lower = find_boundary(excluded_below, prev.lower, to_lower, precision);
    let to_upper = mean.clamp(lower, prev.upper);
    let upper = find_boundary(excluded_above, prev.upper, to_upper, precision);
    Interval::new(lower, upper.max(lower))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kept_start_is_returned() {
        assert_eq!(find_boundary(|m| m < 0.1, 0.2, 0.9, 1e-4), 0.2);
    }

    #[test]
    fn everything_excluded_returns_target() {
        assert_eq!(find_boundary(|_| true, 0.1, 0.6, 1e-4), 0.6);
        assert_eq!(find_boundary(|_| true, 0.9, 0.3, 1e-4), 0.3);
    }

    #[test]
    fn counts_evaluations_for_nearby_boundary() {
        let mut calls = 0;
        let b = find_boundary(
            |m| {
                calls += 1;
                m < 0.30005
            },
            0.3,
            0.8,
            1e-4,
        );
        assert!(b < 0.30005 && b > 0.30005 - 1e-4);
        assert!(calls <= 3);
    }

    proptest! {
        #[test]
        fn brackets_threshold(from in 0.0f64..0.5, gap in 0.0f64..0.5, frac in 0.0f64..1.0) {
            let to = from + gap;
            let boundary = from + frac * gap;
            let up = find_boundary(|m| m <= boundary, from, to, 1e-4);
            prop_assert!(up <= boundary + 1e-15);
            prop_assert!(up >= boundary - 1e-4 - 1e-12 || up == to);

            let down_from = 1.0 - from;
            let down_to = down_from - gap;
            let mirrored = 1.0 - boundary;
            let down = find_boundary(|m| m >= mirrored, down_from, down_to, 1e-4);
            prop_assert!(down >= mirrored - 1e-15);
            prop_assert!(down <= mirrored + 1e-4 + 1e-12 || down == down_to);
        }
    }
}
