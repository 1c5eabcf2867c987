//! Bracketed root finding: bisection with optional Newton polishing.

use crate::error::{Error, Result};

/// Bisect `f` on [lo, hi] until the bracket width is below `tol`.
///
/// Requires a sign change over the initial bracket (endpoints with zero
/// value are accepted directly).
pub(crate) fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::OutOfRange {
            value: 0.0,
            lo,
            hi,
        });
    }

    let (mut lo, mut hi, mut flo) = (lo, hi, flo);
    // 1074 halvings exhaust f64; in practice the width test exits far sooner.
    for _ in 0..1100 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Newton iterations from `x0`, clamped to [lo, hi]. Falls back to the
/// starting point when the derivative is unusable.
pub(crate) fn newton_polish<F, D>(f: F, df: D, x0: f64, lo: f64, hi: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> Option<f64>,
{
    let mut x = x0;
    for _ in 0..50 {
        let d = match df(x) {
            Some(d) if d.abs() > f64::MIN_POSITIVE => d,
            _ => return x,
        };
        let step = f(x) / d;
        let next = (x - step).clamp(lo, hi);
        if (next - x).abs() <= tol {
            return next;
        }
        x = next;
    }
    x
}
