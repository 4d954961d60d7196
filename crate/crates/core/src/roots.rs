//! Bracketed root finding for increasing functions: regula falsi steps,
//! with a bisection step whenever the bracket failed to halve.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

pub(crate) const MAX_ITER: usize = 400;

/// Root of an increasing `f` on `[lo, hi]` given `f(lo) < 0 < f(hi)`.
/// Returns whichever final bracket end has the smaller `|f|`.
pub(crate) fn solve_increasing<T, F>(mut f: F, mut lo: T, mut f_lo: T, mut hi: T, mut f_hi: T, tol: T) -> Result<T, T>
where
    T: Real,
    F: FnMut(T) -> Result<T, T>,
{
    debug_assert!(f_lo < T::zero() && f_hi > T::zero());
    let half: T = lit(0.5);
    let mut secant = true;
    for _ in 0..MAX_ITER {
        let width = hi - lo;
        if width <= tol {
            return Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi });
        }
        let mid = lo + width * half;
        if mid <= lo || mid >= hi {
            return Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi });
        }
        let mut x = if secant { lo - f_lo * width / (f_hi - f_lo) } else { mid };
        if !(x > lo && x < hi) {
            x = mid;
        }
        let fx = f(x)?;
        if fx == T::zero() {
            return Ok(x);
        }
        if fx < T::zero() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        secant = hi - lo <= width * half;
    }
    Err(Error::NoConvergence {
        context: "bracketed root search",
        detail: format!("bracket [{lo}, {hi}] still wider than {tol} after {MAX_ITER} steps"),
    })
}
