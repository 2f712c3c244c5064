//! One-dimensional root bracketing and maximization helpers.

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

/// Bisection on a sign change of `f` over `[lo, hi]`, to absolute width `tol`.
pub fn bisect_root<T: Real, F: Fn(T) -> T>(op: &'static str, f: F, mut lo: T, mut hi: T, tol: T) -> Result<T> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == T::zero() {
        return Ok(lo);
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NoBracket { op });
    }
    let half: T = lit(0.5);
    for _ in 0..400 {
        let mid = (lo + hi) * half;
        if (hi - lo).abs() <= tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * half)
}

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_max<T: Real, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T, tol: T) -> (T, T) {
    let inv_phi: T = lit(0.618_033_988_749_894_9);
    let mut x1 = hi - (hi - lo) * inv_phi;
    let mut x2 = lo + (hi - lo) * inv_phi;
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..300 {
        if (hi - lo).abs() <= tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + (hi - lo) * inv_phi;
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - (hi - lo) * inv_phi;
            f1 = f(x1);
        }
    }
    let mid = (lo + hi) * lit(0.5);
    let fm = f(mid);
    // the bracket shrinks around the best sample; report the best one seen
    [(x1, f1), (x2, f2), (mid, fm)]
        .into_iter()
        .fold((mid, fm), |best, cand| if cand.1 > best.1 { cand } else { best })
}

/// Uniform scan of `[lo, hi]` with `n` intervals, then golden refinement
/// around the best grid point. Suitable for multimodal `f` as long as the
/// grid resolves the separation between local maxima.
pub fn scan_max<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, n: usize, tol: T) -> (T, T) {
    let step = (hi - lo) / from_usize::<T>(n);
    let mut best = (0usize, f(lo));
    for i in 1..=n {
        let v = f(lo + step * from_usize::<T>(i));
        if v > best.1 {
            best = (i, v);
        }
    }
    let i = best.0;
    let a = lo + step * from_usize::<T>(i.saturating_sub(1));
    let b = lo + step * from_usize::<T>((i + 1).min(n));
    let refined = golden_max(&f, a, b, tol);
    let at_grid = (lo + step * from_usize::<T>(i), best.1);
    if refined.1 >= at_grid.1 {
        refined
    } else {
        at_grid
    }
}
