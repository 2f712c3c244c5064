//! Moshinsky function by direct quadrature of the free propagator acting on
//! a one-sided exponential, independent of any error-function evaluation.

use num_complex::Complex;

use super::quad::adaptive_quad;
use crate::error::{domain, Result};
use crate::scalar::{cplx, lit, Real};

/// `F(x) = ∫₀^∞ K(x, y; t)·e^{−μy} dy` with `K = (2πit)^{−½}e^{i(x−y)²/(2t)}`.
///
/// For `x > 0` the real segment `[0, x]` is integrated directly; the tail
/// runs along `y = x⁺ + e^{iπ/4}s`, where the kernel is a decaying Gaussian.
fn one_sided<T: Real>(x: T, mu: T, t: T, tol: T) -> Result<Complex<T>> {
    let two: T = lit(2.0);
    let pre = (cplx(T::zero(), two * T::PI() * t)).sqrt().inv();
    let kernel = |y: Complex<T>| pre * (cplx(T::zero(), T::one()) * (y - x) * (y - x) / (two * t) - y * mu).exp();
    let start = x.max(T::zero());
    let mut total = Complex::new(T::zero(), T::zero());
    if x > T::zero() {
        total = total + adaptive_quad(|y: T| kernel(cplx(y, T::zero())), T::zero(), x, tol)?.value;
    }
    let e = Complex::from_polar(T::one(), T::FRAC_PI_4());
    let s_max = (two * t).sqrt() * lit(9.0);
    total = total + adaptive_quad(|s: T| kernel(e * s + start) * e, T::zero(), s_max, tol)?.value;
    Ok(total)
}

/// `M(x, k, t)` for purely imaginary `k = ±iμ`, `μ > 0`, by quadrature:
/// `M(x, −iμ, t) = F(−x)` and `M(x, iμ, t) = e^{−μx + iμ²t/2} − F(x)`.
pub fn moshinsky_quadrature<T: Real>(x: T, k: Complex<T>, t: T, tol: T) -> Result<Complex<T>> {
    if k.re != T::zero() || k.im == T::zero() {
        return domain("moshinsky_quadrature", "wavenumber must be purely imaginary and non-zero");
    }
    if !(t > T::zero()) || !t.is_finite() || !x.is_finite() {
        return domain("moshinsky_quadrature", "time must be positive and position finite");
    }
    let mu = k.im.abs();
    if k.im < T::zero() {
        one_sided(-x, mu, t, tol)
    } else {
        let plane = cplx(-mu * x, mu * mu * t * lit(0.5)).exp();
        Ok(plane - one_sided(x, mu, t, tol)?)
    }
}
