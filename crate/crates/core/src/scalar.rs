//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All analytic formulas are written against [`Real`], so they can be
//! instantiated at `f32` for quick scans or `f64` for validation work. The
//! accuracy targets quoted in the docs assume `f64`.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type usable by the solvers: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(v: f64) -> T {
    T::from_f64(v).expect("literal representable in target float type")
}

/// Converts an integer count into `T`.
#[inline]
pub fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("count representable in target float type")
}

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn real<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub fn frac_1_sqrt_pi<T: Real>() -> T {
    T::FRAC_2_SQRT_PI() * lit(0.5)
}

/// The imaginary unit.
#[inline]
pub fn i_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

#[inline]
pub fn is_finite_c<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `(1 - e^{-y}) / y`, finite at `y = 0`.
pub fn one_minus_exp_over<T: Real>(y: T) -> T {
    if y.abs() < lit(1e-3) {
        // alternating series 1 - y/2 + y^2/6 - y^3/24 + ...
        let mut term = T::one();
        let mut sum = T::one();
        for n in 2..10 {
            term = -term * y / from_usize::<T>(n);
            sum = sum + term;
        }
        sum
    } else {
        -(-y).exp_m1() / y
    }
}

/// Derivative of [`one_minus_exp_over`] with respect to `y`.
pub fn one_minus_exp_over_deriv<T: Real>(y: T) -> T {
    if y.abs() < lit(0.1) {
        // sum_{n>=1} n (-1)^n y^{n-1} / (n+1)!
        let mut sum = T::zero();
        let mut fact = T::one(); // (n+1)!
        let mut pow = T::one(); // y^{n-1}
        for n in 1..20 {
            fact = fact * from_usize::<T>(n + 1);
            let sign = if n % 2 == 0 { T::one() } else { -T::one() };
            sum = sum + sign * from_usize::<T>(n) * pow / fact;
            pow = pow * y;
        }
        sum
    } else {
        let e = (-y).exp();
        (y * e - (-(-y).exp_m1())) / (y * y)
    }
}

/// `sinh(u) / u` for complex `u`, finite at the origin.
pub fn sinhc<T: Real>(u: Complex<T>) -> Complex<T> {
    if u.norm() < lit(1e-2) {
        let u2 = u * u;
        let mut term = Complex::new(T::one(), T::zero());
        let mut sum = term;
        for n in 1..8 {
            let d = from_usize::<T>((2 * n) * (2 * n + 1));
            term = term * u2 / d;
            sum = sum + term;
        }
        sum
    } else {
        u.sinh() / u
    }
}

/// `sinh(u)/u - 1` for real `u`, without cancellation near zero.
pub fn sinhc_m1<T: Real>(u: T) -> T {
    if u.abs() < lit(0.5) {
        let u2 = u * u;
        let mut term = T::one();
        let mut sum = T::zero();
        for n in 1..12 {
            term = term * u2 / from_usize::<T>((2 * n) * (2 * n + 1));
            sum = sum + term;
        }
        sum
    } else {
        u.sinh() / u - T::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helper_series_match_direct_forms() {
        for &y in &[1e-4f64, -3e-4, 2e-3, 0.05, -0.08, 0.3, 2.0] {
            let direct = (1.0 - (-y).exp()) / y;
            assert!((one_minus_exp_over(y) - direct).abs() < 1e-11, "y={y}");
            let reference = if y.abs() < 0.01 {
                -0.5 + y / 3.0 - y * y / 8.0 + y.powi(3) / 30.0
            } else {
                let h = 1e-5;
                ((1.0 - (-(y + h)).exp()) / (y + h) - (1.0 - (-(y - h)).exp()) / (y - h)) / (2.0 * h)
            };
            assert!((one_minus_exp_over_deriv(y) - reference).abs() < 1e-8, "y={y}");
        }
        assert_eq!(one_minus_exp_over(0.0f64), 1.0);
        assert!((one_minus_exp_over_deriv(0.0f64) + 0.5).abs() < 1e-15);
        for &u in &[1e-3f64, 0.2, 0.49, 0.51, 3.0] {
            assert!((sinhc_m1(u) - (u.sinh() / u - 1.0)).abs() < 1e-12 * (1.0 + u.sinh() / u));
        }
        let u = Complex::new(3e-3, 2e-3);
        assert!((sinhc(u) - u.sinh() / u).norm() < 1e-14);
    }
}
