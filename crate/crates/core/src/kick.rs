//! Momentum kicks `ψ → e^{ikx}ψ`: survival in the single well and
//! even ↔ odd transitions in the double well.
//!
//! A kick of momentum `k` imparts kinetic energy `k²`; in the frame of the
//! particle it is equivalent to a trap set in motion with velocity `−2k`.

use num_complex::Complex;

use crate::double_well::{bound_state, odd_exists, DwpState, Parity};
use crate::error::{domain, Error, Result};
use crate::optimize::scan_max;
use crate::probability::ProbabilityResult;
use crate::scalar::{cplx, lit, real, sinhc, Real};

/// Scan resolution of [`transition_optimum`] before golden refinement.
pub const TRANSITION_SCAN_POINTS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickParams<T: Real> {
    pub k: T,
    pub l: T,
}

impl<T: Real> KickParams<T> {
    /// Parameters for a double-well transition; requires `l > 1`.
    pub fn new(k: T, l: T) -> Result<Self> {
        check_k(k)?;
        check_l(l)?;
        Ok(Self { k, l })
    }

    pub fn kinetic_energy(&self) -> T {
        self.k * self.k
    }

    /// Velocity of the equivalent moving trap.
    pub fn trap_velocity(&self) -> T {
        -self.k * lit(2.0)
    }

    pub fn transition(&self) -> Result<ProbabilityResult<T>> {
        kick_transition(self.k, self.l)
    }
}

fn check_k<T: Real>(k: T) -> Result<()> {
    if !k.is_finite() {
        return domain("kick", format!("kick momentum must be finite, got k = {k}"));
    }
    Ok(())
}

fn check_l<T: Real>(l: T) -> Result<()> {
    if !(l > T::zero()) || !l.is_finite() {
        return domain("kick", format!("well separation must be positive, got l = {l}"));
    }
    if !odd_exists(l) {
        return Err(Error::NoBoundState { separation: l.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(())
}

/// Survival probability `(4/(4 + k²))²` of the unit-well state.
pub fn kick_retention<T: Real>(k: T) -> Result<ProbabilityResult<T>> {
    check_k(k)?;
    let four: T = lit(4.0);
    let a = four / (four + k * k);
    Ok(ProbabilityResult::from_amplitude("kick-retention", real(a), vec![("k", k)]))
}

/// `∫e^{ikx}φ_even(x)φ_odd(x) dx` over the three regions in closed form.
fn transition_amplitude<T: Real>(k: T, even: &DwpState<T>, odd: &DwpState<T>) -> Complex<T> {
    let l = even.separation;
    let half: T = lit(0.5);
    let (ae, ao) = (even.alpha, odd.alpha);
    let beta = ae + ao;
    let ik = cplx(T::zero(), k);
    let cc = even.norm_const * odd.norm_const;

    let left = -Complex::from_polar(T::one(), -k * l) / (ik + beta);
    let right = (real::<T>(beta) - ik).inv();

    // cosh(a u)·sinh(b u) = ½[sinh((b+a)u) + sinh((b−a)u)], u = x + l/2
    let big_l = l * half;
    let sinh_moment = |g: T| -> Complex<T> {
        // ∫_{−L}^{L} sinh(g u)·e^{iku} du
        (sinhc((ik + g) * big_l) - sinhc((ik - g) * big_l)) * big_l
    };
    let (he, ho) = (ae * big_l, ao * big_l);
    let inner = Complex::from_polar(T::one(), -k * big_l) * (sinh_moment(ao + ae) + sinh_moment(ao - ae)) * half
        / (he.cosh() * ho.sinh());

    (left + inner + right) * cc
}

/// Probability of an even → odd transition caused by a kick `k` in the
/// double well of separation `l > 1`. Exactly symmetric under `k → −k`.
pub fn kick_transition<T: Real>(k: T, l: T) -> Result<ProbabilityResult<T>> {
    check_k(k)?;
    check_l(l)?;
    let even = bound_state(l, Parity::Even)?;
    let odd = bound_state(l, Parity::Odd)?;
    // A(−k) = conj(A(k)); evaluating at |k| makes the symmetry exact
    let a = transition_amplitude(k.abs(), &even, &odd);
    Ok(ProbabilityResult::from_amplitude("kick-transition", a, vec![("k", k), ("l", l)]))
}

/// Upper end `4π/l` of the momentum search in [`transition_optimum`].
pub fn transition_k_cap<T: Real>(l: T) -> T {
    T::PI() * lit(4.0) / l
}

/// Kinetic energy `k²_max` of the most efficient kick on `(0, (4π/l)²]`,
/// the transition probability there, and the level splitting
/// `ΔE = α_even² − α_odd²`.
pub fn transition_optimum<T: Real>(l: T) -> Result<(T, T, T)> {
    check_l(l)?;
    let even = bound_state(l, Parity::Even)?;
    let odd = bound_state(l, Parity::Odd)?;
    let p = |k: T| transition_amplitude(k, &even, &odd).norm_sqr();
    let tol = lit::<T>(1e-9).max(T::epsilon().sqrt() * lit(4.0));
    let (k, pmax) = scan_max(p, T::zero(), transition_k_cap(l), TRANSITION_SCAN_POINTS, tol);
    let delta_e = even.alpha * even.alpha - odd.alpha * odd.alpha;
    Ok((k * k, pmax, delta_e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kick_retention(k: f64) -> Result<ProbabilityResult<f64>> {
        super::kick_retention(k)
    }
    fn transition_optimum(l: f64) -> Result<(f64, f64, f64)> {
        super::transition_optimum(l)
    }

    fn trapz(f: impl Fn(f64) -> Complex<f64>, a: f64, b: f64, n: usize) -> Complex<f64> {
        let h = (b - a) / n as f64;
        let mut s = (f(a) + f(b)) * 0.5;
        for j in 1..n {
            s += f(a + j as f64 * h);
        }
        s * h
    }

    #[test]
    fn retention_examples() {
        assert_eq!(kick_retention(0.0).unwrap().value, 1.0);
        let r = kick_retention(2.0).unwrap();
        assert_eq!(r.amplitude.re, 0.5);
        assert!((r.value - 0.25).abs() < 1e-15);
        assert!((kick_retention(10.0).unwrap().value - (4.0f64 / 104.0).powi(2)).abs() < 1e-15);
        let q = trapz(|x| Complex::from_polar((-2.0 * x.abs()).exp(), 10.0 * x), -30.0, 30.0, 600_000);
        assert!((q.re - 4.0 / 104.0).abs() < 1e-6 && q.im.abs() < 1e-9);
        assert!(kick_retention(f64::NAN).is_err());
    }

    #[test]
    fn retention_is_even_and_decreasing() {
        let mut prev = 1.0;
        for j in 1..200 {
            let k = j as f64 * 0.1;
            let p = kick_retention(k).unwrap().value;
            assert_eq!(p, kick_retention(-k).unwrap().value);
            assert!(p < prev);
            prev = p;
        }
    }

    #[test]
    fn params_and_constraints() {
        let p = KickParams::new(1.5, 2.0).unwrap();
        assert_eq!(p.kinetic_energy(), 2.25);
        assert_eq!(p.trap_velocity(), -3.0);
        assert!(KickParams::new(1.0, 1.0).is_err());
        assert!(matches!(kick_transition(1.0, 0.8), Err(Error::NoBoundState { .. })));
        assert!(transition_optimum(1.0).is_err());
    }

    #[test]
    fn transition_vanishes_without_kick() {
        for &l in &[1.5, 2.0, 3.0, 5.0] {
            assert!(kick_transition(0.0, l).unwrap().value < 1e-12);
        }
    }

    #[test]
    fn transition_matches_quadrature() {
        for &(k, l) in &[(1.5, 2.0), (0.3, 1.2), (4.0, 6.0)] {
            let e = bound_state(l, Parity::Even).unwrap();
            let o = bound_state(l, Parity::Odd).unwrap();
            let q = trapz(|x| Complex::from_polar(e.value(x) * o.value(x), k * x), -l - 40.0, 40.0, 800_000);
            let a = kick_transition(k, l).unwrap().amplitude;
            assert!((a - q).norm() < 1e-7, "k={k} l={l}: {a} vs {q}");
        }
    }

    #[test]
    fn transition_is_symmetric_and_bounded() {
        for &l in &[1.1, 2.0, 4.5, 8.0] {
            for j in 0..=40 {
                let k = j as f64 * 0.5;
                let p = kick_transition(k, l).unwrap().value;
                assert_eq!(p, kick_transition(-k, l).unwrap().value);
                assert!((0.0..=1.0).contains(&p));
            }
        }
    }

    #[test]
    fn optimum_examples() {
        let (k2, p, de) = transition_optimum(2.0).unwrap();
        assert!(k2 > 0.0 && p > 0.0 && p <= 1.0 && de > 0.0);
        let mut best = (0.0, 0.0);
        let cap = transition_k_cap(2.0);
        let mut k = 0.0;
        while k <= cap {
            let v = kick_transition(k, 2.0).unwrap().value;
            if v > best.1 {
                best = (k, v);
            }
            k += 1e-3;
        }
        assert!((k2.sqrt() - best.0).abs() <= 1e-3);
        assert!(p >= best.1 - 1e-12);
    }
}
