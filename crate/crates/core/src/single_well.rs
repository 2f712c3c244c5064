//! Single-trap scenarios: the sudden hop of a well by `l` with a strength
//! change `1 → μ`, and the symmetric hop with a free-flight delay `τ`.
//!
//! The particle starts in `exp(−|x+l|)` (well of unit strength at `−l`).
//! Exact post-switch wavefunctions are sums of Moshinsky functions
//! evaluated at doubled time `2t`.

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::optimize::{bisect_root, scan_max};
use crate::oracle::WaveField;
use crate::probability::ProbabilityResult;
use crate::scalar::{
    cplx, frac_1_sqrt_pi, from_usize, i_unit, lit, one_minus_exp_over, one_minus_exp_over_deriv, real, Real,
};
use crate::specfun::{exp_erfc, moshinsky, moshinsky_k_derivatives, MoshinskyArgs};

/// Below this `|μ − 1|` the `1/(1 − μ)` divided differences are replaced
/// by their Taylor expansion about `μ = 1`.
pub const MU_ONE_THRESHOLD: f64 = 1e-4;

/// Grid step above which [`propagate_kernel`] logs an accuracy warning.
pub const KERNEL_MAX_DX: f64 = 0.05;

/// Number of scan intervals used by [`delay_optimum`] before refinement.
pub const DELAY_SCAN_POINTS: usize = 4000;

const DIVDIFF_TERMS: usize = 6;

/// Parameters of a hop: distance `l`, new strength `μ`, delay `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopScenario<T: Real> {
    pub l: T,
    pub mu: T,
    pub tau: T,
}

impl<T: Real> HopScenario<T> {
    /// Validates `l > 0`, `μ > 0`, `τ ≥ 0`, and `μ = 1` whenever `τ > 0`.
    pub fn new(l: T, mu: T, tau: T) -> Result<Self> {
        const OP: &str = "HopScenario";
        if !(l > T::zero()) || !l.is_finite() {
            return domain(OP, format!("hop distance must be positive, got l = {l}"));
        }
        if !(mu > T::zero()) || !mu.is_finite() {
            return domain(OP, format!("strength ratio must be positive, got mu = {mu}"));
        }
        if !(tau >= T::zero()) || !tau.is_finite() {
            return domain(OP, format!("delay must be non-negative, got tau = {tau}"));
        }
        if tau > T::zero() && mu != T::one() {
            return domain(OP, "a delayed switch requires mu = 1");
        }
        Ok(Self { l, mu, tau })
    }

    pub fn initial(&self) -> BoundState1W<T> {
        BoundState1W { center: -self.l, strength: T::one(), energy: -T::one(), decay_rate: T::one() }
    }

    pub fn target(&self) -> BoundState1W<T> {
        BoundState1W { center: T::zero(), strength: self.mu, energy: -self.mu * self.mu, decay_rate: self.mu }
    }

    /// Retention probability of the scenario: the instantaneous overlap for
    /// `τ = 0`, the delayed amplitude otherwise.
    pub fn retention(&self) -> Result<ProbabilityResult<T>> {
        if self.tau == T::zero() {
            retention_probability(self.mu, self.l)
        } else {
            let a = delayed_amplitude(self.tau, self.l)?;
            Ok(ProbabilityResult::from_amplitude("delay", a, vec![("l", self.l), ("tau", self.tau)]))
        }
    }
}

/// Bound state of an isolated well `−2μδ(x − center)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState1W<T: Real> {
    pub center: T,
    pub strength: T,
    pub energy: T,
    pub decay_rate: T,
}

impl<T: Real> BoundState1W<T> {
    pub fn new(center: T, strength: T) -> Result<Self> {
        if !(strength > T::zero()) || !strength.is_finite() || !center.is_finite() {
            return domain("BoundState1W", format!("strength must be positive, got {strength}"));
        }
        Ok(Self { center, strength, energy: -strength * strength, decay_rate: strength })
    }

    /// `√μ·exp(−μ|x − center| − iEt)`.
    pub fn value(&self, x: T, t: T) -> Complex<T> {
        let amp = self.strength.sqrt() * (-self.decay_rate * (x - self.center).abs()).exp();
        Complex::from_polar(amp, -self.energy * t)
    }
}

/// Initial state `exp(−|x + l| + it)`.
pub fn initial_state<T: Real>(x: T, l: T, t: T) -> Complex<T> {
    Complex::from_polar((-(x + l).abs()).exp(), t)
}

/// Final bound state `√μ·exp(−μ|x| + iμ²t)`.
pub fn final_state<T: Real>(x: T, mu: T, t: T) -> Result<Complex<T>> {
    Ok(BoundState1W::new(T::zero(), mu)?.value(x, t))
}

fn check_mu_l<T: Real>(op: &'static str, mu: T, l: T) -> Result<()> {
    if !(mu > T::zero()) || !mu.is_finite() {
        return domain(op, format!("strength ratio must be positive, got mu = {mu}"));
    }
    if !(l >= T::zero()) || !l.is_finite() {
        return domain(op, format!("hop distance must be non-negative, got l = {l}"));
    }
    Ok(())
}

/// Real overlap `A(μ) = ∫ψ_in·ψ_fin dx = 2√μ(μe^{−l} − e^{−μl})/(μ² − 1)`.
///
/// Written as `2√μ·e^{−l}(1 + l·q((μ−1)l))/(1 + μ)` with
/// `q(y) = (1 − e^{−y})/y`, which is regular at `μ = 1`.
pub fn retention_amplitude<T: Real>(mu: T, l: T) -> Result<T> {
    check_mu_l("retention_probability", mu, l)?;
    let two: T = lit(2.0);
    let delta = mu - T::one();
    let y = delta * l;
    if y < -T::one() {
        // far below μ = 1 the direct form has no cancellation and cannot overflow
        return Ok(two * mu.sqrt() * (mu * (-l).exp() - (-mu * l).exp()) / (mu * mu - T::one()));
    }
    Ok(two * mu.sqrt() * ((-l).exp() + l * (-l).exp() * one_minus_exp_over(y)) / (T::one() + mu))
}

/// Probability of remaining bound after the well hops by `l` and changes
/// strength to `μ`.
pub fn retention_probability<T: Real>(mu: T, l: T) -> Result<ProbabilityResult<T>> {
    let a = retention_amplitude(mu, l)?;
    Ok(ProbabilityResult::from_amplitude("retention", real(a), vec![("mu", mu), ("l", l)]))
}

/// `d ln A / dμ`, used to locate the optimum strength.
fn log_amplitude_slope<T: Real>(mu: T, l: T) -> T {
    let half: T = lit(0.5);
    let y = (mu - T::one()) * l;
    let q = one_minus_exp_over(y);
    half / mu + l * l * one_minus_exp_over_deriv(y) / (T::one() + l * q) - T::one() / (T::one() + mu)
}

/// Strength `μ_max` maximizing the retention probability at distance `l`,
/// and the maximum itself.
pub fn optimal_strength<T: Real>(l: T) -> Result<(T, T)> {
    if !(l > T::zero()) || !l.is_finite() {
        return domain("optimal_strength", format!("hop distance must be positive, got l = {l}"));
    }
    let lo: T = lit(1e-9);
    let hi: T = lit(1e4);
    let tol = lit::<T>(1e-13).max(T::epsilon() * lit(4.0));
    let mu = bisect_root("optimal_strength", |m| log_amplitude_slope(m, l), lo, hi, tol)?;
    let p = retention_probability(mu, l)?.value;
    Ok((mu, p))
}

fn check_time<T: Real>(op: &'static str, t: T) -> Result<()> {
    if !(t > T::zero()) || !t.is_finite() {
        return domain(op, format!("time must be positive and finite, got t = {t}"));
    }
    Ok(())
}

fn mosh<T: Real>(x: T, k: Complex<T>, t: T) -> Result<Complex<T>> {
    moshinsky(MoshinskyArgs::new(x, k, t)?)
}

/// `[M(x, iμ, T) − M(x, i, T)] / (iμ − i)`.
fn divided_difference<T: Real>(x: T, mu: T, t2: T) -> Result<Complex<T>> {
    let i = i_unit::<T>();
    let dk = i * (mu - T::one());
    if (mu - T::one()).abs() < lit(MU_ONE_THRESHOLD) {
        let derivs = moshinsky_k_derivatives(MoshinskyArgs::new(x, i, t2)?, DIVDIFF_TERMS)?;
        let mut sum = Complex::new(T::zero(), T::zero());
        let mut pow = real::<T>(T::one());
        let mut fact = T::one();
        for (n, d) in derivs.iter().enumerate().skip(1) {
            fact = fact * from_usize::<T>(n);
            sum = sum + *d * pow / fact;
            pow = pow * dk;
        }
        Ok(sum)
    } else {
        Ok((mosh(x, i * mu, t2)? - mosh(x, i, t2)?) / dk)
    }
}

/// Exact wavefunction at time `t` after the well hops from `−l` to `0` and
/// its strength becomes `μ`.
///
/// `μ = 0` is free flight ([`free_evolution`]). Near `μ = 1` the singular
/// `1/(1 − μ)` coefficients are handled through Taylor-expanded divided
/// differences, so the result is smooth in `μ`.
pub fn evolve_after_switch<T: Real>(x: T, t: T, mu: T, l: T) -> Result<Complex<T>> {
    const OP: &str = "evolve_after_switch";
    check_time(OP, t)?;
    if !(mu >= T::zero()) || !mu.is_finite() {
        return domain(OP, format!("strength ratio must be non-negative, got mu = {mu}"));
    }
    if !(l >= T::zero()) || !l.is_finite() || !x.is_finite() {
        return domain(OP, "position and hop distance must be finite, with l >= 0");
    }
    if mu == T::zero() {
        return free_evolution(x, t, l);
    }
    let i = i_unit::<T>();
    let t2 = t * lit(2.0);
    let a = x.abs() + l;
    let b = x.abs();
    let el = (-l).exp();

    let free = mosh(x + l, -i, t2)? + mosh(-x - l, -i, t2)?;
    let bracket = mosh(a, i * mu, t2)? - mosh(a, -i, t2)? + (mosh(b, i * mu, t2)? - mosh(b, -i, t2)?) * el;
    let dd = divided_difference(a, mu, t2)? - divided_difference(b, mu, t2)? * el;
    Ok(free + bracket * (mu / (T::one() + mu)) - i * dd * mu)
}

/// `exp(a)·erfc(w)` for the combinations used below, where `a − w²` is
/// purely imaginary.
fn ee<T: Real>(a: Complex<T>, w: Complex<T>) -> Result<Complex<T>> {
    exp_erfc(a, w)
}

/// Free evolution of `exp(−|x + l|)` after the well is switched off:
/// `½e^{it}[e^{x+l}erfc(√(it) + (x+l)/(2√(it))) + e^{−x−l}erfc(√(it) − (x+l)/(2√(it)))]`.
pub fn free_evolution<T: Real>(x: T, t: T, l: T) -> Result<Complex<T>> {
    check_time("free_evolution", t)?;
    let half: T = lit(0.5);
    let s = (i_unit::<T>() * t).sqrt();
    let a = x + l;
    let w = real::<T>(a) / (s * lit::<T>(2.0));
    let it = i_unit::<T>() * t;
    Ok((ee(it + a, s + w)? + ee(it - a, s - w)?) * half)
}

/// Exact wavefunction for the symmetric hop `μ = 1`.
pub fn evolve_symmetric<T: Real>(x: T, t: T, l: T) -> Result<Complex<T>> {
    check_time("evolve_symmetric", t)?;
    let half: T = lit(0.5);
    let quarter: T = lit(0.25);
    let two: T = lit(2.0);
    let i = i_unit::<T>();
    let it = i * t;
    let s = it.sqrt();
    let a = x.abs() + l;
    let b = x.abs();
    let wa = real::<T>(a) / (s * two);
    let wb = real::<T>(b) / (s * two);
    let root = (it * T::PI().recip()).sqrt();

    let mut r = free_evolution(x, t, l)?;
    r = r + (real::<T>(half + a) - it * two) * ee(it - a, wa - s)? * half;
    r = r - ee(it + a, s + wa)? * quarter;
    r = r + (real::<T>(half - b) + it * two) * ee(it - b - l, wb - s)? * half;
    r = r - ee(it + b - l, s + wb)? * quarter;
    r = r - root * (cplx(T::zero(), a * a / (t * lit(4.0)))).exp();
    r = r + root * (cplx(-l, b * b / (t * lit(4.0)))).exp();
    Ok(r)
}

/// Large-`t` form of [`free_evolution`]:
/// `t^{3/2}/√(iπ) · e^{i(x+l)²/(4t)} / (t² + ((x+l)/2)²)`.
///
/// Asymptotic only; accuracy improves as `t` grows past `|x + l|`.
pub fn free_asymptotic<T: Real>(x: T, t: T, l: T) -> Result<Complex<T>> {
    check_time("free_asymptotic", t)?;
    let a = x + l;
    let half_a = a * lit(0.5);
    let pre = t.powf(lit(1.5)) / (t * t + half_a * half_a);
    let sqrt_ipi = (i_unit::<T>() * T::PI()).sqrt();
    Ok(Complex::from_polar(pre, a * a / (t * lit(4.0))) / sqrt_ipi)
}

/// Long-time value `e^{it−l}(1 + l)` of the `μ = 1` wavefunction at the
/// well center.
pub fn asymptotic_center_value<T: Real>(l: T, t: T) -> Complex<T> {
    Complex::from_polar((T::one() + l) * (-l).exp(), t)
}

/// Green's function of the well `−2μδ(x)`:
/// `K_free + (μ/2)e^{−μ(|x|+|x'|−iμt)}erfc((|x|+|x'|−2iμt)/(2√(it)))`.
pub fn green_kernel<T: Real>(x: T, xp: T, t: T, mu: T) -> Result<Complex<T>> {
    check_time("green_kernel", t)?;
    let two: T = lit(2.0);
    let it = i_unit::<T>() * t;
    let sqrt_it = it.sqrt();
    let d = x - xp;
    let free = Complex::from_polar(T::one(), d * d / (t * lit(4.0))) / ((it * T::PI()).sqrt() * two);
    if mu == T::zero() {
        return Ok(free);
    }
    let s = x.abs() + xp.abs();
    let a = cplx(-mu * s, mu * mu * t);
    let w = cplx(s, -two * mu * t) / (sqrt_it * two);
    Ok(free + exp_erfc(a, w)? * (mu * lit(0.5)))
}

/// `∫K(x, x'; t)·ψ(x') dx'` by the trapezoid rule over the field's nodes.
///
/// An independent route to the post-switch wavefunction that does not go
/// through the Moshinsky decomposition.
pub fn propagate_kernel<T: Real>(initial: &WaveField<T>, mu: T, t: T, x: T) -> Result<Complex<T>> {
    check_time("propagate_kernel", t)?;
    if !(mu >= T::zero()) || !mu.is_finite() {
        return domain("propagate_kernel", format!("strength ratio must be non-negative, got mu = {mu}"));
    }
    let grid = &initial.grid;
    if grid.dx > lit(KERNEL_MAX_DX) {
        log::warn!("propagate_kernel: grid step {} exceeds {KERNEL_MAX_DX}; expect reduced accuracy", grid.dx);
    }
    let n = grid.n_nodes();
    let mut sum = Complex::new(T::zero(), T::zero());
    for (j, v) in initial.values.iter().enumerate() {
        if v.norm_sqr() == T::zero() {
            continue;
        }
        let w = if j == 0 || j + 1 == n { lit(0.5) } else { T::one() };
        sum = sum + green_kernel(x, grid.x(j), t, mu)? * *v * w;
    }
    Ok(sum * grid.dx)
}

/// Overlap of the freely evolved state at `t = τ` with the unit-strength
/// bound state at the origin:
///
/// `A(τ) = −2iτe^{−l}[M(0,−i,2τ) + M(0,i,2τ)] + (1 − 2iτ − l)M(l,−i,2τ)
///        − (1 − 2iτ + l)M(l,i,2τ) + 2√(iτ/π)e^{il²/(4τ)} + (1 + l)e^{iτ−l}`.
pub fn delayed_amplitude<T: Real>(tau: T, l: T) -> Result<Complex<T>> {
    const OP: &str = "delayed_amplitude";
    if !(tau >= T::zero()) || !tau.is_finite() {
        return domain(OP, format!("delay must be non-negative, got tau = {tau}"));
    }
    if !(l >= T::zero()) || !l.is_finite() {
        return domain(OP, format!("hop distance must be non-negative, got l = {l}"));
    }
    if tau == T::zero() {
        return Ok(real((T::one() + l) * (-l).exp()));
    }
    let two: T = lit(2.0);
    let i = i_unit::<T>();
    let t2 = tau * two;
    let itau2 = i * t2;
    let mut a = -itau2 * (-l).exp() * (mosh(T::zero(), -i, t2)? + mosh(T::zero(), i, t2)?);
    a = a + (real::<T>(T::one() - l) - itau2) * mosh(l, -i, t2)?;
    a = a - (real::<T>(T::one() + l) - itau2) * mosh(l, i, t2)?;
    let root = (i * tau).sqrt() * frac_1_sqrt_pi::<T>() * two;
    if l > T::zero() {
        a = a + root * Complex::from_polar(T::one(), l * l / (tau * lit(4.0)));
    } else {
        a = a + root;
    }
    Ok(a + Complex::from_polar((T::one() + l) * (-l).exp(), tau))
}

/// Search cap `10·l²` for [`delay_optimum`].
pub fn delay_cap<T: Real>(l: T) -> T {
    l * l * lit(10.0)
}

/// Delay `τ*` maximizing `|A(τ)|²` on `[0, 10·l²]`, and the maximum.
pub fn delay_optimum<T: Real>(l: T) -> Result<(T, T)> {
    if !(l > T::zero()) || !l.is_finite() {
        return domain("delay_optimum", format!("hop distance must be positive, got l = {l}"));
    }
    let p = |tau: T| delayed_amplitude(tau, l).map(|a| a.norm_sqr()).unwrap_or(T::zero());
    let tol = lit::<T>(1e-7).max(T::epsilon().sqrt() * lit(4.0));
    Ok(scan_max(p, T::zero(), delay_cap(l), DELAY_SCAN_POINTS, tol))
}
