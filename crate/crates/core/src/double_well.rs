//! Symmetric double well `−2δ(x + l) − 2δ(x)`: bound states, spectrum, and
//! retrapping of the single-well state `exp(−|x + l|)` when the second well
//! at the origin is switched on.
//!
//! States are written as in the three-region form
//!
//! ```text
//! x ≤ −l:      ±e^{α(x+l)}
//! −l < x ≤ 0:  cosh(α(x+l/2))/cosh(αl/2)   or   sinh(α(x+l/2))/sinh(αl/2)
//! x > 0:       e^{−αx}
//! ```
//!
//! times a normalization constant `C`.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::optimize::bisect_root;
use crate::probability::ProbabilityResult;
use crate::scalar::{lit, one_minus_exp_over, real, sinhc_m1, Real};

/// Lower end of the odd-state root bracket.
pub const ODD_BRACKET_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Normalized bound state of the double well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DwpState<T: Real> {
    pub parity: Parity,
    pub alpha: T,
    pub norm_const: T,
    pub energy: T,
    pub separation: T,
}

impl<T: Real> DwpState<T> {
    fn half_phase(&self) -> T {
        self.alpha * self.separation * lit(0.5)
    }

    /// `(cosh(u)/cosh(h), sinh(u)/sinh(h))` with `u = α(x + l/2)`, written
    /// with `e^{±u−h}` so that neither factor overflows.
    fn inner_ratios(&self, x: T) -> (T, T) {
        let h = self.half_phase();
        let u = self.alpha * (x + self.separation * lit(0.5));
        let (p, m) = ((u - h).exp(), (-u - h).exp());
        let e2h = (-h * lit(2.0)).exp();
        ((p + m) / (T::one() + e2h), (p - m) / -(-h * lit(2.0)).exp_m1())
    }

    fn sign_left(&self) -> T {
        match self.parity {
            Parity::Even => T::one(),
            Parity::Odd => -T::one(),
        }
    }

    /// Unnormalized shape (without `C`).
    pub fn shape(&self, x: T) -> T {
        let (a, l) = (self.alpha, self.separation);
        if x <= -l {
            self.sign_left() * (a * (x + l)).exp()
        } else if x <= T::zero() {
            let (even_part, odd_part) = self.inner_ratios(x);
            match self.parity {
                Parity::Even => even_part,
                Parity::Odd => odd_part,
            }
        } else {
            (-a * x).exp()
        }
    }

    /// Normalized wavefunction `φ(x)`.
    pub fn value(&self, x: T) -> T {
        self.norm_const * self.shape(x)
    }

    fn slope_in_region(&self, x: T, region: i8) -> T {
        let (a, l) = (self.alpha, self.separation);
        let s = match region {
            -1 => self.sign_left() * a * (a * (x + l)).exp(),
            0 => {
                let h = self.half_phase();
                let u = a * (x + l * lit(0.5));
                let (p, m) = ((u - h).exp(), (-u - h).exp());
                match self.parity {
                    Parity::Even => a * (p - m) / (T::one() + (-h * lit(2.0)).exp()),
                    Parity::Odd => a * (p + m) / -(-h * lit(2.0)).exp_m1(),
                }
            }
            _ => -a * (-a * x).exp(),
        };
        self.norm_const * s
    }

    fn region_left_of(&self, x: T) -> i8 {
        if x <= -self.separation {
            -1
        } else if x <= T::zero() {
            0
        } else {
            1
        }
    }

    fn region_right_of(&self, x: T) -> i8 {
        if x < -self.separation {
            -1
        } else if x < T::zero() {
            0
        } else {
            1
        }
    }

    /// One-sided derivative `φ'(x⁻)`.
    pub fn slope_left(&self, x: T) -> T {
        self.slope_in_region(x, self.region_left_of(x))
    }

    /// One-sided derivative `φ'(x⁺)`.
    pub fn slope_right(&self, x: T) -> T {
        self.slope_in_region(x, self.region_right_of(x))
    }

    /// `∫shape(x)·e^{−|x+l|} dx` in closed form.
    fn shape_overlap_with_initial(&self) -> T {
        let (a, l) = (self.alpha, self.separation);
        let one = T::one();
        let half: T = lit(0.5);
        let h = self.half_phase();
        let outer_left = self.sign_left() / (one + a);
        let outer_right = (-l).exp() / (one + a);
        // ∫₀^l e^{(α−1)v} dv and ∫₀^l e^{−(α+1)v} dv
        let e1 = l * one_minus_exp_over((one - a) * l);
        let e2 = l * one_minus_exp_over((one + a) * l);
        let inner = match self.parity {
            // e^{∓h}/cosh h = 1 ∓ tanh h
            Parity::Even => half * ((one - h.tanh()) * e1 + (one + h.tanh()) * e2),
            // e^{−h}/sinh h = 2/expm1(2h), e^{h}/sinh h = 2 + 2/expm1(2h)
            Parity::Odd => {
                let r = lit::<T>(2.0) / (h * lit(2.0)).exp_m1();
                half * (r * e1 - (r + lit(2.0)) * e2)
            }
        };
        outer_left + inner + outer_right
    }

    /// Overlap `⟨e^{−|x+l|} | φ⟩` of the normalized state with the initial
    /// single-well state.
    pub fn overlap_with_initial(&self) -> T {
        self.norm_const * self.shape_overlap_with_initial()
    }
}

/// Residual of the transcendental condition for `α`:
/// `α(1 + tanh(αl/2)) − 2` (even) or `α·coth(αl/2) − 2 + α` (odd).
pub fn residual<T: Real>(alpha: T, l: T, parity: Parity) -> T {
    let two: T = lit(2.0);
    let h = alpha * l * lit(0.5);
    match parity {
        Parity::Even => alpha * (T::one() + h.tanh()) - two,
        Parity::Odd => {
            // α·coth(h) = (2/l)·h/tanh(h), finite as α → 0
            let hc = if h == T::zero() { T::one() } else { h / h.tanh() };
            two / l * hc - two + alpha
        }
    }
}

fn check_separation<T: Real>(op: &'static str, l: T) -> Result<()> {
    if !(l > T::zero()) || !l.is_finite() {
        return domain(op, format!("well separation must be positive, got l = {l}"));
    }
    Ok(())
}

/// Whether the odd state exists at separation `l`.
pub fn odd_exists<T: Real>(l: T) -> bool {
    l > T::one()
}

/// Decay rate `α` of the even (`(1, 2]`) or odd (`(0, 1)`) bound state.
pub fn solve_alpha<T: Real>(l: T, parity: Parity) -> Result<T> {
    check_separation("solve_alpha", l)?;
    let tol = T::epsilon();
    match parity {
        Parity::Even => bisect_root("solve_alpha", |a| residual(a, l, Parity::Even), T::one(), lit(2.0), tol),
        Parity::Odd => {
            if !odd_exists(l) {
                return Err(Error::NoBoundState { separation: l.to_f64().unwrap_or(f64::NAN) });
            }
            let lo = lit::<T>(ODD_BRACKET_EPS).min((l - T::one()) / (l * lit(2.0)));
            let f = |a| residual(a, l, Parity::Odd);
            if f(T::one()) == T::zero() {
                // coth(l/2) rounds to 1 for very large l
                return Ok(T::one());
            }
            bisect_root("solve_alpha", f, lo, T::one(), tol)
        }
    }
}

/// `∫shape² dx` in closed form.
fn shape_norm_sqr<T: Real>(alpha: T, l: T, parity: Parity) -> T {
    let half: T = lit(0.5);
    let h = alpha * l * half;
    let outer = alpha.recip();
    let inner = match parity {
        // (l/2 + sinh(αl)/(2α)) / cosh²h
        Parity::Even => l * half / (h.cosh() * h.cosh()) + h.tanh() / alpha,
        // (sinh(αl)/(2α) − l/2) / sinh²h, kept free of cancellation at small αl
        Parity::Odd => {
            let s = h.sinh();
            if h < T::one() {
                l * half * sinhc_m1(h * lit(2.0)) / (s * s)
            } else {
                T::one() / (h.tanh() * alpha) - l * half / (s * s)
            }
        }
    };
    outer + inner
}

/// Fully populated bound state of the requested parity.
pub fn bound_state<T: Real>(l: T, parity: Parity) -> Result<DwpState<T>> {
    let alpha = solve_alpha(l, parity)?;
    let norm_const = shape_norm_sqr(alpha, l, parity).sqrt().recip();
    Ok(DwpState { parity, alpha, norm_const, energy: -alpha * alpha, separation: l })
}

/// Energies `(−α_even², −α_odd²)`; the excited level is absent for `l ≤ 1`.
pub fn spectrum<T: Real>(l: T) -> Result<(T, Option<T>)> {
    check_separation("spectrum", l)?;
    let ground = bound_state(l, Parity::Even)?.energy;
    let excited = if odd_exists(l) { Some(bound_state(l, Parity::Odd)?.energy) } else { None };
    Ok((ground, excited))
}

fn retrap<T: Real>(state: &DwpState<T>) -> ProbabilityResult<T> {
    let scenario = match state.parity {
        Parity::Even => "retrap-even",
        Parity::Odd => "retrap-odd",
    };
    ProbabilityResult::from_amplitude(scenario, real(state.overlap_with_initial()), vec![("l", state.separation)])
}

/// Probabilities of finding the particle, initially in `exp(−|x + l|)`, in
/// the even and odd double-well states once the second well is switched on.
pub fn retrap_probabilities<T: Real>(l: T) -> Result<(ProbabilityResult<T>, Option<ProbabilityResult<T>>)> {
    check_separation("retrap_probabilities", l)?;
    let even = retrap(&bound_state(l, Parity::Even)?);
    let odd = if odd_exists(l) { Some(retrap(&bound_state(l, Parity::Odd)?)) } else { None };
    Ok((even, odd))
}
