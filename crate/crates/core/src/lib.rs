//! Exact and numerical dynamics of a quantum particle held by switchable
//! attractive delta-function wells.
//!
//! The scaled model is `i ∂ψ/∂t = −∂²ψ/∂x² + V(x,t) ψ` with wells
//! `V = −2μ δ(x − x₀)`. An isolated well of strength `μ` binds a single
//! state `√μ·exp(−μ|x−x₀|)` with energy `−μ²`.
//!
//! * [`specfun`]: complex `erfc`, scaled `erfcx`, and the Moshinsky function.
//! * [`single_well`]: sudden hop of the trap, delayed re-switching, exact
//!   time-dependent wavefunctions.
//! * [`double_well`]: symmetric two-well spectrum and retrapping when a
//!   second well is added.
//! * [`kick`]: momentum kicks, retention and even/odd transitions.
//! * [`oracle`]: Crank–Nicolson integrator, finite-difference eigensolver
//!   and adaptive quadrature used as independent ground truth.
//! * [`validation`]: the analytic-versus-oracle check suite.
//!
//! Every routine is generic over [`Real`]; the `*64` aliases below fix the
//! scalar to `f64`, which is what the accuracy targets assume.

pub mod double_well;
pub mod error;
pub mod kick;
pub mod optimize;
pub mod oracle;
pub mod probability;
pub mod scalar;
pub mod single_well;
pub mod specfun;
pub mod validation;

pub use error::{Error, Result};
pub use probability::ProbabilityResult;
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;

pub type MoshinskyArgs64 = specfun::MoshinskyArgs<f64>;
pub type HopScenario64 = single_well::HopScenario<f64>;
pub type BoundState1W64 = single_well::BoundState1W<f64>;
pub type DwpState64 = double_well::DwpState<f64>;
pub type KickParams64 = kick::KickParams<f64>;
pub type Grid64 = oracle::Grid<f64>;
pub type WaveField64 = oracle::WaveField<f64>;
pub type ScheduleStep64 = oracle::ScheduleStep<f64>;
pub type ProbabilityResult64 = ProbabilityResult<f64>;
