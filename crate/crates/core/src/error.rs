use thiserror::Error;

/// Errors raised by the analytic solvers and the numerical oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// The double well has no odd (excited) bound state at this separation.
    #[error("no odd bound state for well separation l = {separation} (requires l > 1)")]
    NoBoundState { separation: f64 },

    /// Grid or schedule configuration inconsistent with the requested run.
    #[error("configuration error: {0}")]
    Config(String),

    /// Two wave fields live on different grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Adaptive quadrature ran out of subdivisions.
    #[error("quadrature did not converge: estimate {}{:+}i, error estimate {error_estimate:e}", estimate.0, estimate.1)]
    NonConvergence { estimate: (f64, f64), error_estimate: f64 },

    /// A bracketing search did not find a sign change.
    #[error("no bracketed root in {op}")]
    NoBracket { op: &'static str },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(op: &'static str, reason: impl Into<String>) -> Result<T> {
    Err(Error::Domain { op, reason: reason.into() })
}
