//! Independent numerical ground truth for the closed-form results.

mod eigen;
mod grid;
mod propagator;
mod quad;
mod tdse;

use num_complex::Complex;

pub use eigen::{convention_self_test, fd_eigenstates, MAX_STATES};
pub use grid::{
    delayed_schedule, density_l2_discrepancy, DEFAULT_DT, DEFAULT_DX, DEFAULT_HALF_WIDTH, double_well_schedule, hop_schedule, Grid, ScheduleStep, WaveField, Well,
};
pub use propagator::moshinsky_quadrature;
pub use quad::{adaptive_quad, adaptive_quad_points, QuadResult, MAX_SUBDIVISIONS};
pub use tdse::{
    on_node_potential, tdse_evolve, tdse_evolve_snapshots, Evolution, OracleWarning, BOUNDARY_DENSITY, BOUNDARY_MARGIN,
};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Trapezoid-rule inner product `∫ f* g dx`.
pub fn overlap<T: Real>(f: &WaveField<T>, g: &WaveField<T>) -> Result<Complex<T>> {
    if !f.grid.same_nodes(&g.grid) {
        return Err(Error::GridMismatch("overlap of fields on different grids".into()));
    }
    let dx = f.grid.dx;
    let n = f.values.len();
    let mut sum = Complex::new(T::zero(), T::zero());
    for (j, (a, b)) in f.values.iter().zip(&g.values).enumerate() {
        let w = if j == 0 || j == n - 1 { crate::scalar::lit::<T>(0.5) } else { T::one() };
        sum = sum + a.conj() * b * w;
    }
    Ok(sum * dx)
}
