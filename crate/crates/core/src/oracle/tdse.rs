//! Crank–Nicolson integration of `i ψ_t = −ψ_xx + V(x,t) ψ` with on-node
//! delta wells and homogeneous Dirichlet boundaries.

use num_complex::Complex;

use super::grid::{ScheduleStep, WaveField, Well};
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

/// Distance from the boundary inside which a significant density counts as contamination.
pub const BOUNDARY_MARGIN: f64 = 5.0;
/// Density threshold for the contamination check.
pub const BOUNDARY_DENSITY: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum OracleWarning {
    /// `|ψ|²` exceeded the threshold within the boundary margin.
    BoundaryContamination { time: f64, edge_density: f64 },
    /// The initial field is not normalized on the grid.
    UnnormalizedInitialState { norm: f64 },
}

/// Output of an integration: the requested snapshots in time order.
#[derive(Debug, Clone)]
pub struct Evolution<T: Real> {
    pub snapshots: Vec<WaveField<T>>,
    /// Largest `|‖ψ(t)‖² − ‖ψ(0)‖²|` seen at any snapshot.
    pub norm_drift: T,
    pub steps: usize,
    pub warnings: Vec<OracleWarning>,
}

impl<T: Real> Evolution<T> {
    pub fn final_field(&self) -> &WaveField<T> {
        self.snapshots.last().expect("at least one snapshot")
    }

    pub fn boundary_contaminated(&self) -> bool {
        self.warnings.iter().any(|w| matches!(w, OracleWarning::BoundaryContamination { .. }))
    }
}

/// Evolves `psi0` to `t_final` under the piecewise-constant `schedule`.
pub fn tdse_evolve<T: Real>(psi0: &WaveField<T>, schedule: &[ScheduleStep<T>], t_final: T) -> Result<Evolution<T>> {
    tdse_evolve_snapshots(psi0, schedule, &[t_final])
}

/// Evolves `psi0` and records the field at each of `times` (ascending, all
/// later than `psi0.time`). Schedule switches and snapshot times fall on
/// step boundaries; the time step is shortened per segment where needed.
pub fn tdse_evolve_snapshots<T: Real>(
    psi0: &WaveField<T>,
    schedule: &[ScheduleStep<T>],
    times: &[T],
) -> Result<Evolution<T>> {
    let grid = psi0.grid;
    if times.is_empty() {
        return Err(Error::Config("no snapshot times requested".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) || times[0] <= psi0.time {
        return Err(Error::Config("snapshot times must increase and follow the initial time".into()));
    }
    validate_schedule(schedule, psi0.time, times[times.len() - 1])?;
    let well_nodes: Vec<Vec<(usize, T)>> = schedule
        .iter()
        .map(|step| {
            step.wells
                .iter()
                .map(|w| {
                    grid.node_index(w.position)
                        .map(|i| (i, w.strength))
                        .ok_or_else(|| Error::Config(format!("well at x = {} is not on a grid node", w.position)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut warnings = Vec::new();
    let norm0 = psi0.norm_sqr();
    if (norm0 - T::one()).abs() > lit(1e-6) {
        warnings.push(OracleWarning::UnnormalizedInitialState { norm: norm0.to_f64().unwrap_or(f64::NAN) });
    }

    let mut psi = psi0.values.clone();
    let mut t = psi0.time;
    let mut snapshots = Vec::with_capacity(times.len());
    let mut drift = T::zero();
    let mut steps = 0usize;
    let mut next_snap = 0usize;
    let mut scratch = vec![Complex::new(T::zero(), T::zero()); psi.len()];

    for (step, wells) in schedule.iter().zip(&well_nodes) {
        while next_snap < times.len() && times[next_snap] <= step.t_end && t < step.t_end {
            let target = times[next_snap];
            steps += advance(&mut psi, &mut scratch, grid.dx, grid.dt, wells, t, target);
            t = target;
            let field = WaveField { grid, values: psi.clone(), time: t };
            drift = drift.max((field.norm_sqr() - norm0).abs());
            check_boundary(&field, &mut warnings);
            snapshots.push(field);
            next_snap += 1;
        }
        if next_snap == times.len() {
            break;
        }
        if t < step.t_end {
            steps += advance(&mut psi, &mut scratch, grid.dx, grid.dt, wells, t, step.t_end);
            t = step.t_end;
        }
    }
    Ok(Evolution { snapshots, norm_drift: drift, steps, warnings })
}

fn validate_schedule<T: Real>(schedule: &[ScheduleStep<T>], t0: T, t_final: T) -> Result<()> {
    let first = schedule.first().ok_or_else(|| Error::Config("empty schedule".into()))?;
    let tol = lit::<T>(1e-12) * (T::one() + t_final.abs());
    if (first.t_start - t0).abs() > tol {
        return Err(Error::Config(format!("schedule starts at {} but the field is at t = {t0}", first.t_start)));
    }
    for w in schedule.windows(2) {
        if (w[1].t_start - w[0].t_end).abs() > tol {
            return Err(Error::Config("schedule steps must be contiguous".into()));
        }
    }
    if schedule.iter().any(|s| !(s.t_end > s.t_start)) {
        return Err(Error::Config("schedule step with t_start >= t_end".into()));
    }
    if schedule[schedule.len() - 1].t_end < t_final - tol {
        return Err(Error::Config(format!("schedule ends before t_final = {t_final}")));
    }
    Ok(())
}

fn check_boundary<T: Real>(field: &WaveField<T>, warnings: &mut Vec<OracleWarning>) {
    let edge = field.edge_density(lit(BOUNDARY_MARGIN));
    if edge > lit(BOUNDARY_DENSITY) {
        let time = field.time.to_f64().unwrap_or(f64::NAN);
        let edge_density = edge.to_f64().unwrap_or(f64::NAN);
        log::warn!("oracle boundary contamination at t = {time}: |psi|^2 = {edge_density:e} near the edge");
        warnings.push(OracleWarning::BoundaryContamination { time, edge_density });
    }
}

/// Constant-coefficient Crank–Nicolson stepper for one segment, with the
/// tridiagonal LU factors computed once.
struct Stepper<T: Real> {
    /// `i h / (2 dx²)`
    coupling: Complex<T>,
    /// `1 − i h/2 (2/dx² + V_j)` on the right-hand side
    rhs_diag: Vec<Complex<T>>,
    /// Thomas factors: modified super-diagonal and inverse pivots.
    c_prime: Vec<Complex<T>>,
    inv_pivot: Vec<Complex<T>>,
}

impl<T: Real> Stepper<T> {
    fn new(n: usize, dx: T, h: T, wells: &[(usize, T)]) -> Self {
        let two: T = lit(2.0);
        let kinetic = two / (dx * dx);
        let mut potential = vec![T::zero(); n];
        for &(i, strength) in wells {
            potential[i] = potential[i] - two * strength / dx;
        }
        let half_h = h / two;
        let coupling = Complex::new(T::zero(), half_h / (dx * dx));
        let off = -coupling; // lhs off-diagonal: −i h/(2dx²)
        let rhs_diag: Vec<_> = potential.iter().map(|&v| Complex::new(T::one(), -half_h * (kinetic + v))).collect();
        let mut c_prime = vec![Complex::new(T::zero(), T::zero()); n];
        let mut inv_pivot = vec![Complex::new(T::zero(), T::zero()); n];
        let mut prev_c = Complex::new(T::zero(), T::zero());
        for j in 0..n {
            let diag = Complex::new(T::one(), half_h * (kinetic + potential[j]));
            let pivot = diag - off * prev_c;
            let inv = pivot.inv();
            inv_pivot[j] = inv;
            c_prime[j] = off * inv;
            prev_c = c_prime[j];
        }
        Self { coupling, rhs_diag, c_prime, inv_pivot }
    }

    fn step(&self, psi: &mut [Complex<T>], d: &mut [Complex<T>]) {
        let n = psi.len();
        let off = -self.coupling;
        // right-hand side and forward sweep fused
        let mut prev_d = Complex::new(T::zero(), T::zero());
        for j in 0..n {
            let left = if j > 0 { psi[j - 1] } else { Complex::new(T::zero(), T::zero()) };
            let right = if j + 1 < n { psi[j + 1] } else { Complex::new(T::zero(), T::zero()) };
            let r = self.rhs_diag[j] * psi[j] + self.coupling * (left + right);
            prev_d = (r - off * prev_d) * self.inv_pivot[j];
            d[j] = prev_d;
        }
        psi[n - 1] = d[n - 1];
        for j in (0..n - 1).rev() {
            psi[j] = d[j] - self.c_prime[j] * psi[j + 1];
        }
    }
}

fn advance<T: Real>(
    psi: &mut [Complex<T>],
    scratch: &mut [Complex<T>],
    dx: T,
    dt: T,
    wells: &[(usize, T)],
    from: T,
    to: T,
) -> usize {
    let span = to - from;
    if span <= T::zero() {
        return 0;
    }
    let n_steps = (span / dt - lit(1e-9)).ceil().max(T::one());
    let count = n_steps.to_usize().unwrap_or(1);
    let h = span / from_usize(count);
    let stepper = Stepper::new(psi.len(), dx, h, wells);
    for _ in 0..count {
        stepper.step(psi, scratch);
    }
    count
}

/// Potential on the grid for a set of wells, `−2μ/dx` at each well node.
pub fn on_node_potential<T: Real>(grid: &super::Grid<T>, wells: &[Well<T>]) -> Result<Vec<T>> {
    let mut v = vec![T::zero(); grid.n_nodes()];
    for w in wells {
        let i = grid
            .node_index(w.position)
            .ok_or_else(|| Error::Config(format!("well at x = {} is not on a grid node", w.position)))?;
        v[i] = v[i] - lit::<T>(2.0) * w.strength / grid.dx;
    }
    Ok(v)
}
