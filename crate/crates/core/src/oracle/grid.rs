use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

pub const DEFAULT_HALF_WIDTH: f64 = 120.0;
pub const DEFAULT_DX: f64 = 0.005;
pub const DEFAULT_DT: f64 = 2.5e-4;

/// Uniform spatial grid plus the nominal time step of the integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T: Real> {
    pub x_min: T,
    pub x_max: T,
    pub dx: T,
    pub dt: T,
    intervals: usize,
}

impl<T: Real> Grid<T> {
    pub fn new(x_min: T, x_max: T, dx: T, dt: T) -> Result<Self> {
        if !(dx > T::zero()) || !(dt > T::zero()) || !(x_max > x_min) {
            return Err(Error::Config(format!(
                "grid needs dx > 0, dt > 0 and x_max > x_min (got [{x_min}, {x_max}], dx={dx}, dt={dt})"
            )));
        }
        let ratio = (x_max - x_min) / dx;
        let n = ratio.round();
        if (ratio - n).abs() > lit::<T>(1e-6) * n.max(T::one()) {
            return Err(Error::Config(format!("domain length is not an integer number of steps dx={dx}")));
        }
        let intervals = n.to_usize().unwrap_or(0);
        if intervals < 100 {
            return Err(Error::Config(format!("grid has {intervals} intervals, at least 100 required")));
        }
        Ok(Self { x_min, x_max, dx, dt, intervals })
    }

    /// Symmetric domain `[-half_width, half_width]`.
    pub fn symmetric(half_width: T, dx: T, dt: T) -> Result<Self> {
        Self::new(-half_width, half_width, dx, dt)
    }

    /// `[-120, 120]`, `dx = 0.005`, `dt = 2.5e-4`.
    ///
    /// A released packet carries a `k⁻⁴` momentum tail, so about 14% of it
    /// travels faster than 1.6 and reaches `|x| = 60` by `t = 15`. The wider
    /// box keeps the wall reflections below the 1e-2 density tolerance there.
    pub fn acceptance_default() -> Self {
        Self::symmetric(lit(DEFAULT_HALF_WIDTH), lit(DEFAULT_DX), lit(DEFAULT_DT)).expect("valid default grid")
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn n_nodes(&self) -> usize {
        self.intervals + 1
    }

    pub fn x(&self, i: usize) -> T {
        self.x_min + self.dx * from_usize::<T>(i)
    }

    pub fn nodes(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.n_nodes()).map(move |i| self.x(i))
    }

    /// Index of the node at `x`, if `x` coincides with a node.
    pub fn node_index(&self, x: T) -> Option<usize> {
        let r = (x - self.x_min) / self.dx;
        let n = r.round();
        if n < T::zero() || (r - n).abs() > lit(1e-6) {
            return None;
        }
        let i = n.to_usize()?;
        (i < self.n_nodes()).then_some(i)
    }

    pub fn same_nodes(&self, other: &Self) -> bool {
        self.intervals == other.intervals
            && (self.x_min - other.x_min).abs() <= T::epsilon() * lit(64.0) * (T::one() + self.x_min.abs())
            && (self.dx - other.dx).abs() <= T::epsilon() * lit(64.0) * self.dx
    }
}

/// Complex wavefunction sampled on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField<T: Real> {
    pub grid: Grid<T>,
    pub values: Vec<Complex<T>>,
    pub time: T,
}

impl<T: Real> WaveField<T> {
    pub fn new(grid: Grid<T>, values: Vec<Complex<T>>, time: T) -> Result<Self> {
        if values.len() != grid.n_nodes() {
            return Err(Error::GridMismatch(format!("{} values for {} nodes", values.len(), grid.n_nodes())));
        }
        Ok(Self { grid, values, time })
    }

    pub fn from_fn<F: Fn(T) -> Complex<T>>(grid: Grid<T>, time: T, f: F) -> Self {
        let values = grid.nodes().map(f).collect();
        Self { grid, values, time }
    }

    pub fn density(&self) -> Vec<T> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// Trapezoid-rule `∫|ψ|² dx`.
    pub fn norm_sqr(&self) -> T {
        trapezoid(self.grid.dx, self.values.iter().map(|v| v.norm_sqr()))
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm_sqr().sqrt();
        if n > T::zero() {
            for v in &mut self.values {
                *v = *v / n;
            }
        }
        self
    }

    /// Value at an arbitrary position by linear interpolation (zero outside).
    pub fn interpolate(&self, x: T) -> Complex<T> {
        let r = (x - self.grid.x_min) / self.grid.dx;
        if r < T::zero() || r > from_usize(self.grid.intervals()) {
            return Complex::new(T::zero(), T::zero());
        }
        let i = r.floor().to_usize().unwrap_or(0).min(self.grid.intervals() - 1);
        let frac = r - from_usize(i);
        self.values[i] * (T::one() - frac) + self.values[i + 1] * frac
    }

    /// Probability carried by the outer `fraction` of the domain on each side.
    pub fn outer_mass(&self, fraction: T) -> T {
        let width = (self.grid.x_max - self.grid.x_min) * fraction;
        let lo = self.grid.x_min + width;
        let hi = self.grid.x_max - width;
        let masked = self
            .grid
            .nodes()
            .zip(&self.values)
            .map(|(x, v)| if x <= lo || x >= hi { v.norm_sqr() } else { T::zero() });
        trapezoid(self.grid.dx, masked)
    }

    /// Largest `|ψ|²` within `margin` of either boundary.
    pub fn edge_density(&self, margin: T) -> T {
        let lo = self.grid.x_min + margin;
        let hi = self.grid.x_max - margin;
        self.grid
            .nodes()
            .zip(&self.values)
            .filter(|(x, _)| *x <= lo || *x >= hi)
            .fold(T::zero(), |m, (_, v)| m.max(v.norm_sqr()))
    }
}

pub(crate) fn trapezoid<T: Real>(dx: T, values: impl Iterator<Item = T>) -> T {
    let mut sum = T::zero();
    let mut first = None;
    let mut last = T::zero();
    for v in values {
        if first.is_none() {
            first = Some(v);
        }
        sum = sum + v;
        last = v;
    }
    let first = first.unwrap_or(T::zero());
    (sum - (first + last) * lit(0.5)) * dx
}

/// `L²` norm of the difference of two densities sampled on the same grid.
pub fn density_l2_discrepancy<T: Real>(dx: T, a: &[T], b: &[T]) -> T {
    trapezoid(dx, a.iter().zip(b).map(|(x, y)| (*x - *y) * (*x - *y))).sqrt()
}

/// An attractive well `−2·strength·δ(x − position)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Well<T: Real> {
    pub position: T,
    pub strength: T,
}

impl<T: Real> Well<T> {
    pub fn new(position: T, strength: T) -> Self {
        Self { position, strength }
    }
}

/// Time interval over which a fixed set of wells is switched on.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleStep<T: Real> {
    pub t_start: T,
    pub t_end: T,
    pub wells: Vec<Well<T>>,
}

impl<T: Real> ScheduleStep<T> {
    pub fn new(t_start: T, t_end: T, wells: Vec<Well<T>>) -> Result<Self> {
        if !(t_end > t_start) {
            return Err(Error::Config(format!("schedule step needs t_start < t_end ({t_start} >= {t_end})")));
        }
        Ok(Self { t_start, t_end, wells })
    }
}

/// Trap hops from `x = −l` to `x = 0` and changes strength to `mu` at `t = 0`.
pub fn hop_schedule<T: Real>(mu: T, t_final: T) -> Result<Vec<ScheduleStep<T>>> {
    let wells = if mu > T::zero() { vec![Well::new(T::zero(), mu)] } else { Vec::new() };
    Ok(vec![ScheduleStep::new(T::zero(), t_final, wells)?])
}

/// Trap switched off at `t = 0` and a unit-strength trap switched on at `x = 0` at `t = tau`.
pub fn delayed_schedule<T: Real>(tau: T, t_final: T) -> Result<Vec<ScheduleStep<T>>> {
    let on = vec![Well::new(T::zero(), T::one())];
    if tau <= T::zero() {
        return Ok(vec![ScheduleStep::new(T::zero(), t_final, on)?]);
    }
    if t_final <= tau {
        return Ok(vec![ScheduleStep::new(T::zero(), t_final, Vec::new())?]);
    }
    Ok(vec![ScheduleStep::new(T::zero(), tau, Vec::new())?, ScheduleStep::new(tau, t_final, on)?])
}

/// A second unit well is added at `x = 0` next to the original one at `x = −l`.
pub fn double_well_schedule<T: Real>(l: T, t_final: T) -> Result<Vec<ScheduleStep<T>>> {
    Ok(vec![ScheduleStep::new(T::zero(), t_final, vec![Well::new(-l, T::one()), Well::new(T::zero(), T::one())])?])
}
