//! Analytic-versus-oracle check suite, as run by `switchwell validate`.
//!
//! Every check compares a closed form with an independent numerical route
//! (quadrature, finite-difference eigensolver, Crank–Nicolson evolution)
//! and reports the measured discrepancy next to its tolerance.

use num_complex::Complex;

use crate::double_well::{bound_state, residual, retrap_probabilities, Parity};
use crate::error::Result;
use crate::kick::{kick_retention, kick_transition};
use crate::oracle::{
    adaptive_quad_points, density_l2_discrepancy, fd_eigenstates, hop_schedule, moshinsky_quadrature, overlap,
    tdse_evolve_snapshots, Grid, WaveField, Well,
};
use crate::single_well::{
    delayed_amplitude, evolve_after_switch, final_state, free_evolution, initial_state, optimal_strength,
    retention_probability,
};
use crate::specfun::{erfc_complex, moshinsky, MoshinskyArgs};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub note: String,
}

impl Check {
    fn at_most(name: &'static str, measured: f64, tolerance: f64) -> Self {
        Self { name, measured, tolerance, passed: measured <= tolerance, note: String::new() }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ValidationOptions {
    /// Grid for the time-dependent oracle runs.
    pub grid: Grid<f64>,
    /// Skip the Crank–Nicolson runs (the slow part of the suite).
    pub skip_evolution: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self { grid: Grid::acceptance_default(), skip_evolution: false }
    }
}

fn c(re: f64) -> Complex<f64> {
    Complex::new(re, 0.0)
}

fn special_functions(out: &mut Vec<Check>) -> Result<()> {
    const ERFC_ONE: f64 = 0.157_299_207_050_285_13;
    let v = erfc_complex(c(1.0))?;
    out.push(Check::at_most("erfc(1) reference", (v.re - ERFC_ONE).abs() / ERFC_ONE + v.im.abs(), 1e-12));

    let mut worst: f64 = 0.0;
    for i in 0..20 {
        for j in 0..10 {
            let z = Complex::new(-10.0 + i as f64, -5.0 + j as f64 * 1.1);
            if z.norm() > 10.0 {
                continue;
            }
            let s = erfc_complex(z)? + erfc_complex(-z)?;
            worst = worst.max((s - c(2.0)).norm() / 2.0);
        }
    }
    out.push(Check::at_most("erfc reflection", worst, 1e-12));

    let mut worst: f64 = 0.0;
    let points = [(1.0, 1.0, 2.0), (3.0, -1.0, 0.5), (-2.0, 2.5, 0.3), (0.5, -0.2, 20.0), (4.0, 5.0, 0.05), (-1.5, 1.0, 7.0)];
    for &(x, k, t) in &points {
        let kc = Complex::new(0.0, k);
        let q = moshinsky_quadrature(x, kc, t, 1e-12)?;
        worst = worst.max((moshinsky(MoshinskyArgs::new(x, kc, t)?)? - q).norm());
    }
    out.push(Check::at_most("Moshinsky vs propagator quadrature", worst, 1e-8));
    Ok(())
}

fn single_well_checks(out: &mut Vec<Check>) -> Result<()> {
    let p = retention_probability(3.0f64, 1.0)?.value;
    out.push(Check::at_most("retention P(mu=3, l=1) = 0.21", (p - 0.21).abs(), 0.01).with_note(format!("P = {p:.6}")));

    let mut worst: f64 = 0.0;
    for &l in &[0.5f64, 1.0, 2.0, 5.0] {
        let p1 = (1.0 + l) * (1.0 + l) * (-2.0 * l).exp();
        worst = worst.max((retention_probability(1.0, l)?.value - p1).abs());
    }
    out.push(Check::at_most("symmetric-hop retention limit", worst, 1e-14));

    let (mu, pmax) = optimal_strength(10.0f64)?;
    let rel = ((mu - 0.05) / 0.05).abs().max((pmax - 0.2 / std::f64::consts::E).abs() / (0.2 / std::f64::consts::E));
    out.push(Check::at_most("optimal strength large-l asymptotics (l=10)", rel, 0.15));

    let (tau, l) = (1.0, 2.0);
    let f = |x: f64| free_evolution(x, tau, l).unwrap_or_default() * (-x.abs()).exp();
    let q = adaptive_quad_points(f, &[-40.0, -l, 0.0, 40.0], 1e-11)?.value;
    let a = delayed_amplitude(tau, l)?;
    out.push(Check::at_most("delayed amplitude vs quadrature (tau=1, l=2)", (a - q).norm(), 1e-6));
    Ok(())
}

fn double_well_checks(out: &mut Vec<Check>) -> Result<()> {
    let l = 2.0f64;
    let even = bound_state(l, Parity::Even)?;
    let odd = bound_state(l, Parity::Odd)?;
    let res = residual(even.alpha, l, Parity::Even).abs().max(residual(odd.alpha, l, Parity::Odd).abs());
    out.push(Check::at_most("double-well root residuals (l=2)", res, 1e-12));

    let grid = Grid::new(-31.0, 29.0, 0.002, 1e-3)?;
    let states = fd_eigenstates(&[Well::new(-l, 1.0), Well::new(0.0, 1.0)], &grid, 2)?;
    let dev = if states.len() == 2 {
        (states[0].0 - even.energy).abs().max((states[1].0 - odd.energy).abs())
    } else {
        f64::INFINITY
    };
    out.push(Check::at_most("double-well energies vs eigensolver (l=2)", dev, 1e-4));

    let (pe, po) = retrap_probabilities(l)?;
    let mut worst: f64 = 0.0;
    for (state, p) in [(even, pe.value), (odd, po.map_or(f64::NAN, |p| p.value))] {
        let f = |x: f64| c((-(x + l).abs()).exp() * state.value(x));
        let ov = adaptive_quad_points(f, &[-l - 40.0, -l, 0.0, 40.0], 1e-12)?.value.re;
        worst = worst.max((ov * ov - p).abs());
    }
    out.push(Check::at_most("retrap probabilities vs quadrature (l=2)", worst, 1e-10));
    Ok(())
}

fn kick_checks(out: &mut Vec<Check>) -> Result<()> {
    let k = 2.0;
    let f = |x: f64| Complex::from_polar((-2.0 * x.abs()).exp(), k * x);
    let q = adaptive_quad_points(f, &[-40.0, 0.0, 40.0], 1e-12)?.value;
    out.push(Check::at_most("kick retention vs quadrature (k=2)", (kick_retention(k)?.amplitude - q).norm(), 1e-10));

    let (k, l) = (1.5, 2.0);
    let even = bound_state(l, Parity::Even)?;
    let odd = bound_state(l, Parity::Odd)?;
    let f = |x: f64| Complex::from_polar(even.value(x) * odd.value(x), k * x);
    let q = adaptive_quad_points(f, &[-l - 40.0, -l, 0.0, 40.0], 1e-12)?.value;
    let p = kick_transition(k, l)?;
    out.push(Check::at_most("kick transition vs quadrature (k=1.5, l=2)", (p.value - q.norm_sqr()).abs(), 1e-10));
    Ok(())
}

fn evolution_checks(grid: Grid<f64>, out: &mut Vec<Check>) -> Result<()> {
    let (mu, l) = (3.0, 1.0);
    let times = [0.07, 1.0, 5.0, 15.0];
    let psi0 = WaveField::from_fn(grid, 0.0, |x| initial_state(x, l, 0.0)).normalized();
    let schedule = hop_schedule(mu, times[3])?;
    let run = tdse_evolve_snapshots(&psi0, &schedule, &times)?;
    let mut worst: f64 = 0.0;
    for snap in &run.snapshots {
        let exact: Vec<f64> =
            grid.nodes().map(|x| evolve_after_switch(x, snap.time, mu, l).map(|v| v.norm_sqr())).collect::<Result<_>>()?;
        worst = worst.max(density_l2_discrepancy(grid.dx, &exact, &snap.density()));
    }
    let note = if run.boundary_contaminated() { "boundary density above threshold" } else { "" };
    out.push(Check::at_most("exact vs oracle density, mu=3 l=1 (L2)", worst, 1e-2).with_note(note));
    out.push(Check::at_most("oracle norm drift", run.norm_drift, 1e-6));

    let target = WaveField::from_fn(grid, 0.0, |x| final_state(x, mu, 0.0).unwrap_or_default());
    let p = overlap(&target, run.final_field())?.norm_sqr();
    out.push(Check::at_most("oracle retention at t=15 vs 0.21", (p - 0.21).abs(), 0.01).with_note(format!("P = {p:.6}")));
    Ok(())
}

/// Runs all checks. Errors from the numerical routines abort the suite.
pub fn run_suite(options: &ValidationOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    special_functions(&mut out)?;
    single_well_checks(&mut out)?;
    double_well_checks(&mut out)?;
    kick_checks(&mut out)?;
    if !options.skip_evolution {
        evolution_checks(options.grid, &mut out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_checks_pass() {
        let checks = run_suite(&ValidationOptions { skip_evolution: true, ..Default::default() }).unwrap();
        assert!(checks.len() >= 12);
        for ch in &checks {
            assert!(ch.passed, "{} measured {:e} > {:e}", ch.name, ch.measured, ch.tolerance);
        }
    }

    #[test]
    fn coarse_evolution_checks_pass() {
        let mut out = Vec::new();
        evolution_checks(Grid::symmetric(40.0, 0.02, 2e-3).unwrap(), &mut out).unwrap();
        let retention = out.iter().find(|c| c.name.starts_with("oracle retention")).unwrap();
        assert!(retention.passed, "{retention:?}");
        assert!(out.iter().find(|c| c.name == "oracle norm drift").unwrap().passed);
    }
}
