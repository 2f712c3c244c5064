//! One runner per subcommand. Runners compute tables; `main` writes them.

use std::path::{Path, PathBuf};

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use switchwell::double_well::{retrap_probabilities, spectrum};
use switchwell::kick::{kick_retention, kick_transition, transition_optimum};
use switchwell::oracle::{
    convention_self_test, hop_schedule, BOUNDARY_DENSITY, BOUNDARY_MARGIN, tdse_evolve_snapshots, Grid, WaveField, DEFAULT_DT, DEFAULT_DX,
    DEFAULT_HALF_WIDTH,
};
use switchwell::single_well::{
    delay_optimum, delayed_amplitude, evolve_after_switch, initial_state, optimal_strength, retention_probability,
};
use switchwell::validation::{run_suite, ValidationOptions};

use crate::sweep::Sweep;
use crate::table::{col, prob, text, Cell, Format, Table};

/// Why a run did not finish cleanly; `main` maps these to exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Invalid parameters (exit 2).
    Invalid(String),
    Other(anyhow::Error),
}

impl From<switchwell::Error> for Failure {
    fn from(e: switchwell::Error) -> Self {
        use switchwell::Error::*;
        match e {
            Domain { .. } | NoBoundState { .. } | Config(_) => Failure::Invalid(e.to_string()),
            _ => Failure::Other(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

pub type Outcome<T> = Result<T, Failure>;

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Ok,
    /// The oracle field reached the domain edge (exit 3).
    Contaminated(String),
    /// Validation checks failed (exit 1).
    ChecksFailed(usize),
}

/// Tables to write plus what goes into the sidecar.
pub struct Report {
    pub outputs: Vec<(Option<PathBuf>, Table)>,
    pub grid: Value,
    pub extra: Value,
    pub status: Status,
}

impl Report {
    fn single(out: Option<&Path>, table: Table) -> Self {
        Self { outputs: vec![(out.map(Path::to_path_buf), table)], grid: Value::Null, extra: Value::Null, status: Status::Ok }
    }
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct GridArgs {
    /// Half-width L of the oracle domain [-L, L].
    #[arg(long, default_value_t = DEFAULT_HALF_WIDTH)]
    pub domain: f64,
    /// Oracle grid spacing.
    #[arg(long, default_value_t = DEFAULT_DX)]
    pub dx: f64,
    /// Oracle time step.
    #[arg(long, default_value_t = DEFAULT_DT)]
    pub dt: f64,
}

impl GridArgs {
    fn grid(&self) -> Outcome<Grid<f64>> {
        Ok(Grid::symmetric(self.domain, self.dx, self.dt)?)
    }
}

fn grid_json(g: &Grid<f64>) -> Value {
    json!({ "x_min": g.x_min, "x_max": g.x_max, "dx": g.dx, "dt": g.dt })
}

fn rows<P, F>(points: &[P], f: F) -> Outcome<Vec<Vec<Cell>>>
where
    P: Sync,
    F: Fn(&P) -> switchwell::Result<Vec<Cell>> + Sync + Send,
{
    Ok(points.par_iter().map(f).collect::<switchwell::Result<Vec<_>>>()?)
}

fn product(a: &Sweep, b: &Sweep) -> Vec<(f64, f64)> {
    let bs = b.values();
    a.values().into_iter().flat_map(|x| bs.iter().map(move |&y| (x, y))).collect()
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RetentionArgs {
    /// Hop distance, a value or start:stop:step.
    #[arg(long, allow_hyphen_values = true, visible_alias = "l-range", default_value = "1")]
    pub l: Sweep,
    /// New trap strength, a value or start:stop:step.
    #[arg(long, allow_hyphen_values = true, visible_alias = "mu-range", default_value = "0.1:10:0.01")]
    pub mu: Sweep,
    /// Report the optimal strength for each l instead of sweeping mu.
    #[arg(long)]
    pub optimal: bool,
}

pub fn retention(a: &RetentionArgs, out: Option<&Path>) -> Outcome<Report> {
    let table = if a.optimal {
        let ls = a.l.values();
        let r = rows(&ls, |&l| optimal_strength(l).map(|(mu, p)| vec![l.into(), mu.into(), p.into()]))?;
        Table::new(vec![col("l"), col("mu_max"), prob("P_max")], r)
    } else {
        let r = rows(&product(&a.l, &a.mu), |&(l, mu)| {
            retention_probability(mu, l).map(|p| vec![l.into(), mu.into(), p.value.into()])
        })?;
        Table::new(vec![col("l"), col("mu"), prob("P")], r)
    };
    Ok(Report::single(out, table))
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DelayArgs {
    #[arg(long, allow_hyphen_values = true, visible_alias = "l-range", default_value = "2")]
    pub l: Sweep,
    /// Delay before the new trap is switched on.
    #[arg(long, allow_hyphen_values = true, visible_alias = "tau-range", default_value = "0:20:0.01")]
    pub tau: Sweep,
    /// Report the optimal delay for each l instead of sweeping tau.
    #[arg(long)]
    pub optimal: bool,
}

pub fn delay(a: &DelayArgs, out: Option<&Path>) -> Outcome<Report> {
    let table = if a.optimal {
        let ls = a.l.values();
        let r = rows(&ls, |&l| {
            let (tau, p) = delay_optimum(l)?;
            let p0 = delayed_amplitude(0.0, l)?.norm_sqr();
            Ok(vec![l.into(), tau.into(), p.into(), p0.into()])
        })?;
        Table::new(vec![col("l"), col("tau_max"), prob("P_max"), prob("P_tau0")], r)
    } else {
        let r = rows(&product(&a.l, &a.tau), |&(l, tau)| {
            delayed_amplitude(tau, l).map(|amp| vec![l.into(), tau.into(), amp.norm_sqr().into()])
        })?;
        Table::new(vec![col("l"), col("tau"), prob("P")], r)
    };
    Ok(Report::single(out, table))
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LSweepArgs {
    /// Well separation, a value or start:stop:step.
    #[arg(long, allow_hyphen_values = true, visible_alias = "l-range", default_value = "0.2:10:0.05")]
    pub l: Sweep,
}

pub fn dwp_spectrum(a: &LSweepArgs, out: Option<&Path>) -> Outcome<Report> {
    let r = rows(&a.l.values(), |&l| {
        let (even, odd) = spectrum(l)?;
        Ok(vec![l.into(), even.abs().into(), odd.map(f64::abs).into()])
    })?;
    Ok(Report::single(out, Table::new(vec![col("l"), col("abs_E_even"), col("abs_E_odd")], r)))
}

pub fn retrap(a: &LSweepArgs, out: Option<&Path>) -> Outcome<Report> {
    let r = rows(&a.l.values(), |&l| {
        let (pe, po) = retrap_probabilities(l)?;
        let po = po.map(|p| p.value);
        Ok(vec![l.into(), pe.value.into(), po.into(), (pe.value + po.unwrap_or(0.0)).into()])
    })?;
    Ok(Report::single(out, Table::new(vec![col("l"), prob("p_even"), prob("p_odd"), prob("p_total")], r)))
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct KickRetentionArgs {
    /// Kick momentum, a value or start:stop:step.
    #[arg(long, allow_hyphen_values = true, visible_alias = "k-range", default_value = "0:10:0.01")]
    pub k: Sweep,
}

pub fn kick_retention_run(a: &KickRetentionArgs, out: Option<&Path>) -> Outcome<Report> {
    let r = rows(&a.k.values(), |&k| kick_retention(k).map(|p| vec![k.into(), p.value.into()]))?;
    Ok(Report::single(out, Table::new(vec![col("k"), prob("P")], r)))
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct KickTransitionArgs {
    /// Well separation (must exceed 1).
    #[arg(long, allow_hyphen_values = true, visible_alias = "l-range", default_value = "3")]
    pub l: Sweep,
    #[arg(long, allow_hyphen_values = true, visible_alias = "k-range", default_value = "0:5:0.005")]
    pub k: Sweep,
    /// Report the most efficient kick for each l instead of sweeping k.
    #[arg(long)]
    pub optimal: bool,
}

pub fn kick_transition_run(a: &KickTransitionArgs, out: Option<&Path>) -> Outcome<Report> {
    let table = if a.optimal {
        let r = rows(&a.l.values(), |&l| {
            transition_optimum(l).map(|(k2, p, de)| vec![l.into(), k2.into(), p.into(), de.into()])
        })?;
        Table::new(vec![col("l"), col("k2_max"), prob("P_max"), col("delta_E")], r)
    } else {
        let r = rows(&product(&a.l, &a.k), |&(l, k)| {
            kick_transition(k, l).map(|p| vec![l.into(), k.into(), p.value.into()])
        })?;
        Table::new(vec![col("l"), col("k"), prob("P")], r)
    };
    Ok(Report::single(out, table))
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvolveArgs {
    /// Strength of the new trap.
    #[arg(long, allow_hyphen_values = true, default_value_t = 3.0)]
    pub mu: f64,
    /// Hop distance.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub l: f64,
    /// Snapshot times, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.07,15")]
    pub times: Vec<f64>,
    /// Sampling step of the centre-density series.
    #[arg(long, default_value_t = 0.05)]
    pub series_step: f64,
    /// End of the centre-density series (defaults to the last snapshot).
    #[arg(long)]
    pub series_end: Option<f64>,
    /// Write every n-th grid node in the snapshot files.
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
    /// Analytic columns only; skips the Crank-Nicolson run.
    #[arg(long)]
    pub no_oracle: bool,
    #[command(flatten)]
    pub grid: GridArgs,
}

fn stem(out: Option<&Path>, default: &str) -> PathBuf {
    match out {
        Some(p) if matches!(p.extension().and_then(|e| e.to_str()), Some("csv" | "json")) => p.with_extension(""),
        Some(p) => p.to_path_buf(),
        None => PathBuf::from(default),
    }
}

fn with_suffix(stem: &Path, suffix: &str, format: Format) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(format!("{suffix}.{}", format.extension()));
    PathBuf::from(s)
}

pub fn evolve(a: &EvolveArgs, out: Option<&Path>, format: Format) -> Outcome<Report> {
    let invalid = |m: String| Err(Failure::Invalid(m));
    if !(a.mu >= 0.0) || !a.mu.is_finite() {
        return invalid(format!("trap strength must be non-negative, got mu = {}", a.mu));
    }
    if a.times.is_empty() || a.times.iter().any(|t| !(*t > 0.0) || !t.is_finite()) {
        return invalid("snapshot times must be positive".into());
    }
    if a.times.windows(2).any(|w| w[1] <= w[0]) {
        return invalid("snapshot times must increase".into());
    }
    if a.stride == 0 {
        return invalid("stride must be at least 1".into());
    }
    let t_last = a.times[a.times.len() - 1];
    let series_end = a.series_end.unwrap_or(t_last);
    let series: Sweep = format!("{}:{}:{}", a.series_step, series_end, a.series_step).parse().map_err(Failure::Invalid)?;
    let grid = a.grid.grid()?;
    let (mu, l) = (a.mu, a.l);

    let mut status = Status::Ok;
    let oracle = if a.no_oracle {
        None
    } else {
        convention_self_test()?;
        let psi0 = WaveField::from_fn(grid, 0.0, |x| initial_state(x, l, 0.0)).normalized();
        let run = tdse_evolve_snapshots(&psi0, &hop_schedule(mu, t_last)?, &a.times)?;
        if run.boundary_contaminated() {
            status = Status::Contaminated(format!(
                "oracle density exceeds {BOUNDARY_DENSITY:e} within {BOUNDARY_MARGIN} of the edge of [-{d}, {d}]; enlarge --domain",
                d = a.grid.domain
            ));
        }
        Some(run)
    };

    let stem = stem(out, "evolve");
    let nodes: Vec<(usize, f64)> = grid.nodes().enumerate().step_by(a.stride).collect();
    let mut outputs = Vec::new();
    for (j, &t) in a.times.iter().enumerate() {
        let field = oracle.as_ref().map(|run| &run.snapshots[j]);
        let r = rows(&nodes, |&(i, x)| {
            let exact = evolve_after_switch(x, t, mu, l)?.norm_sqr();
            let numeric = field.map(|f| f.values[i].norm_sqr());
            Ok(vec![x.into(), exact.into(), numeric.into(), initial_state(x, l, 0.0).norm_sqr().into()])
        })?;
        let table = Table::new(vec![col("x"), col("density_exact"), col("density_oracle"), col("density_initial")], r);
        outputs.push((Some(with_suffix(&stem, &format!("_t{t}"), format)), table));
    }

    let limit = if mu > 0.0 { mu * retention_probability(mu, l)?.value } else { 0.0 };
    let r = rows(&series.values(), |&t| {
        Ok(vec![t.into(), evolve_after_switch(0.0, t, mu, l)?.norm_sqr().into(), limit.into()])
    })?;
    let table = Table::new(vec![col("t"), col("density_center"), col("density_center_limit")], r);
    outputs.push((Some(with_suffix(&stem, "_center", format)), table));

    let extra = json!({
        "files": outputs.iter().filter_map(|(p, _)| p.as_ref().map(|p| p.display().to_string())).collect::<Vec<_>>(),
        "oracle": oracle.as_ref().map(|run| json!({
            "steps": run.steps,
            "norm_drift": run.norm_drift,
            "boundary_contaminated": run.boundary_contaminated(),
        })),
    });
    Ok(Report { outputs, grid: grid_json(&grid), extra, status })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ValidateArgs {
    /// Analytic checks only; skips the Crank-Nicolson runs.
    #[arg(long)]
    pub skip_evolution: bool,
    #[command(flatten)]
    pub grid: GridArgs,
}

pub fn validate(a: &ValidateArgs, out: Option<&Path>) -> Outcome<Report> {
    let grid = a.grid.grid()?;
    let energy = convention_self_test()?;
    let checks = run_suite(&ValidationOptions { grid, skip_evolution: a.skip_evolution })?;

    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    println!("{:<width$}  {:>10}  {:>9}  result", "check", "measured", "tolerance");
    println!("{:<width$}  {:>10.3e}  {:>9.1e}  PASS", "unit-well convention (E + 1)", (energy + 1.0).abs(), 1e-3);
    for c in &checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        let note = if c.note.is_empty() { String::new() } else { format!("  ({})", c.note) };
        println!("{:<width$}  {:>10.3e}  {:>9.1e}  {tag}{note}", c.name, c.measured, c.tolerance);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} of {} checks passed", checks.len() - failed, checks.len());

    let r = checks
        .iter()
        .map(|c| {
            vec![
                Cell::Text(c.name.to_string()),
                c.measured.into(),
                c.tolerance.into(),
                Cell::Text(c.passed.to_string()),
                Cell::Text(c.note.clone()),
            ]
        })
        .collect();
    let table = Table::new(vec![text("check"), col("measured"), col("tolerance"), text("passed"), text("note")], r);
    let outputs = match out {
        Some(p) => vec![(Some(p.to_path_buf()), table)],
        None => Vec::new(),
    };
    let status = if failed == 0 { Status::Ok } else { Status::ChecksFailed(failed) };
    let grid = if a.skip_evolution { Value::Null } else { grid_json(&grid) };
    Ok(Report { outputs, grid, extra: Value::Null, status })
}
