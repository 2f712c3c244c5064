//! `switchwell` command-line front end.

mod scenarios;
mod sweep;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use scenarios::*;
use table::{write_sidecar, Format};

#[derive(Debug, Parser)]
#[command(name = "switchwell", version, about = "Retrapping of a particle by switchable delta-function wells")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output file (stdout when omitted). A `<out>.meta.json` sidecar is written next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Reserved; no scenario draws random numbers.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Retention after a sudden hop of the trap, swept over l and mu.
    Retention(RetentionArgs),
    /// Retention when the new trap is switched on after a delay tau.
    Delay(DelayArgs),
    /// Exact and oracle densities after the hop, plus the density at x = 0 over time.
    Evolve(EvolveArgs),
    /// Bound-state energies of the symmetric double well.
    DwpSpectrum(LSweepArgs),
    /// Capture probabilities when a second well is added.
    Retrap(LSweepArgs),
    /// Survival of the single-well state after a momentum kick.
    KickRetention(KickRetentionArgs),
    /// Even-to-odd transition in the double well caused by a kick.
    KickTransition(KickTransitionArgs),
    /// Runs the analytic-versus-oracle check suite.
    Validate(ValidateArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Retention(_) => "retention",
            Command::Delay(_) => "delay",
            Command::Evolve(_) => "evolve",
            Command::DwpSpectrum(_) => "dwp-spectrum",
            Command::Retrap(_) => "retrap",
            Command::KickRetention(_) => "kick-retention",
            Command::KickTransition(_) => "kick-transition",
            Command::Validate(_) => "validate",
        }
    }

    fn params(&self) -> Value {
        let v = match self {
            Command::Retention(a) => serde_json::to_value(a),
            Command::Delay(a) => serde_json::to_value(a),
            Command::Evolve(a) => serde_json::to_value(a),
            Command::DwpSpectrum(a) | Command::Retrap(a) => serde_json::to_value(a),
            Command::KickRetention(a) => serde_json::to_value(a),
            Command::KickTransition(a) => serde_json::to_value(a),
            Command::Validate(a) => serde_json::to_value(a),
        };
        v.unwrap_or(Value::Null)
    }
}

fn run(cli: &Cli) -> Outcome<Report> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Retention(a) => retention(a, out),
        Command::Delay(a) => delay(a, out),
        Command::Evolve(a) => evolve(a, out, cli.format),
        Command::DwpSpectrum(a) => dwp_spectrum(a, out),
        Command::Retrap(a) => retrap(a, out),
        Command::KickRetention(a) => kick_retention_run(a, out),
        Command::KickTransition(a) => kick_transition_run(a, out),
        Command::Validate(a) => validate(a, out),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let start = Instant::now();

    let report = match run(&cli) {
        Ok(r) => r,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: invalid parameters: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    for (path, table) in &report.outputs {
        if let Err(e) = table.emit(path.as_deref(), cli.format) {
            eprintln!("error: {e:#}");
            return ExitCode::FAILURE;
        }
    }

    let meta_target = match (&cli.command, &cli.out) {
        (Command::Evolve(_), None) => Some(PathBuf::from("evolve")),
        (_, out) => out.clone(),
    };
    if let Some(target) = meta_target {
        let mut params = cli.command.params();
        if let Value::Object(m) = &mut params {
            m.insert("seed".into(), json!(cli.seed));
            m.insert("format".into(), json!(cli.format.extension()));
            if !report.extra.is_null() {
                m.insert("outputs".into(), report.extra.clone());
            }
        }
        let elapsed = start.elapsed().as_secs_f64();
        if let Err(e) = write_sidecar(&target, cli.command.name(), params, report.grid.clone(), elapsed) {
            eprintln!("error: {e:#}");
            return ExitCode::FAILURE;
        }
    }

    match report.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Contaminated(msg) => {
            eprintln!("error: boundary contamination: {msg}");
            ExitCode::from(3)
        }
        Status::ChecksFailed(n) => {
            eprintln!("error: {n} validation check(s) failed");
            ExitCode::FAILURE
        }
    }
}
