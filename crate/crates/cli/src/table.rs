//! Tabular output: CSV or JSON bodies plus the JSON metadata sidecar.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Column {
    pub name: &'static str,
    pub unit: &'static str,
    /// Values must lie in `[0, 1]`.
    pub probability: bool,
}

pub const fn col(name: &'static str) -> Column {
    Column { name, unit: "dimensionless", probability: false }
}

pub const fn prob(name: &'static str) -> Column {
    Column { name, unit: "dimensionless", probability: true }
}

pub const fn text(name: &'static str) -> Column {
    Column { name, unit: "text", probability: false }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<Column>, rows: Vec<Vec<Cell>>) -> Self {
        Self { columns, rows }
    }

    /// Fails on any probability outside `[0, 1]` or a ragged row.
    pub fn check(&self) -> anyhow::Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.columns.len() {
                bail!("row {i} has {} cells for {} columns", row.len(), self.columns.len());
            }
            for (c, cell) in self.columns.iter().zip(row) {
                if let (true, Cell::Num(v)) = (c.probability, cell) {
                    if !(0.0..=1.0).contains(v) {
                        bail!("probability {} = {v} in row {i} lies outside [0, 1]", c.name);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn write(&self, w: impl Write, format: Format) -> anyhow::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }

    fn write_csv(&self, w: impl Write) -> anyhow::Result<()> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        out.write_record(self.columns.iter().map(|c| format!("{} [{}]", c.name, c.unit)))?;
        for row in &self.rows {
            out.write_record(row.iter().map(|cell| match cell {
                Cell::Num(v) => format!("{v:.11e}"),
                Cell::Text(s) => s.clone(),
                Cell::Empty => String::new(),
            }))?;
        }
        out.flush()?;
        Ok(())
    }

    fn write_json(&self, mut w: impl Write) -> anyhow::Result<()> {
        let columns: Vec<Value> = self.columns.iter().map(|c| json!({ "name": c.name, "unit": c.unit })).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| {
                        let v = match cell {
                            Cell::Num(v) => json!(v),
                            Cell::Text(s) => json!(s),
                            Cell::Empty => Value::Null,
                        };
                        (c.name.to_string(), v)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_writer_pretty(&mut w, &json!({ "columns": columns, "rows": rows }))?;
        writeln!(w)?;
        Ok(())
    }

    /// Writes to `path`, or to stdout when `path` is `None`.
    pub fn emit(&self, path: Option<&Path>, format: Format) -> anyhow::Result<()> {
        self.check()?;
        match path {
            Some(p) => {
                create_parent(p)?;
                let f = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
                self.write(BufWriter::new(f), format)
            }
            None => self.write(io::stdout().lock(), format),
        }
    }
}

fn create_parent(path: &Path) -> anyhow::Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => {
            std::fs::create_dir_all(dir).with_context(|| format!("cannot create directory {}", dir.display()))
        }
        _ => Ok(()),
    }
}

/// `<out>.meta.json`
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub fn write_sidecar(out: &Path, scenario: &str, params: Value, grid: Value, runtime_s: f64) -> anyhow::Result<()> {
    let meta = json!({
        "scenario": scenario,
        "params": params,
        "grid": grid,
        "version": env!("CARGO_PKG_VERSION"),
        "runtime_s": runtime_s,
    });
    let path = sidecar_path(out);
    create_parent(&path)?;
    let f = File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
    let mut w = BufWriter::new(f);
    serde_json::to_writer_pretty(&mut w, &meta)?;
    writeln!(w)?;
    Ok(())
}
