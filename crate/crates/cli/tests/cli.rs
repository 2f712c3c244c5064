use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn switchwell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_switchwell")).args(args).output().expect("binary runs")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn retention_sweep_has_interior_maximum() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ret.csv");
    let o = switchwell(&["retention", "--l", "1", "--mu-range", "0.1:10:0.01", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["l [dimensionless]", "mu [dimensionless]", "P [dimensionless]"]);
    assert_eq!(rows.len(), 991);
    let (imax, pmax) = rows.iter().map(|r| num(&r[2])).enumerate().fold((0, 0.0), |b, (i, p)| if p > b.1 { (i, p) } else { b });
    assert!(imax > 0 && imax < rows.len() - 1);
    assert!(pmax > num(&rows[0][2]) && pmax > num(&rows[990][2]));
    assert!(rows.iter().all(|r| (0.0..=1.0).contains(&num(&r[2]))));

    let body = fs::read_to_string(&out).unwrap();
    assert!(!body.contains('\r'));
    assert!(body.lines().nth(1).unwrap().contains("e-1"));

    let meta: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("ret.csv.meta.json")).unwrap()).unwrap();
    for key in ["scenario", "params", "grid", "version", "runtime_s"] {
        assert!(meta.get(key).is_some(), "missing {key}");
    }
    assert_eq!(meta["scenario"], "retention");
    assert_eq!(meta["params"]["mu"], "0.1:10:0.01");
}

#[test]
fn spectrum_odd_column_empty_below_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("spectrum.csv");
    let o = switchwell(&["dwp-spectrum", "--l-range", "0.2:10:0.05", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let (header, rows) = read_csv(&out);
    assert_eq!(header[2], "abs_E_odd [dimensionless]");
    assert_eq!(rows.len(), 197);
    for r in &rows {
        let l = num(&r[0]);
        assert_eq!(r[2].is_empty(), l <= 1.0 + 1e-9, "l = {l}");
        assert!(num(&r[1]) > 1.0);
    }
}

#[test]
fn identical_configs_give_identical_bodies() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = switchwell(&["kick-transition", "--l", "2:4:0.5", "--k", "0:6:0.01", "--out", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn invalid_parameters_exit_2() {
    let o = switchwell(&["kick-transition", "--l", "0.8", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("l > 1"));

    let o = switchwell(&["retention", "--mu", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mu"));

    let o = switchwell(&["delay", "--tau", "0:1:0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("step must be positive"));

    let o = switchwell(&["evolve", "--times", "5,1", "--no-oracle"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_output() {
    let o = switchwell(&["retrap", "--l", "0.5:2:1.5", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["p_odd"].is_null());
    assert!((rows[1]["p_even"].as_f64().unwrap() - 0.701853).abs() < 1e-6);
}

#[test]
fn evolve_writes_snapshots_and_center_series() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("hop");
    let o = switchwell(&["evolve", "--mu", "3", "--l", "1", "--times", "0.07,15", "--no-oracle", "--stride", "20", "--out", stem.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for t in ["0.07", "15"] {
        let (header, rows) = read_csv(&dir.path().join(format!("hop_t{t}.csv")));
        assert_eq!(header.len(), 4);
        assert_eq!(header[3], "density_initial [dimensionless]");
        assert!(rows.iter().all(|r| r[2].is_empty()));
        let peak = rows.iter().map(|r| num(&r[3])).fold(0.0, f64::max);
        assert!((peak - 1.0).abs() < 1e-12);
    }
    let (_, series) = read_csv(&dir.path().join("hop_center.csv"));
    let limit = num(&series[0][2]);
    assert!((limit - 3.0 * 0.20825).abs() < 1e-3);
    let d: Vec<f64> = series.iter().map(|r| num(&r[1])).collect();
    let turns = d.windows(3).filter(|w| (w[1] - w[0]) * (w[2] - w[1]) < 0.0).count();
    assert!(turns >= 2, "center density should oscillate");
    assert!(dir.path().join("hop.meta.json").exists());
}

#[test]
fn symmetric_hop_center_density_limit() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("sym");
    let o = switchwell(&["evolve", "--mu", "1", "--l", "2", "--times", "200", "--series-step", "5", "--no-oracle", "--stride", "100", "--out", stem.to_str().unwrap()]);
    assert!(o.status.success());
    let (_, series) = read_csv(&dir.path().join("sym_center.csv"));
    let last = num(&series.last().unwrap()[1]);
    let expect = 9.0 * (-4.0f64).exp();
    assert!((last - expect).abs() < 0.02 * expect, "{last} vs {expect}");
}

#[test]
fn evolve_oracle_columns_and_contamination() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("small");
    let args = ["evolve", "--domain", "30", "--dx", "0.01", "--dt", "1e-3", "--times", "0.07,0.3", "--out", stem.to_str().unwrap()];
    let o = switchwell(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (_, rows) = read_csv(&dir.path().join("small_t0.3.csv"));
    let worst = rows.iter().map(|r| (num(&r[1]) - num(&r[2])).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-2, "{worst}");
    let meta: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("small.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["grid"]["dx"], 0.01);
    assert_eq!(meta["params"]["outputs"]["oracle"]["boundary_contaminated"], false);

    let o = switchwell(&["evolve", "--domain", "10", "--dx", "0.02", "--dt", "2e-3", "--times", "3", "--out", stem.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(dir.path().join("small_t3.csv").exists());
}

#[test]
fn validate_analytic_suite_passes() {
    let o = switchwell(&["validate", "--skip-evolution"]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("PASS") && !text.contains("FAIL"));
    assert!(text.contains("12 of 12 checks passed"));
}
