use std::path::PathBuf;

use assert_cmd::Command;
use qlocality::cli::{ScanRow, SCAN_HEADER};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn qlocality() -> Command {
    Command::cargo_bin("qlocality").unwrap()
}

fn run_json(args: &[&str]) -> Value {
    let out = qlocality().args(args).arg("--json").output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn eval_args<'a>(state: &'a str, settings: &'a str) -> Vec<String> {
    vec![
        "eval".into(),
        "--state".into(),
        fixture(state).display().to_string(),
        "--settings".into(),
        fixture(settings).display().to_string(),
    ]
}

fn as_strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[test]
fn eval_full_werner_at_maximal_settings() {
    let args = eval_args("werner_1.json", "maximal_settings.json");
    let v = run_json(&as_strs(&args));
    assert_eq!(v["region"], "QM_not_LT");
    let margin = v["quantum_locality"]["margin"].as_f64().unwrap();
    assert!((margin + 3.0).abs() < 1e-12, "{margin}");
    assert_eq!(v["hidden_qunonlocality"], false);
    assert!((v["xy"]["x"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn eval_maximally_mixed_is_innermost() {
    let v = run_json(&as_strs(&eval_args("werner_0.json", "maximal_settings.json")));
    assert_eq!(v["region"], "LQT");
    let v = run_json(&as_strs(&eval_args("werner_0.json", "axes_settings.json")));
    assert_eq!(v["region"], "LQT");
}

#[test]
fn eval_human_table_by_default() {
    let out = qlocality().args(as_strs(&eval_args("singlet.json", "maximal_settings.json"))).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("region  QM_not_LT"), "{text}");
    assert!(text.contains("quantum_locality"));
}

#[test]
fn validation_errors_exit_one() {
    let out = qlocality().args(as_strs(&eval_args("bad_product.json", "maximal_settings.json"))).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = qlocality().args(as_strs(&eval_args("singlet.json", "skew_settings.json"))).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    // malformed JSON is a validation error, not an I/O error
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"kind\": ").unwrap();
    let out = qlocality()
        .args(["eval", "--state", junk.to_str().unwrap(), "--settings"])
        .arg(fixture("maximal_settings.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn io_errors_exit_two() {
    let out = qlocality()
        .args(["eval", "--state", "/nonexistent/state.json", "--settings"])
        .arg(fixture("maximal_settings.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = qlocality()
        .args(["scan-werner", "--steps", "3", "--restarts", "2", "--out", "/nonexistent/dir/scan.csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

fn parse_csv(text: &str) -> Vec<ScanRow> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(SCAN_HEADER));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 7);
            ScanRow {
                x: f[0].parse().unwrap(),
                max_value: f[1].parse().unwrap(),
                violates_qm: f[2].parse().unwrap(),
                violates_realism: f[3].parse().unwrap(),
                violates_locality: f[4].parse().unwrap(),
                violates_quantum_locality: f[5].parse().unwrap(),
                ppt: f[6].parse().unwrap(),
            }
        })
        .collect()
}

#[test]
fn scan_werner_csv_rows_and_monotone_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    qlocality()
        .args(["scan-werner", "--steps", "11", "--restarts", "16", "--out", path.to_str().unwrap()])
        .assert()
        .success();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
    let rows = parse_csv(&text);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0].x, 0.0);
    assert_eq!(rows[10].x, 1.0);

    let row = |x: f64| rows.iter().find(|r| (r.x - x).abs() < 1e-12).unwrap();
    assert!(row(0.6).violates_quantum_locality && !row(0.6).violates_locality);
    let r3 = row(0.3);
    assert!(r3.ppt && !r3.violates_qm && !r3.violates_realism && !r3.violates_locality && !r3.violates_quantum_locality);
    assert!(row(0.8).violates_locality);
    for r in &rows {
        assert!((r.max_value - 4.0 * r.x * r.x).abs() < 1e-6);
        assert!(!r.violates_qm && !r.violates_realism);
    }

    let flags: [fn(&ScanRow) -> bool; 3] =
        [|r| r.violates_locality, |r| r.violates_quantum_locality, |r| !r.ppt];
    for flag in flags {
        let seq: Vec<bool> = rows.iter().map(flag).collect();
        assert!(seq.windows(2).all(|w| w[0] <= w[1]), "{seq:?}");
    }
}

#[test]
fn scan_werner_rejects_single_step() {
    qlocality().args(["scan-werner", "--steps", "1"]).assert().code(1);
}

#[test]
fn optimize_reports_closed_settings() {
    let v = run_json(&[
        "optimize",
        "--state",
        fixture("singlet.json").to_str().unwrap(),
        "--objective",
        "max-abs-pm",
        "--restarts",
        "8",
    ]);
    let best = v["best_value"].as_f64().unwrap();
    assert!((best - 2.0 * 2f64.sqrt()).abs() < 1e-6);
    let (x, y) = (v["xy"]["x"].as_f64().unwrap(), v["xy"]["y"].as_f64().unwrap());
    assert_eq!(best, (x + y).abs().max((x - y).abs()));
}

#[test]
fn regions_document_shape() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("regions.json");
    qlocality()
        .args(["regions", "--resolution", "32", "--points", "10", "--out", path.to_str().unwrap()])
        .assert()
        .success();
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let lines = v["boundaries"].as_array().unwrap();
    assert_eq!(lines.len(), 4);
    for l in lines {
        let pts = l["points"].as_array().unwrap();
        assert_eq!(pts.first(), pts.last());
    }
    let points = v["points"].as_array().unwrap();
    assert!(points.iter().all(|p| p["state"]["kind"].is_string() && p["settings"]["a"].is_array()));
    for p in points.iter().filter(|p| p["source"] == "singlet_sweep") {
        let (x, y) = (p["x"].as_f64().unwrap(), p["y"].as_f64().unwrap());
        assert!((x * x + y * y - 4.0).abs() < 1e-12);
    }
    assert_eq!(points.iter().filter(|p| p["source"] == "random_product").count(), 10);
    qlocality().args(["regions", "--resolution", "4"]).assert().code(1);
}

fn sample(state: &str, shots: &str, seed: &str) -> Value {
    run_json(&[
        "sample",
        "--state",
        fixture(state).to_str().unwrap(),
        "--settings",
        fixture("maximal_settings.json").to_str().unwrap(),
        "--shots",
        shots,
        "--seed",
        seed,
    ])
}

#[test]
fn sample_singlet_violates_quadratic_bound() {
    let v = sample("singlet.json", "1000000", "11");
    assert_eq!(v["overall"], "violated");
    let ql = v["bounds"].as_array().unwrap().iter().find(|b| b["bound"] == "quantum_locality").unwrap();
    assert_eq!(ql["verdict"], "violated");
    assert!(ql["sigmas"].as_f64().unwrap() >= 5.0);
    assert_eq!(v, sample("singlet.json", "1000000", "11"));
}

#[test]
fn sample_weak_werner_violates_nothing() {
    let v = sample("werner_0_4.json", "1000000", "3");
    assert_eq!(v["overall"], "no_violation");
    assert!(v["violated"].as_array().unwrap().is_empty());
}

#[test]
fn sample_few_shots_and_counts_file() {
    let v = sample("werner_0_4.json", "10", "1");
    assert!(["inconclusive", "no_violation", "violated"].contains(&v["overall"].as_str().unwrap()));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.csv");
    qlocality()
        .args(["sample", "--shots", "100", "--out", path.to_str().unwrap(), "--state"])
        .arg(fixture("singlet.json"))
        .arg("--settings")
        .arg(fixture("maximal_settings.json"))
        .assert()
        .success();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 5);
    qlocality()
        .args(["sample", "--shots", "0", "--state"])
        .arg(fixture("singlet.json"))
        .arg("--settings")
        .arg(fixture("maximal_settings.json"))
        .assert()
        .code(1);
}

fn lhv(model: &str, state: &str) -> std::process::Output {
    qlocality()
        .args(["lhv-check", "--json", "--model"])
        .arg(fixture(model))
        .arg("--state")
        .arg(fixture(state))
        .arg("--settings")
        .arg(fixture("maximal_settings.json"))
        .output()
        .unwrap()
}

#[test]
fn lhv_check_separable_fixture_passes() {
    let out = lhv("werner_third_lqt.json", "werner_third.json");
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["joint_deviation"].as_f64().unwrap() <= 1e-9);
    assert!(v["correlation_deviation"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn lhv_check_fails_against_singlet() {
    let out = lhv("werner_third_lqt.json", "singlet.json");
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    // no local model can come closer than (2*sqrt(2) - 2) / 16
    assert!(v["joint_deviation"].as_f64().unwrap() >= (2.0 * 2f64.sqrt() - 2.0) / 16.0);
}

#[test]
fn lhv_check_rejects_bad_weights() {
    assert_eq!(lhv("bad_weights_lqt.json", "singlet.json").status.code(), Some(1));
}
