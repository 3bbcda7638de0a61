use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn vxs(dir: &Path, args: &[&str], config: &str) -> Output {
    let path = dir.join("config.json");
    std::fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_vxs"))
        .args(args)
        .arg("--config")
        .arg(&path)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn row<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == name)
        .unwrap_or_else(|| panic!("no row {name}"))
}

#[test]
fn norm_of_constant() {
    let dir = tempfile::tempdir().unwrap();
    let out = vxs(dir.path(), &["norm"], r#"{"command": "norm", "f": "const 3", "p": "const 2", "alpha": 0}"#);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert!((row(&report, "norm")["value"].as_f64().unwrap() - 3.0).abs() < 1e-8);
    assert_eq!(report["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn equivalence_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = vxs(dir.path(), &["equiv"], r#"{"p": "limsup q=2 P=4", "check": "v"}"#);
    assert_eq!(out.status.code(), Some(0));
    assert!(row(&json(&out), "v sup")["value"].as_f64().unwrap() < 2.0);

    let out = vxs(dir.path(), &["equiv"], r#"{"p": "sqrtlog q=2", "check": "v"}"#);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(row(&report, "v bounded")["passed"], false);
    assert!(row(&report, "v sup")["value"].as_f64().unwrap() > 1e3);

    let out = vxs(dir.path(), &["equiv"], r#"{"p": {"formula": "limsup", "q": 2, "P": 4}, "check": "incmult", "trials": 20}"#);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    for cfg in [
        r#"{"p": "const 2", "f": "z", "unknown": 1}"#,
        r#"{"p": "nosuch q=2", "f": "z"}"#,
        r#"{"p": "const 2", "f": {"type": "kernel", "lambda": 1.5}}"#,
        r#"{"p": "const 2", "f": {"type": "kernel", "lambda": 0.5, "extra": 0}}"#,
        r#"{"command": "mean", "p": "const 2", "f": "z"}"#,
        "not json",
    ] {
        let out = vxs(dir.path(), &["norm"], cfg);
        assert_eq!(out.status.code(), Some(2), "{cfg}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn deterministic_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"suite": "lemma-poisson"}"#;
    let a = vxs(dir.path(), &["verify", "--seed", "7"], cfg);
    let b = vxs(dir.path(), &["verify", "--seed", "7"], cfg);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = vxs(dir.path(), &["verify", "--seed", "8"], cfg);
    assert_ne!(json(&a)["inputs_digest"], json(&c)["inputs_digest"]);
    assert!(json(&a).get("wall_time").is_none());
    let timed = vxs(dir.path(), &["verify", "--timing"], cfg);
    assert!(json(&timed)["wall_time"].as_f64().is_some());
}

#[test]
fn mean_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("means.csv");
    let out = vxs(
        dir.path(),
        &["mean", "--out", out_path.to_str().unwrap()],
        r#"{"p": "const 2", "f": {"type": "monomial", "k": 1}, "radii": [0.5, 0.9]}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(out_path).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<(f64, f64)> = reader.deserialize().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 2);
    for (r, m) in rows {
        assert!((m - r).abs() < 1e-10);
    }
}

#[test]
fn carleson_measure_formats() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("mu.csv"), "re, im, weight\n0.5, 0.0, 0.25\n0.0, -0.5, 0.25\n").unwrap();
    let base = r#""p": "harmonic 2 cos1=0.5", "a": 2, "k_max": 10"#;
    let out = vxs(dir.path(), &["carleson"], &format!(r#"{{{base}, "measure": "mu.csv"}}"#));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv_report = json(&out);
    let out = vxs(
        dir.path(),
        &["carleson"],
        &format!(r#"{{{base}, "measure": [{{"re": 0.5, "im": 0.0, "weight": 0.25}}, [0.0, -0.5, 0.25]]}}"#),
    );
    assert_eq!(out.status.code(), Some(0));
    let json_report = json(&out);
    assert_eq!(csv_report["results"], json_report["results"]);
    let out = vxs(dir.path(), &["carleson"], &format!(r#"{{{base}, "measure": "missing.csv"}}"#));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn littlewood_and_composition() {
    let dir = tempfile::tempdir().unwrap();
    let out = vxs(
        dir.path(),
        &["littlewood"],
        r#"{"p": "const 2", "f": {"type": "rational", "num": [1], "den": [1, -0.5]}, "omega": "z^2"}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    let out = vxs(dir.path(), &["littlewood"], r#"{"p": "const 2", "phi": {"type": "mobius", "lambda": 0.5}}"#);
    assert_eq!(out.status.code(), Some(0));
    let q = row(&json(&out), "max ratio / jacobian bound")["value"].as_f64().unwrap();
    assert!(q > 0.5 && q <= 1.0 + 1e-6);
    let out = vxs(dir.path(), &["littlewood"], r#"{"p": "const 2", "f": "z", "omega": {"type": "mobius", "lambda": 0.5}}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_harmonic_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let out = vxs(dir.path(), &["construct"], r#"{"p": {"kind": "harmonic", "a0": 2, "coefficients": [[1, 0.5, 0]]}}"#);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert!((row(&report, "tilde sup norm")["value"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert!((row(&report, "p(r=0.5, theta=0)")["value"].as_f64().unwrap() - 2.25).abs() < 1e-12);
}

#[test]
fn thread_cap() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, r#"{"suite": "lemma-poisson"}"#).unwrap();
    for (v, code) in [("1", 0), ("zero", 2)] {
        let out = Command::new(env!("CARGO_BIN_EXE_vxs"))
            .args(["verify", "--config"])
            .arg(&path)
            .env("VXS_MAX_THREADS", v)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(code));
    }
}
