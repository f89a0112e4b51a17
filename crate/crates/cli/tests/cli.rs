use std::process::{Command, Output};

use serde_json::Value;

fn robin_gap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robin-gap"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn free_neumann_gap_is_one() {
    let out = robin_gap(&["gap", "--alpha", "0", "--beta", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let gap = json(&out)["gap"].as_f64().unwrap();
    assert!((gap - 1.0).abs() < 1e-8, "{gap}");
}

#[test]
fn mixed_dirichlet_gap_on_custom_length() {
    let out = robin_gap(&["gap", "--alpha", "inf", "--beta", "0", "--L", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let gap = json(&out)["gap"].as_f64().unwrap();
    let expected = 2.0 * std::f64::consts::PI.powi(2) / 4.0;
    assert!((gap - expected).abs() < 1e-7, "{gap} vs {expected}");
}

#[test]
fn sweep_m_writes_csv() {
    let out = robin_gap(&[
        "sweep-m", "--alpha", "1", "--m-min", "0", "--m-max", "2", "--steps", "4", "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "param,gap");
    assert_eq!(lines.len(), 6);
    let first: Vec<f64> = lines[1].split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
}

#[test]
fn passing_suite_exits_zero() {
    let out = robin_gap(&["verify", "--suite", "m0-identity", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let body = json(&out);
    assert_eq!(body["pass"], Value::Bool(true));
    assert_eq!(body["suites"][0]["pass"], Value::Bool(true));
}

#[test]
fn centered_search_reports_failure() {
    let out = robin_gap(&[
        "search",
        "--family",
        "offcenter",
        "--alpha",
        "0",
        "--tau",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert_eq!(
        robin_gap(&["gap", "--alpha", "banana"]).status.code(),
        Some(2)
    );
    assert_eq!(
        robin_gap(&["gap", "--potential", "{\"form\":\"nope\"}"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        robin_gap(&["verify", "--suite", "no-such-suite"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(robin_gap(&[]).status.code(), Some(2));
}

#[test]
fn config_file_matches_flags_and_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("run.json");
    std::fs::write(&good, r#"{"command": "gap", "alpha": "inf", "beta": 1.5}"#).unwrap();
    let from_config = robin_gap(&["--config", good.to_str().unwrap()]);
    let from_flags = robin_gap(&["gap", "--alpha", "inf", "--beta", "1.5"]);
    assert_eq!(from_config.status.code(), Some(0));
    assert_eq!(from_config.stdout, from_flags.stdout);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"command": "gap", "colour": "red"}"#).unwrap();
    assert_eq!(
        robin_gap(&["--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = robin_gap(&[
            "verify",
            "--suite",
            "thm-1.3",
            "--seed",
            "11",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn eig_csv_has_eigenfunction_columns() {
    let out = robin_gap(&["eig", "--k", "2", "--N", "64", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 66, "{}", text.lines().next().unwrap());
}
