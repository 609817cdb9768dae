use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_higher-nash"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["etak", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["etak", "--n", "3", "--k", "4"]).status.code(), Some(2));
    assert_eq!(run(&["etak", "--n", "0", "--k", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["eta", "build", "--n", "3", "--seq", "1,0,1,1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["eta", "build", "--n", "3", "--seq", "1,x"]).status.code(),
        Some(2)
    );
}

#[test]
fn svg_only_for_fan() {
    let out = run(&["--format", "svg", "lambda", "--t", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("svg"));

    let out = run(&["fan", "--n", "3", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.trim_end().ends_with("</svg>"));
    assert!(text.contains("(3,-2)"));
}

#[test]
fn oracle_refuses_large_n() {
    let out = run(&["oracle", "--n", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1391975640"));
    assert_eq!(run(&["fan", "--n", "4", "--exhaustive"]).status.code(), Some(3));
}

#[test]
fn verify_reports_every_direction() {
    let v = json(&["verify", "--n", "1"]);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["reports"][0]["eta_k"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["reports"][0]["twin_source"], "omega_search");

    let v = json(&["verify", "--n", "5"]);
    assert_eq!(v["reports"].as_array().unwrap().len(), 5);
    assert_eq!(v["refines_minimal_resolution"], Value::Bool(true));

    let v = json(&["verify", "--n", "5", "--k", "2"]);
    assert_eq!(v["reports"].as_array().unwrap().len(), 1);
    assert_eq!(v["reports"][0]["k"], 2);
}

#[test]
fn lambda_and_eta_listing() {
    let v = json(&["lambda", "--t", "3", "--n", "2"]);
    let text = v.to_string();
    assert!(text.contains("[0,0,1]") && text.contains("[0,0,2]"));

    let v = json(&["eta", "list", "--n", "3"]);
    assert_eq!(v["count"], 8);
    assert_eq!(v["sequences"][0], serde_json::json!([0, 0, 1, 1, 1]));
    assert_eq!(v["sequences"][7], serde_json::json!([1, 0, 3]));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fan.json");
    let out = run(&["--out", path.to_str().unwrap(), "fan", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n"], 2);
}

#[test]
fn oracle_small_n_passes_and_uses_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = run(&["oracle", "--n", "2", "--cache-dir", cache]);
    assert_eq!(first.status.code(), Some(0));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 1);
    let second = run(&["oracle", "--n", "2", "--cache-dir", cache]);
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
}
