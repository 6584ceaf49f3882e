use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qplane")).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn emit(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut all = vec!["table1"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--emit", &path]);
    assert!(qplane(&all).status.success());
    path
}

#[test]
fn nc_at_two_is_not_finite_over_center() {
    let dir = tempfile::tempdir().unwrap();
    let f = emit(dir.path(), "nc.json", &["--type", "NC", "--alpha", "2"]);
    let v = json_of(&qplane(&["verdict", &f, "--json"]));
    assert_eq!(v["proj_finite_over_center"], false);
    assert_eq!(v["has_fat_point"], false);
    assert_eq!(v["sigma_norm"]["result"]["kind"], "certified_infinite");
    assert_eq!(v["assumed_regular"], true);
}

#[test]
fn hessian_of_cusp() {
    let v = json_of(&qplane(&["hessian", "--cubic", "x^3 - y^2*z", "--json"]));
    assert_eq!(v["hessian"], "-24*x*y^2");
    assert_eq!(v["second_hessian_zero"], true);
}

#[test]
fn classify_triangle() {
    let v = json_of(&qplane(&["classify", "--cubic", "x*y*z", "--json"]));
    assert_eq!(v["type"], "S");
    assert_eq!(v["components"].as_array().unwrap().len(), 3);
}

#[test]
fn order_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = emit(dir.path(), "s1.json", &["--type", "S1", "--alpha", "zeta6"]);
    let v = json_of(&qplane(&["order", &f, "--json"]));
    assert_eq!(v["sigma_norm"]["result"]["value"], 2);
    assert_eq!(v["sigma_order"]["result"]["value"], 6);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn verdict_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = emit(dir.path(), "a.json", &["--type", "SPrime", "--alpha", "zeta6"]);
    let b = emit(dir.path(), "b.json", &["--type", "CC"]);
    let c = emit(dir.path(), "c.json", &["--type", "EC", "--ec-point", "s"]);
    let run = || qplane(&["verdict", &a, &b, &c, "--json"]);
    let (x, y) = (run(), run());
    assert!(x.status.success());
    assert_eq!(x.stdout, y.stdout);
    let v: Value = serde_json::from_slice(&x.stdout).unwrap();
    let types: Vec<_> = v.as_array().unwrap().iter().map(|r| r["type_label"].clone()).collect();
    assert_eq!(types, ["S'", "CC", "EC"]);
}

#[test]
fn ec_operations() {
    let v = json_of(&qplane(&["ec", "--lambda", "0", "--op", "order", "--points", "1,-1,0", "--json"]));
    assert_eq!(v["order"]["value"], 1);
    let v = json_of(&qplane(&["ec", "--lambda", "0", "--op", "torsion3", "--json"]));
    assert_eq!(v["points"].as_array().unwrap().len(), 9);
    let v = json_of(&qplane(&["ec", "--lambda", "0", "--op", "add", "--points", "0,1,-1; 0,1,-1", "--json"]));
    assert_eq!(v["sum"], serde_json::json!(["1", "0", "-1"]));
}

fn error_of(out: &Output) -> Value {
    let line = String::from_utf8_lossy(&out.stderr);
    assert_eq!(line.trim_end().lines().count(), 1, "{line}");
    serde_json::from_str(line.trim()).unwrap()
}

#[test]
fn input_errors_exit_one() {
    let out = qplane(&["ec", "--lambda", "3", "--op", "torsion3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(error_of(&out)["error"]["kind"].is_string());

    let out = qplane(&["verdict", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(1));
    error_of(&out);

    let out = qplane(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_of(&out)["error"]["kind"], "usage");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"relations": ["xy - yx"]}"#).unwrap();
    let out = qplane(&["verdict", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    error_of(&out);
}

#[test]
fn caps_are_validated() {
    let out = qplane(&["--fit-cap", "0", "hessian", "--cubic", "x^3"]);
    assert_eq!(out.status.code(), Some(1));
    error_of(&out);
}

#[test]
fn help_exits_zero() {
    let out = qplane(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict"));
}
