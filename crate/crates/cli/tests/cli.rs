use std::process::{Command, Output};

use serde_json::Value;

fn gradstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradstar")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = gradstar(&a);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (v, out.status.code().unwrap())
}

#[test]
fn ring_registry_lists_shipped_rings() {
    let (v, code) = json(&["ring", "list"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["rings"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["laurent_z", "poly_q2", "veronese_q"]);
    assert_eq!(v["schema"], "report_v1");
}

#[test]
fn syntax_errors_report_the_column() {
    let out = gradstar(&["eval", "x + "]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 4"));
    let out = gradstar(&["eval", "q^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`q`"));
}

#[test]
fn laurent_monomials_parse() {
    let (v, code) = json(&["--ring", "laurent_z", "eval", "t^-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "t^-1");
    assert_eq!(v["homogeneous"], true);
}

#[test]
fn gauss_counterexample_sets_exit_status() {
    let (v, code) = json(&["gauss", "--f", "x + y*X", "--g", "x - y*X"]);
    assert_eq!(code, 1);
    assert_eq!(v["equal"], false);
    assert_eq!(v["witness"], "x*y");
    for k in ["lhs", "rhs", "equal", "witness"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    let (v, code) = json(&["gauss", "--f", "x + y*X", "--g", "x - y*X", "--star", "v"]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], true);
}

#[test]
fn classical_gauss_on_laurent() {
    let (v, code) =
        json(&["--ring", "laurent_z", "gauss", "--classical", "--f", "2 + (1 + t)*X", "--g", "2 - (1 + t)*X"]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"], "2 + 2*t");
    let (v, code) = json(&["--ring", "laurent_z", "gauss", "--f", "2 + (1 + t)*X", "--g", "2 - (1 + t)*X"]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], true);
}

#[test]
fn ideal_operations() {
    let (v, _) = json(&["ideal", "inverse", "(x, y)"]);
    assert_eq!(v["result"], "(1)");
    let (v, _) = json(&["ideal", "member", "x*y/x", "(y)"]);
    assert_eq!(v["result"], true);
    let (v, _) = json(&["ideal", "equals", "(x^2, x*y)", "(x)"]);
    assert_eq!(v["result"], false);
    let (v, _) = json(&["ideal", "colon", "(x^2, x*y)", "(x)", "--trace"]);
    let (w, _) = json(&["ideal", "equals", v["result"].as_str().unwrap(), "(x, y)"]);
    assert_eq!(w["result"], true);
    assert!(v["trace"].as_array().unwrap().len() == 2);
}

#[test]
fn dm_trace() {
    let (v, code) = json(&["dm", "--f", "x + y*X", "--g", "y + x*X", "--trace"]);
    assert_eq!(code, 0);
    assert_eq!(v["m"], 1);
    assert_eq!(v["trace"][0], "m=1: equal");
}

#[test]
fn star_closures_and_incompatibility() {
    let (v, _) = json(&["star", "(x, y)", "--star", "v"]);
    assert_eq!(v["closure"], "(1)");
    let (v, _) = json(&["star", "(x, y)", "--star", "d"]);
    assert_eq!(v["closed"], true);
    let out = gradstar(&["--ring", "veronese_q", "star", "(x^2)", "--star", "w"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pvmd"));
}

#[test]
fn nagata_commands() {
    let (v, _) = json(&["nagata", "member", "--f", "x + y*X", "--star", "v"]);
    assert_eq!(v["member"], true);
    assert_eq!(v["certificate"]["kind"], "nagata-membership");
    let (v, _) = json(&["nagata", "invert", "(x, y)"]);
    assert_eq!(v["invertible"], false);
    let (v, _) = json(&["nagata", "pic", "--f", "x + y*X", "--f", "x^2"]);
    assert_eq!(v["additive"], true);
    assert_eq!(v["generator"], "x + y*X + x^2*X^2");
}

#[test]
fn kron_certificates() {
    let (v, code) = json(&["kron", "member", "--f", "x*y", "--g", "x^2 + y^2*X", "--star", "d", "--bound", "1"]);
    assert_eq!(code, 0);
    for k in ["kind", "witness_poly", "aux_h", "bound", "verdict"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["verdict"], "member");
    assert!(v["aux_h"].is_string());
    let out = gradstar(&["kron", "member", "--f", "x", "--g", "y", "--star", "d", "--mode", "general", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let (v, code) = json(&["kron", "combine", "--f", "x", "--f", "y", "--g", "x + y*X"]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 1);
}

#[test]
fn suite_reports_are_reproducible() {
    let args = ["--ring", "laurent_z", "suite", "run", "n-sat", "--budget", "10", "--seed", "9", "--json"];
    let a = gradstar(&args);
    let b = gradstar(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "report_v1");
    assert_eq!(v["fail"], 0);
}

#[test]
fn suite_counterexample_exit_status() {
    let out = gradstar(&["suite", "run", "gauss-cp", "--budget", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("x*y"));
}

#[test]
fn falsify_outcomes() {
    let (v, code) = json(&["--ring", "laurent_z", "falsify", "na-vs-classical-nagata"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "counterexample");
    assert_eq!(v["certificate"]["f"], "1 + t");
    assert_eq!(v["revalidated"], true);
    let out = gradstar(&["--ring", "laurent_z", "falsify", "graded-gauss", "--budget", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not exhausted"));
    let out = gradstar(&["falsify", "no-such-identity"]);
    assert_eq!(out.status.code(), Some(2));
}
