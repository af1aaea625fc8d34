use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

const U5: &str = "100000000110\n010000001000\n001000000011\n000101000000\n000011111110\n";

fn scattered(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scattered")).args(args).env_remove("SCATTER_BUDGET").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = scattered(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn matrix_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn analyze_known_example() {
    let f = matrix_file(U5);
    let path = f.path().to_str().unwrap();
    let v = json(&["analyze", "--p", "2", "--t", "6", "--r", "2", "--irr", "1,1,0,1,1,0,1", "--subspace", path]);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["outputs"]["scattered"], true);
    assert_eq!(v["outputs"]["maximal"], true);
    assert_eq!(v["outputs"]["maximum"], false);
    assert_eq!(v["outputs"]["dim"], 5);
}

#[test]
fn bounds_example() {
    let v = json(&["bounds", "--r", "3", "--t", "4", "--q", "2"]);
    assert_eq!(v["outputs"]["lower_maximal"], 5);
    assert_eq!(v["outputs"]["upper_desarguesian"], 6);
    assert_eq!(v["outputs"]["upper_general"], 8);
}

#[test]
fn existence_ambiguity_flagged() {
    let v = json(&["bounds", "--r", "6", "--t", "5", "--q", "3"]);
    assert_eq!(v["outputs"]["existence_max_product"], 15);
    assert_eq!(v["outputs"]["existence_largest_divisor"], 12);
    assert_eq!(v["outputs"]["existence_lower"], 15);
    assert_eq!(v["outputs"]["existence_ambiguous"], true);
}

#[test]
fn mrd_frobenius() {
    let v = json(&["mrd", "--q", "2", "--t", "3", "--poly", "0,1"]);
    assert_eq!(v["outputs"]["min_rank_distance"], 2);
    assert_eq!(v["outputs"]["mrd"], true);
    assert_eq!(v["outputs"]["graph_scattered"], true);
}

#[test]
fn spectrum_csv_has_two_rows() {
    let out = scattered(&["spectrum", "--r", "3", "--t", "2", "--q", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let sizes: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(sizes, ["1", "3"]);
}

#[test]
fn code_csv_weights() {
    let out = scattered(&["code", "--r", "3", "--t", "2", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "weight,count\n0,1\n4,21\n6,42\n");
}

#[test]
fn runs_are_byte_identical() {
    let args = ["search", "--r", "3", "--t", "4", "--restarts", "5", "--seed", "9"];
    let a = scattered(&args).stdout;
    let b = scattered(&args).stdout;
    assert_eq!(a, b);
    let mut par = args.to_vec();
    par.extend(["--parallel", "4"]);
    assert_eq!(scattered(&par).stdout, a);
}

#[test]
fn greedy_search_ignores_worker_count() {
    let one = scattered(&["search", "--r", "2", "--t", "4"]).stdout;
    let three = scattered(&["search", "--r", "2", "--t", "4", "--parallel", "3"]).stdout;
    assert_eq!(one, three);
}

#[test]
fn timing_is_opt_in() {
    let v = json(&["bounds", "--r", "2", "--t", "3"]);
    assert!(v.get("elapsed_ms").is_none());
    let v = json(&["bounds", "--r", "2", "--t", "3", "--timing"]);
    assert!(v["elapsed_ms"].is_number());
}

#[test]
fn witness_round_trips_through_matrix_file() {
    let v = json(&["search", "--r", "3", "--t", "2", "--q", "3"]);
    let rows: Vec<String> =
        v["outputs"]["subspace"].as_array().unwrap().iter().map(|r| r.as_str().unwrap().to_string()).collect();
    let f = matrix_file(&(rows.join("\n") + "\n"));
    let a = json(&["analyze", "--r", "3", "--t", "2", "--q", "3", "--subspace", f.path().to_str().unwrap()]);
    assert_eq!(a["outputs"]["scattered"], true);
    assert_eq!(a["outputs"]["dim"], v["outputs"]["dim"]);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = scattered(&["hyperoval", "--t", "3", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["outputs"]["size"], 10);
    assert_eq!(v["outputs"]["lines_checked"], "73");
}

#[test]
fn pseudoregulus_and_splash() {
    let v = json(&["pseudoregulus", "--r", "4", "--t", "3"]);
    assert_eq!(v["outputs"]["secant_count"], 9);
    assert_eq!(v["outputs"]["transversal_count"], 2);
    let s = json(&["splash", "--r", "3", "--t", "3", "--kind", "external"]);
    assert_eq!(s["outputs"]["size"], 7);
    assert!(s["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn every_command_runs_clean() {
    for args in [
        vec!["field", "--p", "3", "--t", "3"],
        vec!["spread", "--r", "3", "--t", "2", "--q", "3"],
        vec!["extend", "--r", "2", "--t", "3"],
        vec!["linset", "--r", "3", "--t", "2"],
        vec!["dual", "--r", "2", "--t", "4"],
        vec!["blocking", "--r", "3", "--t", "2", "--k", "1"],
        vec!["cap", "--r", "3", "--t", "2", "--exhaustive"],
        vec!["design-check", "--r", "3", "--t", "2"],
    ] {
        let v = json(&args);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(scattered(&["analyze", "--r", "2"]).status.code(), Some(2));
    assert_eq!(scattered(&["bounds", "--q", "6"]).status.code(), Some(2));
    assert_eq!(scattered(&["nonsense"]).status.code(), Some(2));
    assert_eq!(scattered(&["bounds", "--format", "xml"]).status.code(), Some(2));
    let out = scattered(&["search", "--r", "3", "--t", "3", "--exhaustive", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_scattered"))
        .args(["spectrum", "--r", "3", "--t", "2"])
        .env("SCATTER_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_scattered"))
        .args(["spectrum", "--r", "3", "--t", "2", "--budget", "1000"])
        .env("SCATTER_BUDGET", "5")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn non_scattered_input_rejected() {
    let f = matrix_file("1 0 0 0\n0 1 0 0\n");
    let out = scattered(&["hyperoval", "--t", "2", "--subspace", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
