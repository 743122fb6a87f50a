use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn posetkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_fixture() {
    let out = posetkit(&["analyze", "hmgap4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["triples"]["class"], "I");
}

#[test]
fn represent_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.json");
    let out = posetkit(&["represent", "boolean_3", "--n", "omega", "--out", rep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = posetkit(&["verify", "boolean_3", rep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn refusal_is_a_violation() {
    let out = posetkit(&["represent", "hmgap4", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness"]["a"], "a");
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"elements\": [\"a\"], \"le\": [[\"a\", \"b\"]]}").unwrap();
    let out = posetkit(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let out = posetkit(&["analyze", "no-such-fixture"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn campaign_is_reproducible() {
    let args = ["campaign", "--seed", "7", "--max-size", "4", "--samples", "30"];
    let a = posetkit(&args);
    let b = posetkit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["violation_count"], 0);
}

#[test]
fn search_reports_minimum() {
    let out = posetkit(&["search", "split_triple", "--max-size", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["minimal_size"], 5);
}
