use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn chx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chx")).args(args).output().expect("chx runs")
}

/// Runs with JSON output and returns the exit code and parsed report.
fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--output", "json"];
    all.extend_from_slice(args);
    let out = chx(&all);
    let code = out.status.code().unwrap();
    let v =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (code, v)
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn level_reports_verdicts() {
    let (code, v) = json(&["level", &path("toffoli.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["tool"], "chx");
    assert_eq!(v["command"], "level");
    assert_eq!(v["outcome"], "decided");
    assert_eq!(v["result"]["status"], "in_ch");
    assert_eq!(v["result"]["level"], 3);
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);

    let (code, v) = json(&["level", &path("toffoli_pair_ab.json")]);
    assert_eq!(code, 0, "a negative answer is still a decision");
    assert_eq!(v["result"]["status"], "not_in_ch");

    let (_, v) = json(&["level", &path("toffoli_t_composite.json")]);
    assert_eq!(v["result"]["level"], 4);
}

#[test]
fn diag_handles_non_dyadic_phases() {
    let (code, v) = json(&["diag", &path("ccz.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["level"], 3);
    let (code, v) = json(&["diag", &path("non_dyadic_phase.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "not_in_ch");
}

#[test]
fn group_actions() {
    let (_, v) = json(&["group", "closure", &path("dihedral.json"), "--levels"]);
    assert_eq!(v["result"]["order"], 16);
    let (_, v) = json(&["group", "check-gsc", &path("toffoli_pair_negative.json")]);
    assert_eq!(v["result"]["report"]["verdict"], "fail");
    assert_eq!(v["result"]["report"]["witness"]["word"], "ab");
    let (_, v) = json(&["group", "recipe", &path("recipe_two_clifford_wires.json")]);
    assert_eq!(v["result"]["ok"], false);
}

#[test]
fn resource_limits_abort_with_code_two() {
    let (code, v) = json(&["--max-qubits", "2", "level", &path("toffoli.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["outcome"], "aborted");
    let (code, _) = json(&["--closure-cap", "10", "group", "closure", &path("dihedral.json")]);
    assert_eq!(code, 2);
}

#[test]
fn bad_input_exits_with_code_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"qubits\": 2, \"gates\": [{\"name\": \"NOPE\", \"targets\": [0]}]}").unwrap();
    let out = chx(&["level", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert!(out.stdout.is_empty());

    let out = chx(&["level", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn inputless_commands() {
    let (code, v) = json(&["count-dk", "--n", "2", "--k", "3", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["input"], Value::Null);
    assert!(v["summary"].as_str().unwrap().contains("256"));
    let (code, v) = json(&["verify-identities"]);
    assert_eq!(code, 0);
    assert!(v["result"]["identities"].as_array().unwrap().iter().all(|i| i["holds"] == true));
}

#[test]
fn text_output_has_a_header() {
    let out = chx(&["ct", "certify", &path("commuting_toffoli_network.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("chx "));
    assert!(text.contains("outcome: decided"));
}
