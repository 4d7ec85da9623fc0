//! Command-level behavior: output values, selectors, exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.hsq"))
        .to_str()
        .unwrap()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hstrace")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = run(&full);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn info_reports_invariants() {
    let v = json(&["info", &fixture("a2")]);
    assert_eq!(v["algebra"]["dim"], 3);
    assert_eq!(v["algebra"]["loewy_length"], 2);
    assert_eq!(v["algebra"]["hh0_dim"], 2);
    assert_eq!(v["algebra"]["loops_per_vertex"], serde_json::json!([0, 0]));

    let v = json(&["info", &fixture("loop")]);
    assert_eq!(v["algebra"]["dim"], 2);
    assert_eq!(v["algebra"]["loewy_length"], 2);
    assert_eq!(v["algebra"]["hh0_dim"], 2);
    assert_eq!(v["algebra"]["loops_per_vertex"], serde_json::json!([1]));

    let v = json(&["info", &fixture("square")]);
    assert_eq!(v["algebra"]["dim"], 9);
    assert_eq!(v["algebra"]["loewy_length"], 3);
    assert_eq!(v["algebra"]["radical_layer_dims"], serde_json::json!([4, 4, 1]));
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["info", "no-such-file.hsq"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
}

#[test]
fn parse_error_exits_two() {
    let dir = std::env::temp_dir().join("hstrace-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.hsq");
    std::fs::write(&bad, "field Q; vertices 1; arrows l: 1 -> 9;").unwrap();
    let out = run(&["info", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown"));
}

#[test]
fn pd_of_simples() {
    let v = json(&["pd", &fixture("a2"), "--module", "simple:1"]);
    assert_eq!(v["results"][0]["value"], "Finite(1)");
    let v = json(&["pd", &fixture("a2"), "--module", "simple:2"]);
    assert_eq!(v["results"][0]["value"], "Finite(0)");
    let v = json(&["pd", &fixture("loop"), "--module", "simple:1", "--bound", "20"]);
    assert_eq!(v["results"][0]["value"], "AtLeast(20)");
    let v = json(&["pd", &fixture("a3rel"), "--module", "simple:3", "--left"]);
    assert_eq!(v["results"][0]["value"], "Finite(2)");
}

#[test]
fn ext_dimension_on_loop() {
    let v = json(&["ext", &fixture("loop"), "1", "1", "--degree", "1"]);
    assert_eq!(v["results"][0]["value"], "1");
    let v = json(&["ext", &fixture("a2"), "1", "1", "--degree", "1"]);
    assert_eq!(v["results"][0]["value"], "0");
}

#[test]
fn trace_of_left_multiplication() {
    let v = json(&["trace", &fixture("loop"), "--endo", "l:x", "--on", "regular"]);
    assert_eq!(v["results"][0]["value"], "[0, 1]");
    let v = json(&["trace", &fixture("loop"), "--endo", "l:e_1 + 2 x", "--on", "regular"]);
    assert_eq!(v["results"][0]["value"], "[1, 2]");
    // Over A2 the arrow is a commutator, so its class vanishes.
    let v = json(&["trace", &fixture("a2"), "--endo", "l:a", "--on", "regular"]);
    assert_eq!(v["results"][0]["value"], "[0, 0]");
}

#[test]
fn trace_on_projective_sum() {
    // End(e1A ⊕ e2A) over A2 has dimension 3: the two identities and the
    // off-diagonal map e2A → e1A (whose trace vanishes).
    let out = run(&["trace", &fixture("a2"), "--endo", "hom:1,1", "--on", "proj:1,2"]);
    assert_eq!(out.status.code(), Some(2), "wrong coefficient count is a usage error");
    let v = json(&["trace", &fixture("a2"), "--endo", "hom:1,1,1", "--on", "proj:1,2"]);
    assert!(v["results"][0]["value"].is_string());
}

#[test]
fn character_values() {
    let v = json(&["character", &fixture("loop"), "--complex", "twoterm:l:x", "--endo", "l:x"]);
    assert_eq!(v["results"][0]["value"], "[0, 0]");
    let v = json(&["character", &fixture("loop"), "--complex", "stalk:regular", "--endo", "l:x"]);
    assert_eq!(v["results"][0]["value"], "[0, 1]");
}

#[test]
fn unknown_suite_exits_two() {
    let out = run(&["verify", &fixture("a2"), "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_selector_exits_two() {
    let out = run(&["pd", &fixture("a2"), "--module", "simple:9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["trace", &fixture("a2"), "--endo", "l:zz", "--on", "regular"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn noloop_suite_on_loop_fixture() {
    let out = run(&["verify", &fixture("loop"), "--suite", "noloop", "--bound", "20"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("strong-no-loop"), "{text}");
}

#[test]
fn prime_field_fixture_runs() {
    let dir = std::env::temp_dir().join("hstrace-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let f2 = dir.join("loop_f2.hsq");
    std::fs::write(&f2, "field F 2; vertices 1; arrows x: 1 -> 1; relations x*x;").unwrap();
    let out = run(&["verify", f2.to_str().unwrap(), "--suite", "hs", "--trials", "20", "--seed", "1"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}
