use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codiff")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is json")
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", &data("sl2.json")]).status.code(), Some(0));
    assert_eq!(run(&["verify", &data("dgla.json")]).status.code(), Some(0));
    let bad = run(&["verify", &data("nonassociative.json")]);
    assert_eq!(bad.status.code(), Some(1));
    let report = json(&bad);
    assert_eq!(report["verdict"], "fail");
    assert_eq!(report["details"]["relations_hold"], false);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["verify", "/nonexistent/algebra.json"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"kind":"lie","basis":[{"name":"x","parity":0}],"operations":[{"arity":2,"values":{"x,y":{"x":"1"}}}]}"#,
    )
    .unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains('y'));

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["verify", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn sl2_top_degree_trivial() {
    let out = run(&["cohomology", &data("sl2.json"), "--degree", "3", "--coefficients", "trivial"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["details"]["degrees"][0]["dimension"], 1);
}

#[test]
fn cyclic_cohomology_of_sl2() {
    let out = run(&["cyclic-cohomology", &data("sl2.json"), "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn signs_check_passes() {
    for seed in ["0", "11"] {
        let out = run(&["signs-check", "--which", "all", "--seed", seed]);
        assert_eq!(out.status.code(), Some(0));
    }
}

#[test]
fn bracket_of_scaling_with_itself() {
    let s = data("sl2_scaling.json");
    let out = run(&["bracket", &s, &s]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["details"]["is_zero"], true);
}

#[test]
fn scaling_deformation_is_trivial() {
    let out = run(&["deform", &data("sl2.json"), "--cochain", &data("sl2_scaling.json")]);
    assert_eq!(out.status.code(), Some(0));
    let d = &json(&out)["details"];
    assert_eq!(d["trivial"], true);
    assert_eq!(d["routes_agree"], true);
}

#[test]
fn transport_round_trips() {
    let out = run(&["transport", &data("osp12.json"), "--direction", "to-w"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["details"]["round_trip"], true);
    assert_eq!(run(&["transport", &data("osp12.json"), "--direction", "to-v"]).status.code(), Some(2));
}

#[test]
fn text_output_and_timing() {
    let out = run(&["verify", &data("heisenberg.json"), "--text", "--timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().ends_with(": pass"));
    assert!(text.contains("time: "));
    assert!(text.contains("relations_hold: true"));
}

#[test]
fn sequential_matches_parallel() {
    let args = ["cohomology", &data("gl2.json"), "--coefficients", "adjoint"];
    let par = run(&args);
    let mut seq_args = args.to_vec();
    seq_args.push("--sequential");
    let seq = run(&seq_args);
    assert_eq!(json(&par)["details"], json(&seq)["details"]);
}

#[test]
fn selftest_reduced_passes() {
    let out = run(&["selftest", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
}
