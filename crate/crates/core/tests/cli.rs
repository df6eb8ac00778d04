//! Runs the `flatdim` binary on the problem files shipped in `problems/`.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn flatdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatdim")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = flatdim(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn every_shipped_problem_loads() {
    for entry in std::fs::read_dir(problem("")).unwrap() {
        let path = entry.unwrap().path();
        let v = json(&["ring-info", path.to_str().unwrap()]);
        assert!(v["ring"]["dim"].is_u64(), "{}", path.display());
    }
}

#[test]
fn node_module_is_infinite_by_both_methods() {
    let v = json(&["flatdim", "--method", "both", problem("node_x.json").to_str().unwrap()]);
    assert_eq!(v["flat_dimension"]["outcome"], "infinite");
    assert_eq!(v["flat_dimension"]["witness"]["i"], 1);
    assert_eq!(v["flat_dimension"]["agree"], true);
}

#[test]
fn koszul_complex_has_finite_flat_dimension() {
    let v = json(&["flatdim", problem("koszul_complex.json").to_str().unwrap()]);
    assert_eq!(v["flat_dimension"]["outcome"], "finite");
    assert_eq!(v["flat_dimension"]["bound"], 3);
}

#[test]
fn quotient_by_a_regular_element() {
    let file = problem("node_regular.json");
    let f = file.to_str().unwrap();
    assert_eq!(json(&["flatdim", f])["flat_dimension"]["bound"], 2);
    assert_eq!(json(&["loewy-bounds", f])["bounds"]["exact"], 2);
    let w = json(&["verify", "window-collapse", "--e", "1", "--t", "1", f]);
    assert_eq!(w["window_collapse"]["koszul_leg"], "holds");
}

#[test]
fn decomposition_on_the_artinian_example() {
    let v = json(&["verify", "tor-decomposition", "--e", "1", problem("residue_field.json").to_str().unwrap()]);
    assert_eq!(v["tor_decomposition"]["passed"], true);
}

#[test]
fn cone_resolution_is_periodic() {
    let v = json(&["resolve", "--length", "4", problem("quadric_cone.json").to_str().unwrap()]);
    assert_eq!(v["resolution"]["betti"]["totals"], serde_json::json!([1, 2, 2, 2, 2]));
}

#[test]
fn missing_file_exits_with_input_error() {
    let out = flatdim(&["ring-info", "no/such/file.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn degree_cap_exits_with_limit_code() {
    let file = problem("node_x.json");
    for cap in ["1", "3"] {
        let out = flatdim(&["--max-degree", cap, "tor-frob", "--e", "2", "--lo", "1", "--hi", "1", file.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "cap {cap}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let file = problem("quadric_cone.json");
    let args = ["--format", "json", "cr-bound", file.to_str().unwrap()];
    assert_eq!(flatdim(&args).stdout, flatdim(&args).stdout);
}
