use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn hyperspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperspace")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn error_record(out: &Output) -> Value {
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.trim().lines().count(), 1, "one-line error record expected, got {err}");
    serde_json::from_str(err.trim()).expect("error record is JSON")
}

#[test]
fn dist_mismatched_tails_is_infinite() {
    let out = hyperspace(&["dist", "--graph", "@ray", "--a", "R1:[1/4,1/2]", "--b", "R1:[1/4,inf)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "inf");
}

#[test]
fn dist_reads_graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("loop.graph");
    fs::write(&file, "vertex v\nedge E1 v v length 2\n").unwrap();
    let path = file.to_str().unwrap();
    let out = hyperspace(&["dist", "--graph", path, "--a", "E1:[0,2]", "--b", "E1:{0}"]);
    assert_eq!(stdout(&out).trim(), "1");
    let directed = hyperspace(&["dist", "--graph", path, "--a", "E1:{0}", "--b", "E1:[0,2]", "--directed"]);
    assert_eq!(stdout(&directed).trim(), "0");

    let json = dir.path().join("ray.json");
    fs::write(&json, r#"{"vertices":["v"],"rays":[{"id":"R1","at":"v"}]}"#).unwrap();
    let out = hyperspace(&["--json", "dist", "--graph", json.to_str().unwrap(), "--a", "R1:[0,1]", "--b", "R1:[3,4]"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["distance"], "3");
}

#[test]
fn wedge_real_line() {
    let out = hyperspace(&["wedge", "--expr", "(ray ∨ ray)"]);
    assert!(stdout(&out).lines().any(|l| l == "components: 4"));
    let out = hyperspace(&["--json", "wedge", "--expr", "((interval v interval) v interval)"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dims"], "3,2,2,2");
    assert_eq!(v["components"], 1);
}

#[test]
fn classify_self_is_constant() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("path.tsv");
    let out = hyperspace(&[
        "classify", "--graph", "@line", "--a", "R1:[0,1]", "--b", "R1:[0,1]", "-n", "1",
        "--emit-path", dump.to_str().unwrap(), "--samples", "4",
    ]);
    let text = stdout(&out);
    assert!(text.contains("same: true"));
    assert!(text.contains("CONST"));
    let rows: Vec<String> = fs::read_to_string(&dump).unwrap().lines().map(String::from).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0], "t\tset");
    assert_eq!(rows[3], "1/2\tR1:[0,1]");
}

#[test]
fn classify_across_components() {
    let out = hyperspace(&["--json", "classify", "--graph", "@line", "--a", "R1:[0,inf)", "--b", "R2:[0,inf)", "-n", "2"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["same"], false);
    assert_eq!(v["directions_a"], "{1}");
    assert_eq!(v["directions_b"], "{2}");
    assert_eq!(v["witness_ray"], 1);
}

#[test]
fn emitted_path_has_exact_samples() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("p.tsv");
    let out = hyperspace(&[
        "classify", "--graph", "@star3", "--a", "R1:[1,2] R3:[1,inf)", "--b", "R3:[5,inf)", "-n", "2",
        "--emit-path", dump.to_str().unwrap(), "--samples", "12",
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&dump).unwrap();
    let ts: Vec<&str> = text.lines().skip(1).map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(ts.len(), 13);
    assert_eq!(ts[0], "0");
    assert_eq!(ts[3], "1/4");
    assert_eq!(ts[12], "1");
    assert!(text.lines().nth(1).unwrap().ends_with("R1:[1,2] R3:[1,inf)"));
    assert!(text.lines().last().unwrap().ends_with("R3:[5,inf)"));
}

#[test]
fn path_reports_stages() {
    let out = hyperspace(&["--json", "path", "--graph", "@line", "--a", "R1:[1,2] R2:[1,inf)", "-n", "2", "--vietoris"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let kinds: Vec<&str> = v["stages"].as_array().unwrap().iter().map(|s| s["stage"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["F0", "F1", "F2", "GAMMA"]);
    assert_eq!(v["end"], "R1:[0,inf) R2:[0,inf)");
    assert_eq!(v["stages"][0]["lipschitz_local"], "1");
    assert_eq!(v["stages"][3]["lipschitz_local"], "inf");
}

#[test]
fn vietoris_membership_and_witness() {
    let membership = ["--json", "vietoris", "--graph", "@interval", "--a", "E1:[0,1/2]", "--open", "ball E1:1/4 1/2", "--open", "ball E1:1 1/4"];
    let out = hyperspace(&membership);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["upper"], true);
    assert_eq!(v["lower"], serde_json::json!([true, false]));
    assert_eq!(v["basic"], false);
    let mut with_witness = membership.to_vec();
    with_witness.extend(["--witness", "1/2"]);
    let out = hyperspace(&with_witness);
    assert_eq!(out.status.code(), Some(3), "witness needs the path value inside the open set");
    assert_eq!(error_record(&out)["error"], "precondition");

    let out = hyperspace(&[
        "--json", "vietoris", "--graph", "@line", "--a", "R1:[0,1]", "--open", "all", "--witness", "1/2", "--res", "1/100",
    ]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["basic"], true);
    assert_eq!(v["delta"], "1/2");
}

#[test]
fn oracle_counts_line() {
    let out = hyperspace(&["oracle", "--graph", "@line", "--step", "1/2", "--trunc", "2", "--delta", "3/5", "-n", "1"]);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "components: 4"), "{text}");
    assert!(text.contains("refines_by_direction: true"));
}

#[test]
fn validate_summarizes() {
    let out = hyperspace(&["--json", "validate", "--graph", "@theta"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rays"], 2);
    assert_eq!(v["loops"], 1);
    assert_eq!(v["components_of_cn"], "4");
}

#[test]
fn exit_codes_by_class() {
    let usage = hyperspace(&["dist", "--graph", "@ray"]);
    assert_eq!(usage.status.code(), Some(1));
    assert_eq!(error_record(&usage)["class"], "usage");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    fs::write(&bad, "vertex a b\nedge E1 a b\nedge E2 c b\n").unwrap();
    let parse = hyperspace(&["validate", "--graph", bad.to_str().unwrap()]);
    assert_eq!(parse.status.code(), Some(2));
    assert_eq!(error_record(&parse)["error"], "unknown_vertex");

    let disconnected = dir.path().join("split.graph");
    fs::write(&disconnected, "vertex a b\nedge E1 a a\nray R1 b\n").unwrap();
    let parse = hyperspace(&["validate", "--graph", disconnected.to_str().unwrap()]);
    assert_eq!(error_record(&parse)["error"], "disconnected");

    let pre = hyperspace(&["path", "--graph", "@line", "--a", "R1:[0,1] R1:[2,3]", "-n", "1"]);
    assert_eq!(pre.status.code(), Some(3));
    assert_eq!(error_record(&pre)["error"], "component_bound");

    let cap = hyperspace(&["oracle", "--graph", "@star3", "--step", "1/2", "--trunc", "2", "--delta", "3/5", "-n", "2", "--cap", "10"]);
    assert_eq!(cap.status.code(), Some(4));
    assert_eq!(error_record(&cap)["class"], "resource_cap");

    let missing = hyperspace(&["validate", "--graph", dir.path().join("nope").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["oracle", "--graph", "@noose_inf", "--step", "1/2", "--trunc", "2", "--delta", "3/5", "-n", "2"];
    assert_eq!(stdout(&hyperspace(&args)), stdout(&hyperspace(&args)));
}
