use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn dwlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwlab")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn generate(dir: &TempDir, args: &[&str], name: &str) -> PathBuf {
    let out = dwlab(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    write(dir, name, std::str::from_utf8(&out.stdout).unwrap())
}

#[test]
fn width_of_generated_tree() {
    let dir = TempDir::new().unwrap();
    let g = generate(&dir, &["gen", "upclosure", "--h", "3"], "u.json");
    let out = dwlab(&["--format", "json", "width", path(&g)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["width"], 3);
}

#[test]
fn edge_list_input_is_detected() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p.txt", "# path\na b\nb c\n");
    let out = dwlab(&["--format", "json", "solve", path(&g), "-k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["winner"], "cops");
}

#[test]
fn width_bound_exceeded_is_negative() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c.txt", "a b\nb a\nb c\nc b\na c\nc a\n");
    let out = dwlab(&["--format", "json", "width", path(&g), "--max", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["exceeds"], 2);
}

#[test]
fn decomposition_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = generate(&dir, &["gen", "sibling", "--n", "2"], "s.json");
    let d = generate(&dir, &["strategy-to-decomp", path(&g), "-k", "2"], "d.json");
    let out = dwlab(&["--format", "json", "validate-decomp", path(&g), path(&d)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["width"], 2);
    let t = generate(&dir, &["decomp-to-strategy", path(&g), path(&d)], "t.json");
    let out = dwlab(&["--format", "json", "count-positions", path(&g), "-k", "2", "--strategy", path(&t)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["longest_play"].as_u64().unwrap() <= 2 * 3);
}

#[test]
fn broken_decomposition_reports_witness() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p.txt", "a b\n");
    let d = write(&dir, "d.json", r#"{"nodes": [{"id": 0, "bag": [0]}], "edges": []}"#);
    let out = dwlab(&["--format", "json", "validate-decomp", path(&g), path(&d)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], false);
}

#[test]
fn qbf_eval_and_reduction() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.qdimacs", "p cnf 2 2\ne 1 0\na 2 0\n1 2 0\n1 -2 0\n");
    let out = dwlab(&["--format", "json", "qbf-eval", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["truth"], true);
    let graph = dir.path().join("s.json");
    let out = dwlab(&["--format", "json", "reduce", path(&f), "--emit-graph", path(&graph)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["k_star"], 10);
    assert!(graph.exists());
}

#[test]
fn cnf_tautology() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let out = dwlab(&["--format", "json", "qbf-eval", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["tautology"], false);
}

#[test]
fn scripted_verification_agrees_on_single_variable() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.qdimacs", "p cnf 1 1\ne 1 0\n1 0\n");
    let out = dwlab(&["--format", "json", "verify-reduction", "--scripted", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["agrees"], true);
    assert_eq!(r["wiring_ok"], true);
}

#[test]
fn kelly_width_and_order() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c.txt", "a b\nb a\nb c\nc b\n");
    let out = dwlab(&["--format", "json", "kelly", path(&g)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["kelly_width"], 2);
    let o = write(&dir, "o.json", r#"["a", "c", "b"]"#);
    let out = dwlab(&["--format", "json", "kelly", path(&g), "--order", path(&o)]);
    assert_eq!(json(&out)["order_width"], 2);
}

#[test]
fn malformed_input_is_exit_two() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.json", "{ not json");
    let out = dwlab(&["width", path(&g)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: input:"));
    let f = write(&dir, "bad.qdimacs", "p cnf 1 1\ne 2 0\n1 0\n");
    assert_eq!(dwlab(&["qbf-eval", path(&f)]).status.code(), Some(2));
}

#[test]
fn usage_errors_are_exit_two() {
    assert_eq!(dwlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dwlab(&["solve"]).status.code(), Some(2));
}

#[test]
fn tiny_budget_is_exit_three() {
    let dir = TempDir::new().unwrap();
    let g = generate(&dir, &["gen", "upclosure", "--h", "4"], "u.json");
    let out = dwlab(&["width", path(&g), "--budget", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: budget:"));
}

#[test]
fn bad_thread_setting_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_dwlab"))
        .args(["gen", "sibling", "--n", "1"])
        .env("DWLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gadget_summary_json() {
    let out = dwlab(&["--format", "json", "gen", "gnst", "--n", "6", "--summary"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["vertices"], 19);
    assert!(v["levels"].as_array().unwrap().len() >= 2);
}
