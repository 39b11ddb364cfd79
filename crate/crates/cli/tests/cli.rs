use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const W1: &str = "v a\nv b\nv c\nv d\na b\nc d\nx a\nx b\nx y\ny c\ny d\n";
const CLAW: &str = "c a\nc b\nc d\n";

fn linecm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linecm")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn analyze_cycle_with_oracle() {
    let dir = TempDir::new().unwrap();
    let c6 = write(&dir, "c6.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
    let out = linecm(&["analyze", &c6, "--with-oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "linecm/1");
    assert_eq!(v["verdicts"]["cm"]["value"], true);
    assert_eq!(v["verdicts"]["gorenstein"]["value"], true);
    assert_eq!(v["verdicts"]["seq_cm"]["value"], true);
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn analyze_w1_is_not_sequentially_cm() {
    let dir = TempDir::new().unwrap();
    let w1 = write(&dir, "w1.txt", W1);
    let out = linecm(&["analyze", &w1, "--with-oracle", "--field", "2", "--field", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdicts"]["seq_cm"]["value"], false);
    assert_eq!(v["verdicts"]["linear_algorithm"]["value"], false);
    assert_eq!(v["oracle"]["verdicts"]["seq_cm"]["Q"], false);
    assert_eq!(v["oracle"]["verdicts"]["high_skeletons_cm"], true);
}

#[test]
fn claw_is_not_a_line_graph() {
    let dir = TempDir::new().unwrap();
    let claw = write(&dir, "claw.txt", CLAW);
    let out = linecm(&["analyze", &claw, "--input-graph", "g"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["line_graph"], false);
}

#[test]
fn line_graph_input_is_recognized() {
    let dir = TempDir::new().unwrap();
    // L(C5) = C5
    let g = write(&dir, "g.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    let out = linecm(&["analyze", &g, "--input-graph", "g", "--with-oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["line_graph"], true);
    assert_eq!(v["root"].as_array().unwrap().len(), 5);
}

#[test]
fn input_errors() {
    let dir = TempDir::new().unwrap();
    let claw = write(&dir, "claw.txt", CLAW);
    assert_eq!(linecm(&["analyze", &claw, "--field", "4"]).status.code(), Some(2));
    let bad = write(&dir, "bad.txt", "a b c\n");
    assert_eq!(linecm(&["analyze", &bad]).status.code(), Some(2));
    let missing = dir.path().join("missing.txt").display().to_string();
    assert_eq!(linecm(&["analyze", &missing]).status.code(), Some(2));
}

#[test]
fn verify_fixtures() {
    let dir = TempDir::new().unwrap();
    let boundary = write(&dir, "tri.txt", "1 2\n2 3\n3 1\n");
    let v = json(&linecm(&["verify", "--complex", &boundary]));
    assert_eq!(v["fields"]["Q"]["gorenstein"], true);
    assert_eq!(v["fields"]["Q"]["homology"]["1"], 1);
    assert_eq!(v["shellable"], true);

    let edges = write(&dir, "edges.txt", "a b\nc d\n");
    let v = json(&linecm(&["verify", "--complex", &edges]));
    assert_eq!(v["fields"]["GF(2)"]["cm"], false);
    assert_eq!(v["vertex_decomposable"], false);

    let rp2 = write(
        &dir,
        "rp2.txt",
        "1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 6 2\n2 3 5\n3 4 6\n4 5 2\n5 6 3\n6 2 4\n",
    );
    let v = json(&linecm(&["verify", "--complex", &rp2, "--field", "2", "--field", "0"]));
    assert_eq!(v["fields"]["GF(2)"]["homology"]["1"], 1);
    assert_eq!(v["fields"]["Q"]["homology"]["1"], 0);
    assert_eq!(v["fields"]["GF(2)"]["cm"], false);
    assert_eq!(v["fields"]["Q"]["cm"], true);
}

fn catalog_twice(kind: &str, dir: &Path) -> (Value, String) {
    let a = dir.join(format!("{kind}-a.txt"));
    let b = dir.join(format!("{kind}-b.txt"));
    let out = linecm(&["catalog", "--type", kind, "--out", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    linecm(&["catalog", "--type", kind, "--out", b.to_str().unwrap()]);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    (json(&out), text)
}

#[test]
fn catalogs_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let (v, text) = catalog_twice("cm", dir.path());
    assert_eq!(v["members"], 7);
    assert_eq!(text, include_str!("../../core/data/catalog_cm.txt"));
    let (v, text) = catalog_twice("gorenstein", dir.path());
    assert_eq!(v["members"], 3);
    assert_eq!(text, include_str!("../../core/data/catalog_gorenstein.txt"));
}

fn summary(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().last().unwrap()).unwrap()
}

#[test]
fn crosscheck_small() {
    let out = linecm(&["crosscheck", "--max-n", "5", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let s = summary(&out);
    assert_eq!(s["graphs"], 30);
    assert_eq!(s["mismatches"], 0);
}

#[test]
fn injected_fault_exits_with_mismatch() {
    let out = linecm(&["crosscheck", "--max-n", "4", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(summary(&out)["mismatches"], 1);
}

#[test]
fn bench_reports_each_size() {
    let out = linecm(&["bench", "--shape", "spider", "--size", "1000", "--size", "10000", "--repeat", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let runs = v["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 2);
    assert_eq!(runs[1]["verdict"], true);
    assert_eq!(linecm(&["bench", "--shape", "path", "--size", "20000000"]).status.code(), Some(2));
}
