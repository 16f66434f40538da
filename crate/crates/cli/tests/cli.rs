//! End-to-end tests that drive the compiled binary: exit codes, document
//! shapes on standard output, figure files, and usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const TRIANGLE: &str = r#"{"d":2,"n":4,"ones":[[1,1],[2,1],[1,2]]}"#;
const SQUARE: &str = r#"{"d":2,"n":4,"ones":[[1,2],[1,3],[2,2],[2,3]]}"#;
const ZERO: &str = r#"{"d":2,"n":3,"ones":[]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teachset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_fixture(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).expect("fixture written");
    path
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "command failed\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("standard output is a JSON document")
}

fn file_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).expect("output file readable"))
        .expect("output file is a JSON document")
}

fn count(haystack: &str, needle: &str) -> usize {
    haystack.matches(needle).count()
}

#[test]
fn analyze_prints_the_convex_analysis_document() {
    let dir = TempDir::new().unwrap();
    let fixture = write_fixture(&dir, "triangle.json", TRIANGLE);
    let out = run(&["analyze", fixture.to_str().unwrap(), "--class", "polytopal"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["class"], "polytopal");
    assert_eq!(doc["function"]["n"], 4);
    assert_eq!(doc["essential"].as_array().unwrap().len(), 13);
    assert_eq!(doc["sigma"], 13);
    assert_eq!(doc["j_count"], 1);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 3);
    for (name, value) in doc["checks"].as_object().unwrap() {
        assert_eq!(value, &Value::Bool(true), "check {name} failed");
    }
}

#[test]
fn analyze_writes_a_deterministic_figure() {
    let dir = TempDir::new().unwrap();
    let fixture = write_fixture(&dir, "square.json", SQUARE);
    let first = dir.path().join("first.svg");
    let second = dir.path().join("second.svg");
    let out = run(&[
        "analyze",
        fixture.to_str().unwrap(),
        "--class",
        "2threshold",
        "--svg",
        first.to_str().unwrap(),
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["essential"].as_array().unwrap().len(), 6);
    assert_eq!(doc["sigma"], 7);
    assert!(doc["j_count"].as_u64().unwrap() >= 2);

    let figure = fs::read_to_string(&first).expect("figure written");
    assert_eq!(count(&figure, "<circle"), 16);
    assert_eq!(count(&figure, r#"class="star""#), 6);

    let rerun = run(&[
        "analyze",
        fixture.to_str().unwrap(),
        "--class",
        "2threshold",
        "--svg",
        second.to_str().unwrap(),
    ]);
    assert!(rerun.status.success());
    assert_eq!(
        fs::read(&first).unwrap(),
        fs::read(&second).unwrap(),
        "figures must be byte-identical across runs"
    );
}

#[test]
fn zero_function_figure_shows_the_zeros_layer_only() {
    let dir = TempDir::new().unwrap();
    let fixture = write_fixture(&dir, "zero.json", ZERO);
    let figure_path = dir.path().join("zero.svg");
    let out = run(&[
        "analyze",
        fixture.to_str().unwrap(),
        "--class",
        "polytopal",
        "--svg",
        figure_path.to_str().unwrap(),
        "--layers",
        "zeros",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["essential"].as_array().unwrap().len(), 9);

    let figure = fs::read_to_string(&figure_path).expect("figure written");
    assert_eq!(count(&figure, "<circle"), 9);
    assert_eq!(count(&figure, r#"fill="white" stroke="black""#), 9);
    assert_eq!(count(&figure, r#"class="star""#), 0);
}

#[test]
fn missing_input_files_fail_cleanly() {
    let out = run(&["analyze", "/nonexistent/input.json", "--class", "polytopal"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("error:"), "stderr: {stderr}");
    assert!(stderr.contains("cannot read"), "stderr: {stderr}");
}

#[test]
fn unknown_suites_are_usage_errors() {
    let out = run(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_classes_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    let fixture = write_fixture(&dir, "square.json", SQUARE);
    let out = run(&["analyze", fixture.to_str().unwrap(), "--class", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unknown class"), "stderr: {stderr}");
}

#[test]
fn seeded_sweeps_require_a_seed() {
    let out = run(&["verify", "--suite", "perimeter", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("--seed"), "stderr: {stderr}");
}

#[test]
fn verification_sweeps_report_clean_runs() {
    let out = run(&["verify", "--suite", "delta", "--n-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("suite: delta"), "stdout: {stdout}");
    assert!(stdout.contains("violations: 0"), "stdout: {stdout}");
}

#[test]
fn enumerate_counts_and_lists_class_members() {
    let out = run(&["enumerate", "--n", "3", "--class", "threshold", "--count-only"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "58");

    let listing = run(&["enumerate", "--n", "2", "--class", "polytopal"]);
    assert!(listing.status.success());
    let lines: Vec<&str> = std::str::from_utf8(&listing.stdout)
        .unwrap()
        .lines()
        .collect();
    assert_eq!(lines.len(), 16);
    for line in lines {
        let doc: Value = serde_json::from_str(line).expect("each line is a JSON document");
        assert_eq!(doc["d"], 2);
        assert_eq!(doc["n"], 2);
    }
}

#[test]
fn family_fixture_document_is_complete() {
    let dir = TempDir::new().unwrap();
    let doc_path = dir.path().join("family.json");
    let out = run(&["family", "--n", "21", "--out", doc_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "document goes to the file, not stdout");

    let doc = file_json(&doc_path);
    assert_eq!(doc["n"], 21);
    assert_eq!(doc["m"], 5);
    assert_eq!(doc["teaching_set"].as_array().unwrap().len(), 9);
    assert_eq!(doc["distinguishing_count"], 162);
    assert_eq!(doc["conjunction"]["n"], 21);
    for side in ["lower_zero", "lower_one", "upper_zero", "upper_one"] {
        assert!(
            !doc[side].as_array().unwrap().is_empty(),
            "{side} must list its boundary points"
        );
    }
}

#[test]
fn count_mts_caps_witnesses_but_counts_exactly() {
    let dir = TempDir::new().unwrap();
    let fixture = write_fixture(&dir, "square.json", SQUARE);
    let out = run(&[
        "count-mts",
        fixture.to_str().unwrap(),
        "--class",
        "2threshold",
        "--cap",
        "2",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["class"], "2threshold");
    assert_eq!(doc["sigma"], 7);
    assert!(doc["j_count"].as_u64().unwrap() >= 2);
    let witnesses = doc["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len(), 2, "witness list honors the cap");
    for witness in witnesses {
        assert_eq!(witness.as_array().unwrap().len(), 7);
    }
}
