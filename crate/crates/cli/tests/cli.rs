//! Runs the `rvt` binary: exit codes, golden outputs, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn rvt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rvt"))
        .args(args)
        .output()
        .expect("rvt runs")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(rvt(args).stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    rvt(args).status.code().unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(code(&["validate", "RVVRVT1L1T2L3L2"]), 0);
    assert_eq!(code(&["validate", "VT2T1RT2"]), 1);
    assert_eq!(code(&["validate", "RVX"]), 2);
    assert_eq!(code(&["validate", "rv l1"]), 0);
}

#[test]
fn validate_json() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["--format", "json", "validate", "VT2T1RT2"])).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["violation"]["position"], 1);
    assert_eq!(v["violation"]["rule"], 1);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["validate", "RVL1", "--format", "json"])).unwrap();
    assert_eq!(v["valid"], true);
}

#[test]
fn analyze_goldens() {
    assert_eq!(
        stdout(&["--format", "json", "analyze", "RVL1"]),
        golden("analyze_RVL1.json")
    );
    assert_eq!(
        stdout(&["--format", "json", "analyze", "RVL1T2"]),
        golden("analyze_RVL1T2.json")
    );
    assert_eq!(stdout(&["analyze", "RVL1"]), golden("analyze_RVL1.txt"));
}

#[test]
fn analyze_single_letter() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["--format", "json", "analyze", "R"])).unwrap();
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 1);
    assert_eq!(
        levels[0]["planes"],
        serde_json::json!([{"slot": "V", "birth": 1, "steps": 0}])
    );
    assert!(stdout(&["analyze", "R"]).contains("| V=delta(1,0) |"));
}

#[test]
fn analyze_rejects_invalid() {
    assert_eq!(code(&["analyze", "RT1"]), 1);
    assert_eq!(code(&["analyze", "RQ"]), 2);
}

#[test]
fn trace_goldens_and_codes() {
    assert_eq!(
        stdout(&["--format", "json", "trace", "RVL1T2", "T1"]),
        golden("trace_RVL1T2_T1.json")
    );
    assert_eq!(
        stdout(&["trace", "RVL1", "T2"]),
        golden("trace_RVL1_T2.txt")
    );
    assert_eq!(code(&["trace", "RVL1", "T2"]), 0);
    assert_eq!(code(&["trace", "RVL1T2", "T1"]), 1);
    assert_eq!(code(&["trace", "R", "T1"]), 1);
    assert_eq!(code(&["trace", "RVL1", "V"]), 2);
    assert!(stdout(&["trace", "RVL1T2", "T1"]).contains("Absent(LineNotContained @3)"));
    assert!(stdout(&["trace", "RVL1", "t2"]).contains("path: dv3 -> du2 -> dx"));
}

#[test]
fn successors_command() {
    assert_eq!(stdout(&["successors", "RVL1T2"]), "R, V, T2, L3\n");
    assert_eq!(stdout(&["successors", "--letter", "R"]), "R, V\n");
    assert_eq!(code(&["successors", "RT1"]), 1);
}

#[test]
fn count_and_enumerate() {
    assert_eq!(stdout(&["count", "--upto", "4"]), "1\n2\n6\n23\n");
    assert_eq!(stdout(&["count", "1"]), "1\n");
    assert_eq!(stdout(&["count", "5"]), "98\n");
    let words = stdout(&["enumerate", "3"]);
    let lines: Vec<&str> = words.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines.last(), Some(&"RVL1"));
    let json: Vec<String> =
        serde_json::from_str(&stdout(&["enumerate", "3", "--format", "json"])).unwrap();
    assert_eq!(json, lines);
    assert_eq!(
        stdout(&["enumerate", "4", "--prefix", "RVL1"])
            .lines()
            .count(),
        7
    );
    assert_eq!(code(&["count", "--verify", "8"]), 0);
    assert_eq!(code(&["count", "--verify", "13"]), 2);
}

#[test]
fn tables_are_stable() {
    let first = stdout(&["tables"]);
    assert_eq!(first, stdout(&["tables"]));
    assert_eq!(first, golden("tables.md"));
    assert!(first.contains("| T2 | R, V, T2, L3 | T1, L1, L2 |"));
    assert!(first.contains("| R | V |"));
    assert!(first.contains("| λ L1 L1 T2 | None | delta(k-3,3) |"));
}
