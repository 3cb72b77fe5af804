//! The `krall-verify` binary: exit codes, config files and output stability.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krall-verify")).args(args).output().expect("binary runs")
}

#[test]
fn passing_pipeline_exits_zero() {
    let out = run(&["verify", "--family", "charlier", "--a", "1/2", "--F1", "1,4", "--nmax", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn degenerate_measure_exits_one() {
    let out = run(&["verify", "--family", "charlier", "--a", "1", "--F1", "1", "--nmax", "4", "--format", "text"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("Fail"));
}

#[test]
fn constraint_violations_exit_two() {
    let out = run(&["verify", "--family", "meixner", "--a", "1/2", "--c", "-3", "--F1", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--family", "meixner", "--a", "1", "--c", "2", "--F1", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--family", "hahn", "--a", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["props", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_check_list_skips_everything() {
    let out = run(&["verify", "--family", "charlier", "--a", "1", "--F1", "2", "--checks", ""]);
    assert_eq!(out.status.code(), Some(0));
    let report = krall_discrete::verify::parse_report(&out.stdout).unwrap();
    assert!(report.checks.iter().all(|c| c.status == krall_discrete::verify::Status::Skipped));
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("krall-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("meixner.json");
    std::fs::write(&path, r#"{"family": "meixner", "a": "1/2", "c": "7", "F1": [1], "F2": [], "n_max": 5}"#).unwrap();
    let path = path.to_str().unwrap();
    let out = run(&["verify", "--config", path, "--F2", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = krall_discrete::verify::parse_report(&out.stdout).unwrap();
    assert_eq!(report.config["F2"], serde_json::json!([2]));
    std::fs::write(dir.join("bad.json"), r#"{"family": "meixner", "a": "1/2", "colour": 1}"#).unwrap();
    let out = run(&["verify", "--config", dir.join("bad.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "--family", "krawtchouk", "--a", "2", "--N", "31/2", "--F1", "1,2", "--F2", "1", "--nmax", "5"];
    let (one, two) = (run(&args), run(&args));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let suite = ["props", "--suite", "degrees", "--seed", "3", "--trials", "10"];
    assert_eq!(run(&suite).stdout, run(&suite).stdout);
}

#[test]
fn property_suites() {
    for suite in ["claims", "duality", "residue"] {
        let out = run(&["props", "--suite", suite, "--seed", "1", "--trials", "5"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
    // The printed single bound in the degree lemma fails on unequal blocks.
    let out = run(&["props", "--suite", "degrees", "--seed", "1", "--trials", "60"]);
    assert_eq!(out.status.code(), Some(1));
}
