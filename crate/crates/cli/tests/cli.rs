//! End-to-end tests of the binary: exit codes, report schemas, CSV round
//! trips and determinism.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lowdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lowdisc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn check_net_reports_an_optimal_net() {
    let out = lowdisc(&["check-net", "--construction", "hammersley", "--m", "4"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["is_net"], Value::Bool(true));
    assert_eq!(json["admissibility_level"], 2);
    assert_eq!(json["min_valuation"], "1/32");
    assert!(json["witness"].is_null());
    assert_eq!(json["config"]["m"], 4);
}

#[test]
fn check_net_flags_the_duplicated_fixture() {
    let out = lowdisc(&["check-net", "--construction", "copies", "--m", "4", "--t", "0"]);
    assert_eq!(exit_code(&out), 1);
    let json = stdout_json(&out);
    assert_eq!(json["is_net"], Value::Bool(false));
    assert_eq!(json["min_valuation"], "0/1");
    assert!(json["admissibility_level"].is_null());
    assert_eq!(json["witness"]["expected"], 1);

    let ok = lowdisc(&["check-net", "--construction", "copies", "--m", "4", "--t", "1"]);
    assert_eq!(exit_code(&ok), 0);
}

#[test]
fn shifted_nets_stay_nets() {
    let out = lowdisc(&[
        "check-net",
        "--construction",
        "hammersley",
        "--m",
        "5",
        "--shift-seed",
        "42",
    ]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["is_net"], Value::Bool(true));
    assert_eq!(json["min_valuation"], "1/64");
}

#[test]
fn generated_digits_round_trip_through_check_net() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("net.csv");
    let out = lowdisc(&[
        "generate",
        "--construction",
        "hammersley",
        "--m",
        "3",
        "--format",
        "digits",
        "--output",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let check = lowdisc(&[
        "check-net",
        "--input",
        csv_path.to_str().unwrap(),
        "--m",
        "3",
    ]);
    assert_eq!(exit_code(&check), 0);
    assert_eq!(stdout_json(&check)["is_net"], Value::Bool(true));
}

#[test]
fn discrepancy_matches_its_oracle() {
    let out = lowdisc(&[
        "discrepancy",
        "--construction",
        "hammersley",
        "--m",
        "3",
        "--oracle",
    ]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["oracle_agrees"], Value::Bool(true));
    assert_eq!(json["dstar"], json["oracle"]);
    assert_eq!(json["n"], 8);
}

#[test]
fn anchored_net_mode_reports_exact_values() {
    let out = lowdisc(&["levin-net", "--mode", "theorem3", "--m", "8"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["delta1"], "0/1");
    assert_eq!(json["delta3"], "-9/4096");
    assert_eq!(json["bound_ok"], Value::Bool(true));
    assert_eq!(json["decomposition_exact"], Value::Bool(true));
}

#[test]
fn alpha_oracle_equality() {
    let out = lowdisc(&["alpha", "--bases", "2,3", "--m", "3", "--oracle"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["equal"], Value::Bool(true));
    assert_eq!(json["closed"], json["brute"]);
}

#[test]
fn window_search_with_trajectory_export() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("trajectory.csv");
    let out = lowdisc(&[
        "theorem2",
        "--bases",
        "2,3",
        "--m",
        "1",
        "--trajectory",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("N,delta_num,delta_den"));
    assert_eq!(lines.count(), 12);
}

#[test]
fn square_search_passes_at_desk_scale() {
    let out = lowdisc(&["theorem5", "--m", "4", "--squares", "4"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["pigeonhole_ok"], Value::Bool(true));
    assert_eq!(json["squares"].as_array().unwrap().len(), 4);
}

#[test]
fn identical_configs_give_identical_reports() {
    let strip_timing = |mut v: Value| -> Value {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = stdout_json(&lowdisc(&["alpha", "--m", "2", "--oracle"]));
    let b = stdout_json(&lowdisc(&["alpha", "--m", "2", "--oracle"]));
    assert_eq!(strip_timing(a), strip_timing(b));

    let a = stdout_json(&lowdisc(&[
        "check-net",
        "--construction",
        "hammersley",
        "--m",
        "4",
        "--shift-seed",
        "9",
    ]));
    let b = stdout_json(&lowdisc(&[
        "check-net",
        "--construction",
        "hammersley",
        "--m",
        "4",
        "--shift-seed",
        "9",
    ]));
    assert_eq!(strip_timing(a), strip_timing(b));
}

#[test]
fn usage_errors_exit_two() {
    let out = lowdisc(&["check-net", "--no-such-flag"]);
    assert_eq!(exit_code(&out), 2);
    // Mutually exclusive inputs.
    let out = lowdisc(&["discrepancy"]);
    assert_eq!(exit_code(&out), 2);
    // Missing file.
    let out = lowdisc(&["check-net", "--input", "/nonexistent.csv", "--m", "2"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn cap_exhaustion_exits_three() {
    let out = lowdisc(&["alpha", "--m", "3", "--oracle", "--cap", "10"]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn cap_override_via_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lowdisc"))
        .args(["alpha", "--m", "3", "--oracle"])
        .env("LOWDISC_CAP", "10")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn output_files_are_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = lowdisc(&[
        "alpha",
        "--m",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(Path::new(&path).exists());
    assert!(!dir.path().join("report.tmp").exists());
    let json: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["closed"], "91/72");
}
