//! End-to-end tests of the cagekit binary: exit-code contract, file
//! outputs, and determinism across runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cagekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cagekit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("cagekit-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn build_gamma2_edge_list_to_stdout() {
    let out = cagekit(&[
        "build",
        "--q",
        "2",
        "--kind",
        "gamma",
        "--format",
        "edge-list",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 45); // 30 vertices, 45 edges
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("order 30"), "{stderr}");
    assert!(stderr.contains("size 45"), "{stderr}");
}

#[test]
fn build_rejects_bad_arguments() {
    // 6 = 2 * 3 is not a prime power.
    assert_eq!(cagekit(&["build", "--q", "6"]).status.code(), Some(2));
    assert_eq!(
        cagekit(&["build", "--q", "3", "--kind", "nonsense"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cagekit(&["build", "--q", "3", "--format", "gif"])
            .status
            .code(),
        Some(2)
    );
    // Missing required argument is a usage error too.
    assert_eq!(cagekit(&["build"]).status.code(), Some(2));
}

#[test]
fn build_hq_stderr_summary() {
    let out = cagekit(&["build", "--q", "3", "--kind", "hq"]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("order 54"), "{stderr}");
    assert!(stderr.contains("size 81"), "{stderr}");
}

#[test]
fn build_output_is_deterministic() {
    let a = cagekit(&["build", "--q", "3", "--kind", "gamma", "--format", "graph6"]);
    let b = cagekit(&["build", "--q", "3", "--kind", "gamma", "--format", "graph6"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn verify_expectations_and_exit_codes() {
    let path = scratch("gamma4.edges");
    let out = cagekit(&[
        "build",
        "--q",
        "4",
        "--kind",
        "gamma",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let ok = cagekit(&[
        "verify",
        path.to_str().unwrap(),
        "--expect-girth",
        "8",
        "--expect-regular",
        "5",
        "--expect-order",
        "170",
        "--expect-diameter",
        "4",
        "--expect-bipartite",
        "--threads",
        "2",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["girth"], 8);
    assert_eq!(report["diameter"], 4);
    assert_eq!(report["order"], 170);
    assert_eq!(report["degrees"]["5"], 170);
    assert_eq!(report["pass"], true);

    // A contradictory expectation fails with exit 1.
    let bad = cagekit(&["verify", path.to_str().unwrap(), "--expect-girth", "10"]);
    assert_eq!(bad.status.code(), Some(1));

    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_corrupt_file_is_a_parse_error() {
    let path = scratch("corrupt.edges");
    std::fs::write(&path, b"0 1\nnot an edge\n").unwrap();
    let out = cagekit(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();

    let missing = cagekit(&["verify", "/nonexistent/g.edges"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn pds_rejects_odd_q() {
    assert_eq!(cagekit(&["pds", "--q", "9"]).status.code(), Some(2));
    assert_eq!(cagekit(&["pds", "--q", "2"]).status.code(), Some(2));
}

#[test]
fn pds_q4_with_removal() {
    let prefix = scratch("pds4");
    let prefix_str = prefix.to_str().unwrap();
    let out = cagekit(&["pds", "--q", "4", "--remove", "--out", prefix_str]);
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["cardinality"], 70);
    assert_eq!(cert["perfect"], true);
    assert_eq!(cert["variant"], "q4_special");
    assert_eq!(cert["x"], 2);
    assert_eq!(cert["alternate"]["perfect"], true);

    let labels = std::fs::read_to_string(format!("{prefix_str}.labels.txt")).unwrap();
    assert_eq!(labels.lines().count(), 70);
    assert!(labels.contains("rho"));

    let residual = std::fs::read_to_string(format!("{prefix_str}.residual.edges")).unwrap();
    assert_eq!(residual.lines().count(), 200); // 100 vertices, 4-regular

    std::fs::remove_file(format!("{prefix_str}.labels.txt")).ok();
    std::fs::remove_file(format!("{prefix_str}.residual.edges")).ok();
}

#[test]
fn pds_q16_reports_the_overlap() {
    let prefix = scratch("pds16");
    let out = cagekit(&["pds", "--q", "16", "--out", prefix.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("share 8 vertices"), "{stderr}");
}

#[test]
fn stats_reports_field_parameters() {
    let out = cagekit(&["stats", "--q", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let stats: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(stats["p"], 3);
    assert_eq!(stats["n"], 2);
    assert_eq!(stats["modulus"], serde_json::json!([1, 0, 1]));
    assert_eq!(stats["moore_bound"], 1640);
    assert_eq!(stats["gamma_order"], 1640);

    assert_eq!(cagekit(&["stats", "--q", "12"]).status.code(), Some(2));
}

#[test]
fn selftest_passes_at_small_q() {
    let out = cagekit(&["selftest", "--q-max", "4", "--threads", "2"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(
        stdout.contains("criterion 1 [moore-cages] PASS"),
        "{stdout}"
    );
    assert!(stdout.contains("9/9 criteria passed"), "{stdout}");
}
