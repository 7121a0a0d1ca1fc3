//! Behavior of the installed binary: output formats, exit codes, round
//! trips.

use std::process::{Command, Output};

use two_ion_jcm_cli::config::RunMetadata;
use two_ion_jcm_cli::output::render_csv;
use two_ion_jcm_cli::pipeline::simulate;
use two_ion_jcm_cli::{EXIT_TRUNCATION, EXIT_USAGE, EXIT_VERIFY_MISMATCH};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_two-ion-jcm"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().expect("header").split(',').map(str::to_string).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse::<f64>().expect("numeric cell")).collect())
        .collect();
    (header, rows)
}

#[test]
fn vacuum_coherent_state_stays_in_the_ground_level() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("vacuum.csv");
    let out = run(&[
        "simulate",
        "--eta", "0.1",
        "--rabi-khz", "500",
        "--k", "1",
        "--alpha-sq", "0",
        "--t-max-us", "50",
        "--t-points", "64",
        "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = parse_csv(&std::fs::read_to_string(&csv).unwrap());
    assert_eq!(header, ["t_us", "rho_11", "rho_00", "rho_m1m1", "tail_bound"]);
    assert_eq!(rows.len(), 64);
    for row in &rows {
        assert_eq!(row[1], 0.0);
        assert_eq!(row[2], 0.0);
        assert_eq!(row[3], 1.0);
        assert_eq!(row[4], 0.0);
    }
}

#[test]
fn missing_initial_state_is_a_usage_error() {
    let out = run(&[
        "simulate", "--eta", "0.1", "--rabi-khz", "500", "--k", "1",
        "--t-max-us", "50", "--t-points", "64", "--out", "/tmp/unused.csv",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE as i32));
}

#[test]
fn conflicting_initial_states_are_a_usage_error() {
    let out = run(&[
        "simulate", "--eta", "0.1", "--rabi-khz", "500", "--k", "1",
        "--alpha-sq", "2", "--fock", "3",
        "--t-max-us", "50", "--t-points", "64", "--out", "/tmp/unused.csv",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE as i32));
}

#[test]
fn degenerate_grid_is_a_usage_error() {
    let out = run(&[
        "simulate", "--eta", "0.1", "--rabi-khz", "500", "--k", "1", "--alpha-sq", "2",
        "--t-max-us", "50", "--t-points", "1", "--out", "/tmp/unused.csv",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE as i32));
}

#[test]
fn invalid_physical_parameters_are_usage_errors() {
    let out = run(&[
        "simulate", "--eta", "-0.1", "--rabi-khz", "500", "--k", "1", "--alpha-sq", "2",
        "--t-max-us", "50", "--t-points", "16", "--out", "/tmp/unused.csv",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE as i32));
}

#[test]
fn too_small_truncation_exits_with_the_truncation_code() {
    let out = run(&[
        "simulate", "--eta", "0.1", "--rabi-khz", "500", "--k", "1", "--alpha-sq", "10",
        "--n-max", "12",
        "--t-max-us", "50", "--t-points", "16", "--out", "/tmp/unused.csv",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_TRUNCATION as i32));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("--n-max"), "stderr should suggest a truncation: {stderr}");
}

#[test]
fn impossible_tolerance_exits_with_the_mismatch_code() {
    let out = run(&[
        "verify", "--eta", "0.15", "--rabi-khz", "500", "--k", "1", "--alpha-sq", "2",
        "--t-max-us", "120", "--t-points", "40", "--tol", "1e-18",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_VERIFY_MISMATCH as i32));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("max absolute population error"), "stdout: {stdout}");
}

#[test]
fn verify_passes_at_a_sane_tolerance() {
    let out = run(&[
        "verify", "--eta", "0.15", "--rabi-khz", "500", "--k", "1", "--alpha-sq", "2",
        "--t-max-us", "120", "--t-points", "40", "--tol", "1e-8",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_accepts_the_first_reference_parameter_set() {
    let out = run(&[
        "verify", "--eta", "0.1", "--rabi-khz", "500", "--k", "1", "--alpha-sq", "10",
        "--t-max-us", "296", "--t-points", "200", "--tol", "1e-8",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn figure_emits_csv_json_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["figure", "fig3a", "--out-dir", dir.path().to_str().unwrap(), "--t-points", "600"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    for ext in ["csv", "json", "svg"] {
        assert!(dir.path().join(format!("fig3a.{ext}")).exists(), "missing {ext}");
    }
    let svg = std::fs::read_to_string(dir.path().join("fig3a.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 3);
    assert!(svg.contains("rho_00") && svg.contains("rho_11"));
}

#[test]
fn json_metadata_reruns_to_the_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("run.csv");
    let json = dir.path().join("run.json");
    let out = run(&[
        "simulate", "--eta", "0.12", "--rabi-khz", "480", "--k", "2", "--alpha-sq", "6",
        "--t-max-us", "210", "--t-points", "333",
        "--out", csv.to_str().unwrap(),
        "--json", json.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let meta: RunMetadata = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let rerun = simulate(&meta.to_config()).unwrap();
    let original = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(render_csv(&rerun), original, "rerun from metadata diverged");
}

#[test]
fn help_lists_the_three_subcommands() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    for sub in ["simulate", "verify", "figure"] {
        assert!(stdout.contains(sub));
    }
}
