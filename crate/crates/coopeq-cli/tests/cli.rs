//! End-to-end checks of the `coopeq` binary: subcommands, output shape, and
//! exit codes (0 success, 1 assertion failure, 2 input error).

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coopeq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn spec_path(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.pop();
    path.pop();
    path.push("specs");
    path.push(name);
    path.to_string_lossy().into_owned()
}

#[test]
fn solve_informal_pd_prints_the_worked_numbers() {
    let out = run(&["solve", &spec_path("pd_informal.toml")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("forecast p_c: D=1/20 (0.050000) R=1/10 (0.100000)"));
    assert!(text.contains("cooperative equilibrium: 1/2 (0.500000) C + 1/2 (0.500000) D"));
}

#[test]
fn forecast_subcommand_stops_before_the_equilibrium() {
    let out = run(&["forecast", &spec_path("pd_informal.toml")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("floor v(p_bar): 1/10 (0.100000)"));
    assert!(!text.contains("cooperative equilibrium"));
}

#[test]
fn chicken_solve_shows_the_mixed_nash_side_by_side() {
    let out = run(&["solve", &spec_path("chicken_similar.toml")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("coincides with nash: true"));
    assert!(text.contains("symmetric mixed nash: 1/2 (0.500000) C + 1/2 (0.500000) D"));
}

#[test]
fn matrix_spec_solves_like_its_family_twin() {
    let out = run(&["solve", &spec_path("matrix_pd.toml")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cooperation weight: 1/2 (0.500000)"));
}

#[test]
fn paper_suite_reports_and_exits_one_on_the_failed_assertion() {
    let out = run(&["paper-suite", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("label,prediction,observed,source,class\n"));
    assert!(text.contains("pd-informal,1/2 (0.500000)"));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("assertion failed: chicken-vs-pd"));
    assert!(!err.contains("pd-informal"));
}

#[test]
fn paper_suite_out_writes_the_report_file() {
    let dir = std::env::temp_dir().join("coopeq-suite-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.md");
    let out = run(&[
        "paper-suite",
        "--format",
        "markdown",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1)); // chicken row still fails
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("| label | prediction | observed | source | class |"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn oracle_check_agrees_on_the_commons() {
    let out = run(&["oracle-check", &spec_path("commons_a08.toml"), "--step", "0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("equilibrium weight"));
    assert!(!text.contains("DISAGREE"));
}

#[test]
fn oracle_check_traveler_reports_the_unrestricted_risk() {
    let out = run(&[
        "oracle-check",
        &spec_path("traveler_b5.toml"),
        "--step",
        "0.02",
        "--risk-mode",
        "all-deviations",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("R(p_c) all-deviations"));
    assert!(text.contains("info"));
}

#[test]
fn invalid_spec_exits_two_with_the_violated_condition() {
    let dir = std::env::temp_dir().join("coopeq-badspec-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.toml");
    std::fs::write(&path, "family = \"pd\"\nt = \"0.10\"\nr = \"0.15\"\np = \"0.05\"\ns = 0\n")
        .unwrap();
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("T > R"), "stderr: {err}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["solve", "/nonexistent/game.toml"]);
    assert_eq!(out.status.code(), Some(2));
}
