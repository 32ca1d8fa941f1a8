use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clap::Parser;
use rigidcover_cli::config::{Cli, Command as Sub};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rigidcover"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name).display().to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn first_state(dir: &Path) -> String {
    let states = dir.join("states");
    let out = run(&["search-states", "--limit", "1", "--write-dir", states.to_str().unwrap(), "-o", dir.join("s.json").to_str().unwrap()]);
    assert!(out.status.success());
    states.join("state-000.state").display().to_string()
}

#[test]
fn search_finds_swap_closed_octahedron_states() {
    let out = run(&["search-states"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 24);
    let words: Vec<&str> = v["states"].as_array().unwrap().iter().map(|s| s["word"].as_str().unwrap()).collect();
    for w in &words {
        let swapped: String = w.chars().map(|c| if c == 'I' { 'O' } else { 'I' }).collect();
        assert!(words.contains(&swapped.as_str()));
    }
}

#[test]
fn validate_accepts_searched_state() {
    let dir = tempfile::tempdir().unwrap();
    let state = first_state(dir.path());
    let out = run(&["validate", "--colouring", &data("octahedron.colouring"), "--state", &state]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["states"][0]["report"]["links"].as_array().unwrap().len(), 4);
}

#[test]
fn all_o_state_fails_links() {
    let dir = tempfile::tempdir().unwrap();
    let state = write(dir.path(), "o.state", &(1..=8).map(|i| format!("{i} O\n")).collect::<String>());
    let out = run(&["validate", "--state", &state]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("links disconnected or empty"));
}

#[test]
fn improper_colouring_is_a_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let col = write(dir.path(), "mono.colouring", &(1..=8).map(|i| format!("{i} 1\n")).collect::<String>());
    let out = run(&["validate", "--colouring", &col]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["colouring_violations"].as_array().unwrap().len(), 12);
    let out = run(&["run", "--colouring", &col, "--search-states"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["run", "--polytope", "/nonexistent.json", "--search-states"]).status.code(), Some(2));
    assert_eq!(run(&["run"]).status.code(), Some(2));
    assert_eq!(run(&["zigzag", "--max-dim", "1"]).status.code(), Some(2));
    assert_eq!(run(&["run", "--window", "0", "--search-states"]).status.code(), Some(2));
    assert_eq!(run(&["search-states", "--rule", "paired"]).status.code(), Some(2));
}

#[test]
fn unreachable_threshold_is_a_certification_failure() {
    let dir = tempfile::tempdir().unwrap();
    let state = first_state(dir.path());
    let out = run(&["run", "--state", &state, "--engine", "numeric", "--threshold", "1e300"]);
    assert_eq!(out.status.code(), Some(5));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "Inconclusive");
}

#[test]
fn run_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let state = first_state(dir.path());
    let csv = dir.path().join("t.csv");
    let out = run(&["run", "--state", &state, "--mode", "both", "--pre-eliminate", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["window"]["vertices"], 6);
    assert_eq!(v["window"]["edges"], 16);
    assert_eq!(v["window"]["squares"], 6);
    assert_eq!(v["systems"].as_array().unwrap().len(), 2);
    for s in v["systems"].as_array().unwrap() {
        assert_eq!(s["rank"]["reduced"], serde_json::json!([96, 96]));
        assert_eq!(s["rank"]["accounting"]["h1_bound"], 24);
    }
    assert_eq!(v["input_files"][1]["sha256"].as_str().unwrap().len(), 64);
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("state_index,state,s,mode,rows,cols"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn search_run_streams_one_line_per_state() {
    let out = bin().args(["run", "--search-states", "--max-states", "3"]).env("RIGIDCOVER_THREADS", "2").output().unwrap();
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    for (i, r) in lines.iter().enumerate() {
        assert_eq!(r["state"]["index"], i);
    }
}

#[test]
fn bad_thread_count_is_an_input_error() {
    let out = bin().args(["zigzag", "--max-dim", "2"]).env("RIGIDCOVER_THREADS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn export_headers() {
    let dir = tempfile::tempdir().unwrap();
    let (t, f) = (dir.path().join("t.txt"), dir.path().join("f.txt"));
    let out = run(&["export-system", "--search-states", "--triplets", t.to_str().unwrap(), "--float", f.to_str().unwrap()]);
    assert!(out.status.success());
    let t = std::fs::read_to_string(t).unwrap();
    let f = std::fs::read_to_string(f).unwrap();
    assert_eq!(t.lines().next(), Some("# rows 352 cols 256 d 1"));
    assert_eq!(f.lines().next(), Some("# rows 352 cols 256"));
    assert_eq!(t.lines().count(), f.lines().count());
}

#[test]
fn paired_24cell_fixture_validates_squares() {
    let out = run(&[
        "validate",
        "--polytope",
        &data("24cell.json"),
        "--colouring",
        &data("24cell-paired.colouring"),
        "--state",
        &data("24cell-paired.state"),
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let report = &v["states"][0]["report"];
    assert_eq!(report["squares"]["invalid"], 0);
    assert!(report["squares"]["bad"].as_u64().unwrap() > 0);
    assert_eq!(report["quasi_coherence"]["offending"].as_array().unwrap().len(), 0);
}

#[test]
fn parses_run_flags() {
    let cli = Cli::try_parse_from(["rigidcover", "run", "--search-states", "-s", "2", "--tolerance", "1e-12", "--pair", "1,2", "--rule", "paired"]).unwrap();
    let Sub::Run(cfg) = cli.command else { panic!("expected run") };
    assert_eq!(cfg.s, 2);
    assert_eq!(cfg.inputs.pairs, vec![(1, 2)]);
    assert!(Cli::try_parse_from(["rigidcover", "run", "--tolerance", "-1"]).is_err());
    assert!(Cli::try_parse_from(["rigidcover", "run", "--state", "x", "--search-states"]).is_err());
}
