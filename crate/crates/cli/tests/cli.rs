use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const TRIANGLE: &str = "p mtg 3 3 3\ns 0 0\ns 1 1\ns 2 2\na 0 1\na 1 2\na 2 0\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtcycles"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

#[test]
fn pack_triangle() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.mtg", TRIANGLE);
    let o = run(&["pack", "--input", &tri, "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "cycle 0 1 2\n");
}

#[test]
fn hypothesis_violation_exits_2() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.mtg", TRIANGLE);
    let o = run(&["pack", "--input", &tri, "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("minimum out-degree"));
}

#[test]
fn usage_errors_exit_1_and_name_the_flag() {
    let o = run(&["pack", "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--input"));
    let o = run(&["hunt", "--family", "7partite", "--sizes", "3", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--family"));
    let o = run(&["gen", "--family", "3partite", "--sizes", "5,x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--sizes"));
}

#[test]
fn bad_input_file_is_reported() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.mtg", "p mtg 3 3 3\ns 0 0\ns 1 1\ns 2 2\na 0 1\na 1 2\n");
    let o = run(&["pack", "--input", &bad, "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("declared 3"));
}

#[test]
fn check_kappa_one_on_bt() {
    let dir = TempDir::new().unwrap();
    let bt = path(&dir, "bt3333.mtg");
    assert_eq!(run(&["gen", "--family", "bt", "--sizes", "3,3,3,3", "--output", &bt]).status.code(), Some(0));
    let o = run(&["check-kappa-one", "--input", &bt, "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("true"));
    let o = run(&["kappa", "--input", &bt, "--k", "2", "--max-cycle-len", "8"]);
    assert_eq!(stdout(&o).lines().next(), Some("kappa 1"));
}

#[test]
fn pack_output_verifies() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "d.mtg");
    let o = run(&[
        "gen", "--family", "3partite", "--sizes", "5,5,5", "--seed", "3", "--min-out-degree", "3", "--output", &inst,
    ]);
    assert_eq!(o.status.code(), Some(0));
    for (cmd, format) in [("pack", "text"), ("diversify", "text"), ("pack", "json")] {
        let out = path(&dir, &format!("{cmd}.{format}"));
        let o = run(&[cmd, "--input", &inst, "--k", "2", "--format", format, "--output", &out]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        let o = run(&["verify", "--input", &inst, "--packing", &out]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), "true\n");
    }
}

#[test]
fn verify_rejects_bad_packing() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.mtg", TRIANGLE);
    let bad = write(&dir, "bad.txt", "cycle 0 2 1\n");
    let o = run(&["verify", "--input", &tri, "--packing", &bad]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).starts_with("false"));
}

#[test]
fn oracle_on_complete_digraph() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.mtg", "p dig 3 6\na 0 1\na 0 2\na 1 0\na 1 2\na 2 0\na 2 1\n");
    let o = run(&["oracle", "--input", &k3, "--k", "2"]);
    assert_eq!(stdout(&o), "none\n");
    let o = run(&["oracle", "--input", &k3, "--k", "1"]);
    assert_eq!(stdout(&o), "cycle 0 1\n");
    let o = run(&["oracle", "--input", &k3, "--k", "1", "--cycles"]);
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn hunt_writes_deterministic_report() {
    let dir = TempDir::new().unwrap();
    let mut reports = Vec::new();
    for name in ["a.txt", "b.txt"] {
        let report = path(&dir, name);
        let o = run(&[
            "hunt", "--family", "4partite", "--sizes", "3,3,3,3", "--k", "2", "--trials", "50", "--seed", "9",
            "--report", &report,
        ]);
        assert!(matches!(o.status.code(), Some(0) | Some(3)));
        assert!(stdout(&o).starts_with("trials=50"));
        reports.push(fs::read(&report).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let text = String::from_utf8(reports[0].clone()).unwrap();
    assert!(text.contains("search-verified"));
    assert!(Path::new(&path(&dir, "a.txt")).exists());
}

#[test]
fn hunt_json_report() {
    let o = run(&[
        "hunt", "--family", "3partite", "--sizes", "4,4,4", "--trials", "5", "--seed", "1", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    for line in text.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}

#[test]
fn hunt_rejects_zero_trials() {
    let o = run(&["hunt", "--family", "3partite", "--sizes", "5,5,5", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trials"));
}
