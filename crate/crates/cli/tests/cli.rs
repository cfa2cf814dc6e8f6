use std::path::Path;
use std::process::{Command, Output};

fn ballgap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ballgap")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn macaulay_command() {
    let o = ballgap(&["macaulay", "8", "3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("C(4,3)+C(3,2)+C(1,1)"));
    assert!(s.contains("minus 5"));
    let o = ballgap(&["--json", "macaulay", "13", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 4);
    assert_eq!(v["rep"], "C(6,5)+C(5,4)+C(3,3)+C(2,2)");
    assert_eq!(ballgap(&["macaulay", "0", "3"]).status.code(), Some(2));
}

#[test]
fn gap_command() {
    let s = stdout(&ballgap(&["gap", "10"]));
    assert!(s.contains("J_1=[11,18]") && s.contains("J_2=[22,25]"));
    assert_eq!(stdout(&ballgap(&["gap", "13", "42"])).trim(), "in-gap k=3");
    assert_eq!(stdout(&ballgap(&["gap", "6", "13"])).trim(), "not-in-gap");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ballgap(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(ballgap(&["nab", "3", "3", "0"]).status.code(), Some(2));
    assert_eq!(ballgap(&["gap-argument", "3", "1", "0"]).status.code(), Some(2));
}

#[test]
fn map_workflow() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("out.map");
    assert!(ballgap(&["map", "gen-sharpness", "2", "3", "-o", arg(&map)]).status.success());

    let o = ballgap(&["map", "check-orth", arg(&map)]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("orthogonal"));
    assert!(s.contains("z0^2*w~0^2 + z1^2*w~1^2"));

    assert_eq!(stdout(&ballgap(&["map", "span", arg(&map)])).trim(), "7");

    let s = stdout(&ballgap(&["map", "obstruct", arg(&map), "--e", "0,1"]));
    assert!(s.contains("restriction degenerate"));

    let pro = dir.path().join("pro.map");
    let o = ballgap(&[
        "map", "prolong", arg(&map), "--psi", "1/1 0 0 0 1", "--phi", "-2/1 0 0 0 4", "-o", arg(&pro),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&pro).unwrap();
    assert!(text.starts_with("source 2 2 0\ntarget 5 5 0\ndegree 4\n"));
    assert!(stdout(&ballgap(&["map", "check-orth", arg(&pro)])).starts_with("orthogonal"));

    let o = ballgap(&["map", "prolong", arg(&map), "--psi", "1/1 0 0 0 1", "--phi", "1/1 0 0 0 3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generated_map_is_printed_canonically() {
    let s = stdout(&ballgap(&["map", "gen-sharpness", "1", "2"]));
    assert_eq!(s, "source 1 2 0\ntarget 1 2 0\ndegree 3\n%pos\n1/1 3 0 0\n%neg\n1/1 2 1 0\n1/1 2 0 1\n%null\n");
}

#[test]
fn non_orthogonal_map_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("f.map");
    std::fs::write(&map, "source 1 1 0\ntarget 2 0 0\ndegree 2\n%pos\n1/1 2 0\n1/1 0 2\n%neg\n%null\n").unwrap();
    let o = ballgap(&["--json", "map", "check-orth", arg(&map)]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["orthogonal"], false);
    assert!(v["witness_pairing"].is_string());
}

#[test]
fn malformed_and_missing_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.map");
    std::fs::write(&bad, "source 1 1 0\ntarget 1 1 0\ndegree 1\n%pos\n1/1 1 0\n%neg\n1/x 0 1\n").unwrap();
    let o = ballgap(&["map", "span", arg(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 7"));
    let o = ballgap(&["map", "span", arg(&dir.path().join("missing.map"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_suites_report_zero_violations() {
    let s = stdout(&ballgap(&["verify", "lemma3"]));
    assert!(s.contains("lemma3: 3418 checks, 0 violations"));
    let o = ballgap(&["--json", "verify", "sharpness"]);
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = lines.last().unwrap();
    assert_eq!(summary["type"], "summary");
    assert_eq!(summary["violations"], 0);
    assert_eq!(lines.len(), 17);
    let o = ballgap(&["--json", "verify", "gap-argument", "--max-n", "30"]);
    assert!(o.status.success());
    let o = ballgap(&["verify", "restriction", "--max-n", "2", "--max-degree", "2", "--trials", "5"]);
    assert!(o.status.success());
}

#[test]
fn green_reports_depend_only_on_seed() {
    let run = |seed: &str| ballgap(&["--json", "verify", "green", "--seed", seed, "--subspaces", "10", "--trials", "5"]).stdout;
    assert_eq!(run("3"), run("3"));
    assert_ne!(run("3"), run("4"));
    let text = stdout(&ballgap(&["verify", "green", "--seed", "3", "--subspaces", "10", "--trials", "5"]));
    assert!(text.contains("green: 40 checks, 0 violations, seed 3"));
}

#[test]
fn numeric_commands() {
    assert_eq!(stdout(&ballgap(&["binom", "6", "3"])).trim(), "20");
    assert_eq!(stdout(&ballgap(&["binom", "6", "0"])).trim(), "0");
    let s = stdout(&ballgap(&["nab", "6", "1", "2"]));
    assert!(s.contains("N(6;1,2) = 15") && s.contains("D_5 >= 13") && s.contains("D_2 >= 5"));
    let s = stdout(&ballgap(&["gap-argument", "10", "1", "4"]));
    assert!(s.contains("case II") && s.contains("verdict=true"));
    let s = stdout(&ballgap(&["plane", "2", "1"]));
    assert!(s.contains("one step: 1"));
}
