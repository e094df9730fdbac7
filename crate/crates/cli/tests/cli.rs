use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trace-shape"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_cubic_succeeds() {
    let o = run(&["verify", "--ell", "3", "--conductor", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["shape"]["polynomial"], "x^2 - x*y + y^2");
    assert_eq!(v["disc"], "49");
    assert_eq!(v["spec"]["conductor"], "7");
}

#[test]
fn bad_prime_is_a_usage_error() {
    let o = run(&["verify", "--ell", "5", "--conductor", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("7"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--ell", "3", "--conductor", "7", "--primes", "7"]).status.code(), Some(2));
    assert_eq!(run(&["lattice", "craig", "--ell", "5", "--k", "9"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--ell", "3", "--conductor", "7", "--subgroup", "1,2,4"]).status.code(), Some(2));
}

#[test]
fn isometry_command() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = write(dir.path(), "a2.json", r#"[["2","-1"],["-1","2"]]"#);
    let two = write(dir.path(), "2i.json", r#"[["2","0"],["0","2"]]"#);
    let a2b = write(dir.path(), "a2b.json", r#"[["2","1"],["1","2"]]"#);
    let o = run(&["lattice", "isometry", "--gram-a", &a2, "--gram-b", &two, "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "not isometric");
    let o = run(&["lattice", "isometry", "--gram-a", &a2, "--gram-b", &a2b]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["isometric"], true);
    let bad = write(dir.path(), "bad.json", r#"[["2","1"],["0","2"]]"#);
    assert_eq!(run(&["lattice", "isometry", "--gram-a", &a2, "--gram-b", &bad]).status.code(), Some(2));
}

#[test]
fn craig_gram_output() {
    let o = run(&["lattice", "craig", "--ell", "3", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Vec<Vec<String>> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, vec![vec!["2", "-1"], vec!["-1", "2"]]);
}

#[test]
fn scan_streams_reports_and_summary() {
    let o = run(&["scan", "--ell", "3", "--max-conductor", "20", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 5);
    let fs: Vec<&str> = lines[..4].iter().map(|v| v["spec"]["conductor"].as_str().unwrap()).collect();
    assert_eq!(fs, ["7", "9", "13", "19"]);
    assert_eq!(lines[4]["summary"]["all_verified"], true);
}

#[test]
fn output_is_deterministic_across_jobs() {
    let a = run(&["scan", "--ell", "5", "--max-conductor", "40", "--jobs", "1", "--format", "csv"]);
    let b = run(&["scan", "--ell", "5", "--max-conductor", "40", "--jobs", "3", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().last().unwrap().starts_with("summary,"));
}

#[test]
fn report_round_trips_and_field_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["compute", "--ell", "5", "--conductor", "25", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let r: trace_shape::Report = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap().trim(), text.trim());

    let field = write(dir.path(), "f.json", r#"{"ell": 3, "conductor": 9, "subgroup": [1, 8]}"#);
    let o = run(&["verify", "--field", &field, "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all verified: yes"));
}

#[test]
fn several_fields_of_one_conductor() {
    let o = run(&["verify", "--ell", "3", "--primes", "7,13"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}
