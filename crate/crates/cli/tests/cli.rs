use std::path::PathBuf;
use std::process::{Command, Output};

fn machines() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../machines")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcfl-lab")).args(args).env_remove("DCFL_LAB_BUDGET").output().expect("binary runs")
}

fn anbn() -> String {
    machines().join("anbn.json").display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn run_exit_codes() {
    assert_eq!(run(&["run", &anbn(), "aabb"]).status.code(), Some(0));
    assert_eq!(run(&["run", &anbn(), "aab"]).status.code(), Some(1));
    assert_eq!(run(&["run", &anbn(), "ε"]).status.code(), Some(0));
    assert_eq!(run(&["run", &anbn(), "abc"]).status.code(), Some(2));
}

#[test]
fn malformed_machine_file_is_an_error() {
    let path = std::env::temp_dir().join(format!("dcfl-lab-bad-{}.json", std::process::id()));
    std::fs::write(&path, "{\"states\": [").unwrap();
    let o = run(&["run", path.to_str().unwrap(), "ab"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed"));
    std::fs::remove_file(path).ok();
}

#[test]
fn json_report_echoes_the_command() {
    let o = run(&["--json", "run", &anbn(), "aabb"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "accept");
    assert_eq!(v["command"][1], "run");
    assert_eq!(v["parameters"]["input"], "aabb");
}

#[test]
fn reports_are_reproducible() {
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let args = ["--json", "refute", "lunion-2", "--c", "2", "--imax", "2"];
    assert_eq!(strip(run(&args)), strip(run(&args)));
}

#[test]
fn analyze_shows_one_hill_and_one_turn() {
    let o = run(&["--json", "analyze", &anbn(), "aabb"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["heights"], serde_json::json!([1, 1, 2, 3, 2, 1, 1]));
    assert_eq!(v["features"]["hills"].as_array().unwrap().len(), 1);
    assert_eq!(v["turn_partition"]["turns"].as_array().unwrap().len(), 1);
}

#[test]
fn analyze_empty_input_has_endmarker_profile() {
    let o = run(&["--json", "analyze", &anbn(), "ε"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["heights"], serde_json::json!([1, 1, 1]));
}

#[test]
fn pump_verdicts() {
    assert_eq!(run(&["pump", &anbn(), "ε,a,ab,b,ε", "--imax", "5"]).status.code(), Some(0));
    assert_eq!(run(&["pump", &anbn(), "ε,a,ε,ε,b", "--imax", "5"]).status.code(), Some(1));
    assert_eq!(run(&["pump", &anbn(), "a,b"]).status.code(), Some(2));
    assert_eq!(run(&["pump", "lunion-2", "a,a,ε,bb,bb"]).status.code(), Some(0));
}

#[test]
fn refute_lunion_exhausts_the_search() {
    let o = run(&["refute", "lunion-2", "--c", "4", "--imax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no witness found; search exhausted"));
    assert_eq!(run(&["refute", "anbn"]).status.code(), Some(2));
}

#[test]
fn zoo_verbs() {
    let o = run(&["zoo", "list"]);
    assert!(stdout(&o).contains("hibbard"));
    assert_eq!(run(&["zoo", "validate", "labc", "--max-len", "6"]).status.code(), Some(0));
    let w = stdout(&run(&["zoo", "witness", "lunion-2", "--n", "2"]));
    assert!(w.contains("x.y2 = aabbbb (member)"));
    assert_eq!(run(&["zoo", "validate", "nonsense"]).status.code(), Some(2));
}

#[test]
fn zoo_export_round_trips_through_run() {
    let dir = std::env::temp_dir().join(format!("dcfl-lab-export-{}", std::process::id()));
    let o = run(&["--json", "zoo", "export", "labc", "--out", dir.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let files = v["files"].as_array().unwrap();
    assert_eq!(files.len(), 2);
    for f in files {
        assert_eq!(run(&["run", f.as_str().unwrap(), "aabbcc"]).status.code(), Some(0));
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn lda_verbs() {
    let lda = machines().join("anbn-lda.json").display().to_string();
    assert_eq!(run(&["lda", "validate", &lda]).status.code(), Some(0));
    assert_eq!(run(&["lda", "run", &lda, "aaabbb"]).status.code(), Some(0));
    assert_eq!(run(&["lda", "run", &lda, "abab"]).status.code(), Some(1));
}

#[test]
fn family_verbs() {
    assert_eq!(run(&["family", "member", "pal", "0110"]).status.code(), Some(0));
    assert_eq!(run(&["family", "member", "pal", "0111"]).status.code(), Some(1));
    assert_eq!(run(&["family", "size", "pal", "--max", "8"]).status.code(), Some(0));
    assert_eq!(run(&["family", "size", "dup"]).status.code(), Some(2));
}

#[test]
fn budget_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_dcfl-lab"))
        .args(["run", &anbn(), "aabb"])
        .env("DCFL_LAB_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_dcfl-lab")).args(["run", &anbn(), "ab"]).env("DCFL_LAB_BUDGET", "x").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
