use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segalkit")).args(args).arg("--quiet").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is a JSON report")
}

fn entry(stem: &str) -> String {
    corpus().join(format!("{stem}.json")).display().to_string()
}

#[test]
fn nerve_of_poset_is_a_quasi_category() {
    let o = run(&["sset", "check", "qcat", &entry("nerve_poset2"), "--max-dim", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["checks"][0]["bound"]["max_dim"], 3);
}

#[test]
fn certificate_is_written_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = run(&["sset", "cert", "mid-anodyne", &entry("chain3_incl"), "--budget", "200", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(cert["family"], "inner");
    assert_eq!(code(&run(&["sset", "replay", out.to_str().unwrap()])), 0);
}

#[test]
fn gamma_of_interval_is_segal_in_trivfib_mode() {
    let o = run(&["bisset", "check", "segal", &entry("gamma_n1"), "--mode", "trivfib", "--n-max", "3"]);
    assert_eq!(code(&o), 0);
    let entries = report(&o)["result"]["entries"].as_array().unwrap().len();
    assert_eq!(entries, 2);
}

#[test]
fn refutation_exits_one() {
    let o = run(&["sset", "classify", "trivfib", &entry("simplex1_to_point")]);
    assert_eq!(code(&o), 1);
}

#[test]
fn exhausted_budget_exits_two() {
    let o = run(&["sset", "cert", "mid-anodyne", &entry("chain4_incl"), "--budget", "1"]);
    assert_eq!(code(&o), 2);
    assert!(report(&o)["checks"][0]["verdict"]["reason"].is_string());
}

#[test]
fn malformed_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"cells\": 7}").unwrap();
    assert_eq!(code(&run(&["sset", "check", "valid", bad.to_str().unwrap()])), 3);
    assert_eq!(code(&run(&["sset", "check", "valid", "/nonexistent.json"])), 3);
    assert_eq!(code(&run(&["sset", "frobnicate"])), 3);
}

#[test]
fn empty_or_missing_corpus_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["corpus", "run", "--dir", dir.path().to_str().unwrap()])), 3);
    assert_eq!(code(&run(&["corpus", "run", "--dir", "/nonexistent"])), 3);
}

#[test]
fn bundled_corpus_matches_built_in_entries() {
    let o = run(&["corpus", "run", "--dir", corpus().to_str().unwrap(), "--skip-acceptance"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn export_then_mutate_is_named_in_report() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(code(&run(&["corpus", "export", "--out", d])), 0);
    let p = dir.path().join("boundary2.json");
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    doc["cells"].as_array_mut().unwrap().pop();
    std::fs::write(&p, doc.to_string()).unwrap();
    let o = run(&["corpus", "run", "--dir", d, "--skip-acceptance"]);
    assert_eq!(code(&o), 1);
    let failed: Vec<String> = report(&o)["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] != "yes")
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(failed, ["corpus boundary2"]);
}

#[test]
fn full_run_passes_and_is_deterministic() {
    let dir = corpus();
    let args = ["corpus", "run", "--dir", dir.to_str().unwrap()];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    let criteria = r["checks"].as_array().unwrap().iter().filter(|c| c["name"].as_str().unwrap().starts_with('C')).count();
    assert_eq!(criteria, 12);
}
