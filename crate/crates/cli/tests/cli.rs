use std::path::Path;
use std::process::{Command, Output};

fn fvqe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fvqe")).args(args).env("RUST_LOG", "error").output().expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_run_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst");
    let out = fvqe(&["generate", "--problem", "maxcut", "--sizes", "5,7", "--count", "2", "--out-dir", p(&inst)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(inst.join("maxcut-q5-s1.meta.json").exists());

    let sweep = dir.path().join("sweep");
    let out = fvqe(&[
        "run", "--instances", p(&inst), "--algorithm", "fvqe,bfs", "--budget", "500", "--out-dir", p(&sweep), "--jobs", "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ran 8, skipped 0, failed 0"));

    // A second invocation reuses every trace.
    let again = fvqe(&["run", "--instances", p(&inst), "--algorithm", "fvqe,bfs", "--budget", "500", "--out-dir", p(&sweep)]);
    assert!(String::from_utf8_lossy(&again.stdout).contains("ran 0, skipped 8, failed 0"));

    let out = fvqe(&["analyze", "--out-dir", p(&sweep)]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(sweep.join("plots/success_table.csv")).unwrap();
    assert!(csv.starts_with("size,algorithm,threshold,fraction,samples\n"));
    assert!(csv.contains("bfs"));
}

#[test]
fn key_value_config() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst");
    assert!(fvqe(&["generate", "--problem", "atsp", "--sizes", "7", "--out-dir", p(&inst)]).status.success());
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        format!("instance={}\nansatz=classical\npreset=hp1\nseed=3\nT=5\nsimulator_cap=20\n", p(&inst.join("atsp-q7-s0.json"))),
    )
    .unwrap();
    let out = fvqe(&["run", "--config", p(&cfg), "--out-dir", p(&dir.path().join("s"))]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest = std::fs::read_to_string(dir.path().join("s/manifest.json")).unwrap();
    assert!(manifest.contains("fvqe-classical-hp1"));
}

#[test]
fn failures_give_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"type\":\"maxcut\",\"n\":3}").unwrap();
    let out = fvqe(&["run", "--instances", p(&bad), "--algorithm", "bfs", "--budget", "10", "--out-dir", p(&dir.path().join("s"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("failed 1"));
}

#[test]
fn bad_arguments_are_reported() {
    let out = fvqe(&["run", "--out-dir", "/nonexistent-never", "--algorithm", "bfs"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no instances"));
    assert!(!fvqe(&["generate", "--problem", "atsp", "--sizes", "8", "--out-dir", "/tmp/x"]).status.success());
}

#[test]
fn spectrum_and_grads() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g");
    let out = fvqe(&["grads", "--sizes", "5,7,9", "--count", "1", "--steps", "3", "--out-dir", p(&g)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("better fit:"));
    let boxes = std::fs::read_to_string(g.join("plots/gradient_boxplot.csv")).unwrap();
    assert_eq!(boxes.lines().count(), 4);

    let out = fvqe(&["spectrum", "--instances", p(&g.join("instances")), "--out-dir", p(&dir.path().join("sp"))]);
    assert!(out.status.success());
    let spec = std::fs::read_to_string(dir.path().join("sp/spectrum.csv")).unwrap();
    assert_eq!(spec.lines().count(), 1 + 3 * 101);
}
