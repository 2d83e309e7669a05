use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monogamy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn summary(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON summary")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn example1_writes_csv_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("e1.csv");
    let out = bin(&["example1", "--out", path_str(&csv)]);
    assert_eq!(out.status.code(), Some(0));
    let s = summary(&out);
    assert_eq!(s["samples_total"], 6161);
    assert_eq!(s["violations"], 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha,r,lhs,z1,z2,zprime"));
    assert_eq!(lines.next(), Some("0.0,2.0,1.0,1.0,1.0,0.0"));
    assert_eq!(text.lines().count(), 6162);
}

#[test]
fn csv_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = bin(&["verify-mono", "--samples", "300", "--seed", "11", "--out", path_str(p)]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("index,joint,pairs,tails,base_slack,bound,slack,branch\n"));
}

#[test]
fn example2_reports_comparator_violations() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("e2.csv");
    let out = bin(&["example2", "--out", path_str(&csv)]);
    assert_eq!(out.status.code(), Some(1));
    let s = summary(&out);
    assert_eq!(s["violations"], 0, "lhs <= z1 holds everywhere");
    assert!(s["base"]["violations"].as_u64().unwrap() > 0);
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("beta,s,lhs,z1,z2,zprime\n"));
}

#[test]
fn example2_config_restricted_to_holding_region() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"exponent_grid": [-1, 0, 0.1], "s_grid": [2, 5, 0.5]}"#).unwrap();
    let out = bin(&["example2", "--config", path_str(&cfg)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn out_of_domain_exponent_exits_two() {
    let out = bin(&["verify-mono", "--samples", "10", "--alpha", "2", "--r", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain"));
}

#[test]
fn verify_poly_concurrence_path() {
    let out = bin(&[
        "verify-poly", "--measure", "concurrence", "--beta", "-1", "--s", "2", "--q", "1",
        "--samples", "200", "--seed", "4",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let s = summary(&out);
    assert_eq!(s["check"], "polygamy_concurrence");
    assert_eq!(s["seed"], 4);
}

#[test]
fn lemma_grid_default_and_bad_which() {
    let out = bin(&["lemma-grid", "--which", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(summary(&out)["violations"], 0);
    let out = bin(&["lemma-grid", "--which", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_from_config_and_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    let csv = dir.path().join("sweep.csv");
    std::fs::write(
        &cfg,
        r#"{"family": "monogamy", "exponent_grid": [0, 1, 0.5], "r_grid": [2, 3, 1],
            "p": 0.5, "k": 1.0, "source": {"random": {"seed": 1, "count": 5}}}"#,
    )
    .unwrap();
    let out = bin(&["sweep", "--config", path_str(&cfg), "--out", path_str(&csv), "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(summary(&out)["samples_total"], 18);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 19);

    std::fs::write(&cfg, r#"{"exponent_grid": [0, 1, 0], "r_grid": [2, 3, 1]}"#).unwrap();
    assert_eq!(bin(&["sweep", "--config", path_str(&cfg)]).status.code(), Some(2));
    assert_eq!(bin(&["sweep", "--config", "/nonexistent.json"]).status.code(), Some(2));
}
