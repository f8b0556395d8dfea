use std::process::{Command, Output};

use serde_json::Value;

fn equicolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equicolor"))
        .args(args)
        .env_remove("EQUICOLOR_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let out = equicolor(&["construct-j10", "--out", out_dir]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["status"], "PASS");
    assert!(report["claims"][0]["runtimeMs"].is_u64());

    let type0 = dir.path().join("type0.json");
    let out = equicolor(&["verify", type0.to_str().unwrap(), "--quotient", "12,9;9,12"]);
    assert!(out.status.success());
    let report = json(&out);
    let forms = report["claims"].as_array().unwrap().iter().find(|c| c["id"] == "nb-forms").unwrap();
    assert_eq!(forms["witness"]["histograms"][0]["form2"], 60);

    let out = equicolor(&["verify", type0.to_str().unwrap(), "--quotient", "11,10;10,11"]);
    assert_eq!(out.status.code(), Some(1));

    let out = equicolor(&["spectrum", type0.to_str().unwrap(), "--part", "2", "--pretty"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("spectrum: PASS"));
}

#[test]
fn corrupted_file_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 10, \"k\": 3, \"parts\": [").unwrap();
    let out = equicolor(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    assert!(out.stdout.is_empty());
    let out = equicolor(&["verify", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_reproducible_without_timings() {
    let a = equicolor(&["census-j63", "--no-timings"]);
    let b = equicolor(&["census-j63", "--no-timings"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("runtimeMs"));
}

#[test]
fn classify_single_seed_form() {
    let out = equicolor(&["classify-j10", "--seed-form", "3", "--no-lemma1", "--no-timings"]);
    assert!(out.status.success());
    let report = json(&out);
    let ids: Vec<&str> = report["claims"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["theorem2-form3", "eliminations", "pair-identities-implied", "solutions-classified"]);

    let parallel = Command::new(env!("CARGO_BIN_EXE_equicolor"))
        .args(["classify-j10", "--seed-form", "3", "--no-lemma1", "--no-timings", "--parallel"])
        .env("EQUICOLOR_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(parallel.stdout, out.stdout);

    let out = equicolor(&["classify-j10", "--seed-form", "12"]);
    assert_eq!(out.status.code(), Some(2));
}
