use std::collections::BTreeSet;

use equicolor::nbarray::FormId;
use equicolor::pipeline::{
    cmd_census_j63, cmd_classify_j10, cmd_construct_j10, cmd_spectrum, cmd_verify, ClassifyOptions, Report, RunConfig,
    Status,
};
use equicolor::{ColoringFile, Error, QuotientMatrix};

fn ids(r: &Report) -> Vec<&str> {
    r.claims.iter().map(|c| c.id.as_str()).collect()
}

fn assert_all_pass(r: &Report) {
    for c in &r.claims {
        assert_eq!(c.status, Status::Pass, "{} failed: {}", c.id, c.witness);
    }
    assert!(r.passed());
    let unique: BTreeSet<&str> = ids(r).into_iter().collect();
    assert_eq!(unique.len(), r.claims.len(), "duplicate claim ids");
}

#[test]
fn full_pipeline_is_deterministic() {
    let cfg = RunConfig::default();
    let run = || {
        [
            cmd_construct_j10(None, &cfg),
            cmd_census_j63(&cfg),
            cmd_classify_j10(&ClassifyOptions::default(), &cfg),
        ]
        .map(|r| r.without_timings().to_json())
    };
    let first = run();
    assert_eq!(first, run());
    for text in &first {
        let report: Report = serde_json::from_str(text).unwrap();
        assert_all_pass(&report);
        assert!(!text.contains("runtimeMs"));
    }
}

#[test]
fn parallel_claims_and_workers_agree_with_sequential() {
    let seq = RunConfig::default();
    let par = RunConfig { parallel_claims: true, workers: 3, ..RunConfig::default() };
    let opts = ClassifyOptions::default();
    let a = cmd_classify_j10(&opts, &seq).without_timings();
    let b = cmd_classify_j10(&opts, &par).without_timings();
    assert_eq!(a, b);
}

#[test]
fn construct_writes_round_trippable_files() {
    let dir = std::env::temp_dir().join(format!("equicolor-test-{}", std::process::id()));
    let r = cmd_construct_j10(Some(&dir), &RunConfig::default());
    assert_all_pass(&r);
    for name in ["orbits", "type0", "type1"] {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        let file = ColoringFile::from_json(&text).unwrap();
        assert_eq!(file.to_json(), text);
        assert_eq!(file.clone().into_coloring().unwrap().to_file(), file);
    }

    let q = QuotientMatrix::parse("12,9;9,12").unwrap();
    let v = cmd_verify(&dir.join("type0.json"), Some(&q), &RunConfig::default()).unwrap();
    assert_all_pass(&v);
    let forms = &v.claim("nb-forms").unwrap().witness["histograms"];
    assert_eq!(forms[0], serde_json::json!({ "form2": 60 }));
    assert_eq!(forms[1], serde_json::json!({ "form10": 20, "form11": 40 }));

    // P2' holds {1,2,3} and is listed first
    let v = cmd_verify(&dir.join("type1.json"), Some(&q), &RunConfig::default()).unwrap();
    let forms = &v.claim("nb-forms").unwrap().witness["histograms"];
    assert_eq!(forms[0], serde_json::json!({ "form3": 50, "form6": 10 }));
    assert_eq!(v.claim("part-types").unwrap().witness["types"], serde_json::json!([1, 1]));

    let wrong = QuotientMatrix::parse("11,10;10,11").unwrap();
    let v = cmd_verify(&dir.join("type0.json"), Some(&wrong), &RunConfig::default()).unwrap();
    assert_eq!(v.claim("perfect").unwrap().status, Status::Fail);
    assert!(!v.passed());
    let three = QuotientMatrix::parse("1,1,1;1,1,1;1,1,1").unwrap();
    assert!(matches!(cmd_verify(&dir.join("type0.json"), Some(&three), &RunConfig::default()), Err(Error::DimensionMismatch(_))));

    let s = cmd_spectrum(&dir.join("type0.json"), 1, &RunConfig::default()).unwrap();
    let w = &s.claims[0].witness;
    assert_eq!(w["size"], 60);
    assert_eq!(w["characteristicPolynomial"].as_array().unwrap().len(), 61);
    assert!(cmd_spectrum(&dir.join("type0.json"), 3, &RunConfig::default()).is_err());

    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"n\":10,\"k\":3,\"parts\":[[[1,2,2]]]}").unwrap();
    assert!(cmd_verify(&bad, None, &RunConfig::default()).is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classify_single_form() {
    let opts = ClassifyOptions { seed_form: Some(FormId::new(7).unwrap()), include_pair_identities: false };
    let r = cmd_classify_j10(&opts, &RunConfig::default());
    assert_all_pass(&r);
    assert_eq!(ids(&r), ["eliminations", "pair-identities-implied", "solutions-classified"]);

    let opts = ClassifyOptions { seed_form: Some(FormId::new(2).unwrap()), include_pair_identities: false };
    let r = cmd_classify_j10(&opts, &RunConfig::default());
    assert_all_pass(&r);
    let d = &r.claim("theorem1-form2").unwrap().witness["deduction"];
    assert_eq!(d["solutionCount"], 2);
    assert_eq!(d["forcedOne"].as_array().unwrap().len(), 48);
    assert_eq!(d["solutions"].as_array().unwrap().len(), 2);
}

#[test]
fn tiny_time_budget_is_a_failure() {
    let cfg = RunConfig { time_budget: std::time::Duration::ZERO, ..RunConfig::default() };
    let opts = ClassifyOptions { seed_form: Some(FormId::new(6).unwrap()), include_pair_identities: false };
    let r = cmd_classify_j10(&opts, &cfg);
    assert!(!r.passed());
    let c = r.claim("theorem2-form6").unwrap();
    assert!(c.witness["error"].as_str().unwrap().contains("time budget"), "{}", c.witness);
}
