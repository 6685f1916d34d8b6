mod common;

use common::*;
use serde_json::Value;

#[test]
fn verify_g1_exits_zero() {
    let out = ffgs(&["verify", "--p", "2", "--m", "1", "--lambda", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("verified hopf-axioms:G_lambda"));
}

#[test]
fn killed_by_two_is_refuted_for_g1() {
    let out = ffgs(&["killed-by", "--p", "2", "--m", "1", "--lambda", "1", "--n", "2"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("REFUTED") && l.contains("killed-by:G_lambda")), "{text}");
}

#[test]
fn killed_by_order_holds_for_g1() {
    let out = ffgs(&["killed-by", "--p", "2", "--m", "1", "--lambda", "1", "--n", "4"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn adjoint_h2_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let p = path.to_str().unwrap();
    let out = ffgs(&["cohomology", "--p", "2", "--m", "2", "--lambda", "2", "--rep", "adjoint", "--degree", "2", "--json", p]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let report = read_json(&path);
    assert!(schema_errors(&report).is_empty());
    let w = &claims(&report)[0]["witness"];
    assert_eq!(w["dim"], 1);
    assert_eq!(w["representative_is_wp_class"], true);
}

// The exit code must agree with the statuses in the report whatever they are.
#[test]
fn adjoint_h2_exit_code_matches_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = ffgs(&[
        "cohomology", "--p", "2", "--m", "1", "--lambda", "1", "--rep", "adjoint", "--degree", "2", "--json",
        path.to_str().unwrap(),
    ]);
    let report = read_json(&path);
    assert!(schema_errors(&report).is_empty());
    let bad = count(&report, "refuted") > 0 || !report["deviations"].as_array().unwrap().is_empty();
    assert_eq!(code(&out), if bad { 1 } else { 0 });
    assert!(claims(&report)[0]["witness"]["dim"].is_u64());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&ffgs(&["verify", "--p", "4", "--m", "1", "--lambda", "1"])), 2);
    assert_eq!(code(&ffgs(&["verify", "--p", "2", "--m", "1", "--lambda", "2"])), 2);
    assert_eq!(code(&ffgs(&["frobnicate"])), 2);
    assert_eq!(code(&ffgs(&[])), 2);
    assert_eq!(code(&ffgs(&["report", "--grid", "2:x"])), 2);
    assert_eq!(code(&ffgs(&["classify", "--ring", "fp", "--p", "2", "--m", "1", "--lambda", "1"])), 2);
}

#[test]
fn parse_errors_exit_two_with_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.ffgs");
    std::fs::write(&empty, "").unwrap();
    let out = ffgs(&["verify", "--input", empty.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("E001"), "{}", stderr(&out));

    let slot = dir.path().join("slot.ffgs");
    std::fs::write(&slot, "ring R = Fp_pi(p=2, e=2);\nalgebra A over R = gens x^2 -> 0;\ncomul x = x@3;\n").unwrap();
    let out = ffgs(&["verify", "--input", slot.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("E005"), "{}", stderr(&out));

    let missing = dir.path().join("nope.ffgs");
    assert_eq!(code(&ffgs(&["verify", "--input", missing.to_str().unwrap()])), 2);
}

#[test]
fn input_file_is_verified() {
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/g_lambda_2_2_1.ffgs");
    let out = ffgs(&["verify", "--input", golden]);
    assert_eq!(code(&out), 0, "{}{}", stdout(&out), stderr(&out));
}

#[test]
fn broken_law_from_file_is_refuted() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.ffgs");
    std::fs::write(&f, "ring R = Fp(p=2);\nalgebra A over R = gens x^4 -> 0;\ncomul x = x@1 + x@2 + x@1^2;\n").unwrap();
    let out = ffgs(&["verify", "--input", f.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
}

fn report_json(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let mut all = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.extend(["--json", p.as_str()]);
    let out = ffgs(&all);
    (code(&out), read_json(&path))
}

#[test]
fn zero_budget_skips_cohomology() {
    let (c, report) = report_json(&["--budget", "0", "report"]);
    assert!(schema_errors(&report).is_empty());
    let cohomology = ["cohomology:", "h1-vanishes", "h2-adjoint", "d-squared", "h12-vanish", "h2-trivial"];
    for claim in claims(&report) {
        let id = claim["claim_id"].as_str().unwrap();
        if cohomology.iter().any(|k| id.starts_with(k)) {
            assert_eq!(claim["status"], "skipped", "{id}");
        }
    }
    assert!(count(&report, "skipped") > 0);
    let bad = count(&report, "refuted") > 0 || !report["deviations"].as_array().unwrap().is_empty();
    assert_eq!(c, if bad { 1 } else { 0 });
}

#[test]
fn env_budget_mirrors_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    std::process::Command::new(env!("CARGO_BIN_EXE_ffgs"))
        .args(["report", "--grid", "2:1", "--json", path.to_str().unwrap()])
        .env("FFGS_BUDGET", "0")
        .output()
        .unwrap();
    let env_run = read_json(&path);
    let (_, flag_run) = report_json(&["--budget", "0", "report", "--grid", "2:1"]);
    assert_eq!(payload(&env_run)["claims"], payload(&flag_run)["claims"]);
}

#[test]
fn report_is_deterministic_across_runs_and_jobs() {
    let (c1, a) = report_json(&["report"]);
    let (c2, b) = report_json(&["report"]);
    let (c3, c) = report_json(&["--jobs", "4", "report"]);
    assert_eq!(payload(&a), payload(&b));
    assert_eq!(payload(&a), payload(&c));
    assert_eq!((c1, c2), (c3, c3));
    assert!(schema_errors(&a).is_empty(), "{:?}", schema_errors(&a));
}

#[test]
fn grid_subset_is_schema_identical() {
    let (_, full) = report_json(&["report"]);
    let (_, sub) = report_json(&["report", "--grid", "2:1"]);
    assert!(schema_errors(&sub).is_empty());
    let keys = |v: &Value| v.as_object().unwrap().keys().cloned().collect::<Vec<_>>();
    assert_eq!(keys(&full), keys(&sub));
    let full_claims = payload(&full)["claims"].as_array().unwrap().clone();
    for c in claims(&payload(&sub)) {
        assert!(full_claims.contains(c), "{c}");
    }
    assert!(claims(&sub).len() < full_claims.len());
}
