#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

pub fn ffgs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffgs"))
        .args(args)
        .env_remove("FFGS_BUDGET")
        .output()
        .expect("spawn ffgs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("report written")).expect("valid json")
}

/// Schema errors, empty when the instance validates.
pub fn schema_errors(instance: &Value) -> Vec<String> {
    let schema: Value = serde_json::from_str(ffgs::report::SCHEMA).expect("schema parses");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    validator.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path())).collect()
}

/// Drops wall times; everything else must be reproducible.
pub fn payload(report: &Value) -> Value {
    let mut v = report.clone();
    if let Some(claims) = v["claims"].as_array_mut() {
        for c in claims {
            c.as_object_mut().unwrap().remove("wall_time_ms");
        }
    }
    v
}

pub fn claims(report: &Value) -> &Vec<Value> {
    report["claims"].as_array().expect("claims array")
}

pub fn count(report: &Value, status: &str) -> usize {
    claims(report).iter().filter(|c| c["status"] == status).count()
}
