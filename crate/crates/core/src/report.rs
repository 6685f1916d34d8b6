//! Claim reports: one record per checked statement, serialized as JSON with
//! sorted keys.
//!
//! Everything except `wall_time_ms` is a pure function of the input, so two
//! runs agree on [`Report::payload`].

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub use crate::deformation::Deviation;

/// The JSON schema every report satisfies.
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Verified,
    Refuted,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub claim_id: String,
    pub parameters: BTreeMap<String, String>,
    pub status: ClaimStatus,
    pub witness: Value,
    pub wall_time_ms: u64,
}

/// Outcome of a single check before timing and parameters are attached.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: ClaimStatus,
    pub witness: Value,
}

impl Outcome {
    pub fn verified(witness: impl Into<Value>) -> Self {
        Outcome { status: ClaimStatus::Verified, witness: witness.into() }
    }

    pub fn refuted(witness: impl Into<Value>) -> Self {
        Outcome { status: ClaimStatus::Refuted, witness: witness.into() }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Outcome { status: ClaimStatus::Skipped, witness: Value::String(reason.into()) }
    }

    /// Verified when `ok`, refuted otherwise.
    pub fn check(ok: bool, witness: impl Into<Value>) -> Self {
        if ok {
            Self::verified(witness)
        } else {
            Self::refuted(witness)
        }
    }
}

/// String-valued parameter map from `(key, value)` pairs.
pub fn params<I, K, V>(pairs: I) -> BTreeMap<String, String>
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: ToString,
{
    pairs.into_iter().map(|(k, v)| (k.into(), v.to_string())).collect()
}

/// Runs `f`, timing it into a record. Library errors become refutations
/// carrying the error text, except budget overruns which are skips.
pub fn run_claim(
    claim_id: impl Into<String>,
    parameters: BTreeMap<String, String>,
    f: impl FnOnce() -> crate::Result<Outcome>,
) -> ClaimRecord {
    let start = Instant::now();
    let outcome = match f() {
        Ok(o) => o,
        Err(e @ crate::Error::Budget { .. }) => Outcome::skipped(e.to_string()),
        Err(e) => Outcome::refuted(format!("error: {e}")),
    };
    ClaimRecord {
        claim_id: claim_id.into(),
        parameters,
        status: outcome.status,
        witness: outcome.witness,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub input_digest: String,
    pub claims: Vec<ClaimRecord>,
    pub deviations: Vec<Deviation>,
}

pub fn digest(input: &str) -> String {
    hex::encode(Sha256::digest(input.as_bytes()))
}

impl Report {
    /// An empty report for the given canonical input description.
    pub fn new(input: &str) -> Self {
        Report { tool_version: TOOL_VERSION.into(), input_digest: digest(input), claims: Vec::new(), deviations: Vec::new() }
    }

    pub fn push(&mut self, rec: ClaimRecord) {
        self.claims.push(rec);
    }

    /// Sorts claims and deviations so that output is independent of
    /// execution order.
    pub fn finalize(&mut self) {
        self.claims.sort_by(|a, b| (&a.claim_id, &a.parameters).cmp(&(&b.claim_id, &b.parameters)));
        self.deviations.sort_by(|a, b| (&a.claim_id, &a.parameters).cmp(&(&b.claim_id, &b.parameters)));
        self.deviations.dedup();
    }

    pub fn count(&self, status: ClaimStatus) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    /// 0 when nothing was refuted and no deviation was recorded, else 1.
    pub fn exit_code(&self) -> i32 {
        if self.count(ClaimStatus::Refuted) > 0 || !self.deviations.is_empty() {
            1
        } else {
            0
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Pretty JSON. Object keys come out sorted because `Value` maps are ordered.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report with timings removed, for run-to-run comparison.
    pub fn payload(&self) -> Value {
        let mut v = self.to_value();
        if let Some(claims) = v.get_mut("claims").and_then(Value::as_array_mut) {
            for c in claims {
                if let Some(obj) = c.as_object_mut() {
                    obj.remove("wall_time_ms");
                }
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_order_is_stable() {
        let mut a = Report::new("x");
        a.push(run_claim("b", params([("p", 2)]), || Ok(Outcome::verified("ok"))));
        a.push(run_claim("a", params([("p", 3), ("m", 1)]), || Ok(Outcome::refuted(Value::Null))));
        let mut b = Report::new("x");
        b.claims = a.claims.iter().rev().cloned().collect();
        a.finalize();
        b.finalize();
        assert_eq!(a.payload(), b.payload());
        let json = a.to_json();
        let order: Vec<usize> = ["\"claims\"", "\"deviations\"", "\"input_digest\"", "\"tool_version\""]
            .iter()
            .map(|k| json.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(a.claims[0].claim_id, "a");
        assert_eq!(a.exit_code(), 1);
    }

    #[test]
    fn budget_errors_are_skips() {
        let r = run_claim("c", params::<[(&str, u32); 0], &str, u32>([]), || {
            Err(crate::Error::Budget { needed: 10, budget: 1 })
        });
        assert_eq!(r.status, ClaimStatus::Skipped);
    }
}
