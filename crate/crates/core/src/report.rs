//! Outcome reports for theorem and property checks.

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "kneser-lab/1";

/// Outcome of a single theorem/property check.
///
/// `hypothesis_met = false` means the check did not apply to the instance and
/// carries no verdict; `pass` is left `true` in that case so that only genuine
/// violations count as failures. Serializes to JSON with stable field order.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub check: String,
    pub hypothesis_met: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub details: Map<String, Value>,
}

impl VerificationReport {
    pub fn new(check: &str) -> Self {
        VerificationReport {
            schema: SCHEMA,
            check: check.to_string(),
            hypothesis_met: true,
            pass: true,
            witness: None,
            details: Map::new(),
        }
    }

    pub fn hypothesis_not_met(check: &str, reason: &str) -> Self {
        let mut r = Self::new(check);
        r.hypothesis_met = false;
        r.detail("reason", json!(reason));
        r
    }

    pub fn detail(&mut self, key: &str, value: Value) -> &mut Self {
        self.details.insert(key.to_string(), value);
        self
    }

    pub fn fail(&mut self, witness: Value) -> &mut Self {
        self.pass = false;
        self.witness = Some(witness);
        self
    }

    /// True when the check applied and its conclusion held.
    pub fn verified(&self) -> bool {
        self.hypothesis_met && self.pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }
}
