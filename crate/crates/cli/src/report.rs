use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Warning,
    Fail,
    Error,
}

/// How strong a passing result is: exhaustive over the stated range, or
/// only over random samples.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    Verified,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub claim: Claim,
    pub cases: u64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckItem {
    pub fn new(name: impl Into<String>, claim: Claim, cases: u64, witness: Option<Value>) -> Self {
        CheckItem {
            name: name.into(),
            claim,
            cases,
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub status: Status,
    pub items: Vec<CheckItem>,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Extra results worth showing, such as dimensions.
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub data: Value,
    pub params: Value,
    pub seed: u64,
    pub elapsed_seconds: f64,
}

impl CheckReport {
    pub fn new(suite: &str, params: Value, seed: u64) -> Self {
        CheckReport {
            suite: suite.to_string(),
            status: Status::Pass,
            items: Vec::new(),
            warnings: Vec::new(),
            error: None,
            data: Value::Null,
            params,
            seed,
            elapsed_seconds: 0.0,
        }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn fail_with_error(&mut self, msg: String) {
        self.error = Some(msg);
    }

    /// Sets the status from the items, warnings and error.
    pub fn finish(&mut self, elapsed_seconds: f64) {
        self.elapsed_seconds = elapsed_seconds;
        self.status = if self.error.is_some() {
            Status::Error
        } else if self.items.iter().any(|i| !i.passed) {
            Status::Fail
        } else if !self.warnings.is_empty() {
            Status::Warning
        } else {
            Status::Pass
        };
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Warning => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn claim(&self) -> Claim {
        if self.items.iter().any(|i| i.claim == Claim::Sampled) {
            Claim::Sampled
        } else {
            Claim::Verified
        }
    }

    pub fn to_text(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Warning => "warning",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let claim = match self.claim() {
            Claim::Verified => "verified",
            Claim::Sampled => "sampled",
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}: {status} ({claim}, seed {}, {:.3}s)",
            self.suite, self.seed, self.elapsed_seconds
        );
        if let Some(e) = &self.error {
            let _ = writeln!(out, "  error: {e}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "  {w}");
        }
        for item in &self.items {
            let mark = if item.passed { "ok" } else { "FAIL" };
            let claim = match item.claim {
                Claim::Verified => "verified",
                Claim::Sampled => "sampled",
            };
            let _ = writeln!(out, "  [{mark}] {} ({} cases, {claim})", item.name, item.cases);
            if let Some(w) = &item.witness {
                let _ = writeln!(out, "      witness: {w}");
            }
        }
        if !self.data.is_null() {
            let _ = writeln!(out, "  data: {}", self.data);
        }
        out
    }
}
