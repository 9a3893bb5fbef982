//! Deterministic structured-text reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::core_cat::{ValidationReport, Verification};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub operation: String,
    pub outcome: Outcome,
    pub exit_code: i32,
    /// Candidate cap of every exhaustive search in the run.
    pub budget_cap: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub inputs: Vec<InputDigest>,
    pub checks: Vec<CheckLine>,
}

#[derive(Serialize)]
struct Wrapped<'a> {
    report: &'a Report,
}

pub fn digest(path: &str, bytes: &[u8]) -> InputDigest {
    InputDigest {
        path: path.to_string(),
        sha256: hex::encode(Sha256::digest(bytes)),
    }
}

impl Report {
    pub fn new(operation: impl Into<String>, budget_cap: u64) -> Self {
        Report {
            operation: operation.into(),
            outcome: Outcome::Pass,
            exit_code: 0,
            budget_cap,
            message: None,
            inputs: vec![],
            checks: vec![],
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckLine {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn validation(&mut self, name: &str, r: &ValidationReport) {
        self.check(name, r.is_valid(), r.to_string().trim_end().to_string());
    }

    pub fn verification(&mut self, prefix: &str, v: &Verification) {
        for c in &v.checks {
            self.check(format!("{prefix}/{}", c.name), c.passed, c.detail.clone());
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Sets the outcome from the recorded checks.
    pub fn conclude(&mut self) {
        let pass = self.all_passed();
        self.outcome = if pass { Outcome::Pass } else { Outcome::Fail };
        self.exit_code = if pass { 0 } else { 1 };
    }

    pub fn fail_with(&mut self, exit_code: i32, message: String) {
        self.outcome = Outcome::Error;
        self.exit_code = exit_code;
        self.message = Some(message);
    }

    pub fn render(&self) -> String {
        toml::to_string(&Wrapped { report: self })
            .unwrap_or_else(|e| format!("# report serialization failed: {e}\n"))
    }
}
