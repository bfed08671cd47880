//! Machine-readable check records shared by the evidence checkers, suites,
//! and the CLI.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "report_v1";

/// Outcome of one check on one sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// The search bound ran out before a decision; never a failure.
    BoundExhausted,
    /// The premise of an implication did not hold.
    Vacuous,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub sample: String,
    pub outcome: Outcome,
    pub certificate: Value,
}

impl CheckRecord {
    pub fn new(check: impl Into<String>, sample: impl Into<String>, outcome: Outcome, certificate: Value) -> Self {
        CheckRecord { check: check.into(), sample: sample.into(), outcome, certificate }
    }

    pub fn pass(&self) -> bool {
        self.outcome != Outcome::Fail
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub records: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.outcome == Outcome::Fail)
    }

    pub fn count(&self, o: Outcome) -> usize {
        self.records.iter().filter(|r| r.outcome == o).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }
}
