//! Verification reports emitted by every subcommand.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Confirmed,
    Refuted,
    Skipped(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub status: Status,
    pub witnesses: Vec<Value>,
    pub runtime_ms: u64,
    pub preconditions: Vec<String>,
}

impl VerificationReport {
    pub fn new(claim: impl Into<String>) -> Self {
        VerificationReport {
            claim: claim.into(),
            status: Status::Confirmed,
            witnesses: Vec::new(),
            runtime_ms: 0,
            preconditions: Vec::new(),
        }
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }

    pub fn is_confirmed(&self) -> bool {
        self.status == Status::Confirmed
    }

    pub fn witness(&mut self, w: Value) -> &mut Self {
        self.witnesses.push(w);
        self
    }

    pub fn precondition(&mut self, p: impl Into<String>) -> &mut Self {
        self.preconditions.push(p.into());
        self
    }

    /// Marks the report refuted, recording the witness that refutes it.
    pub fn refute(&mut self, witness: Value) -> &mut Self {
        self.status = Status::Refuted;
        self.witnesses.push(witness);
        self
    }

    /// Skips the claim unless it has already been refuted.
    pub fn skip(&mut self, reason: impl Into<String>) -> &mut Self {
        if self.status != Status::Refuted {
            self.status = Status::Skipped(reason.into());
        }
        self
    }

    /// Refutes with `witness` when `ok` is false.
    pub fn expect(&mut self, ok: bool, witness: impl FnOnce() -> Value) -> &mut Self {
        if !ok {
            self.refute(witness());
        }
        self
    }
}

/// Runs `f` on a fresh report for `claim` and records the elapsed time.
/// An error from `f` becomes a refutation carrying the error text.
pub fn timed(
    claim: impl Into<String>,
    f: impl FnOnce(&mut VerificationReport) -> anyhow::Result<()>,
) -> VerificationReport {
    let start = Instant::now();
    let mut r = VerificationReport::new(claim);
    if let Err(e) = f(&mut r) {
        r.refute(serde_json::json!({ "error": format!("{e:#}") }));
    }
    r.runtime_ms = start.elapsed().as_millis() as u64;
    r
}

/// Whether any report is refuted.
pub fn any_refuted(reports: &[VerificationReport]) -> bool {
    reports.iter().any(VerificationReport::is_refuted)
}

/// Reports with `runtime_ms` zeroed, for comparing runs.
pub fn without_timing(reports: &[VerificationReport]) -> Vec<VerificationReport> {
    reports
        .iter()
        .cloned()
        .map(|mut r| {
            r.runtime_ms = 0;
            r
        })
        .collect()
}
