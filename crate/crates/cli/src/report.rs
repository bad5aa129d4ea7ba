//! Verification records and the versioned report document.

use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Failed exactly as predicted; counts as a pass.
    ExpectedFail,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ExpectedFail => "XFAIL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub suite: String,
    pub check: String,
    /// Topic the check belongs to, e.g. `retract-theorem`.
    pub tag: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub duration_ms: f64,
}

impl Record {
    pub fn new(suite: &str, check: impl Into<String>, tag: &str, status: Status) -> Self {
        Record {
            suite: suite.to_string(),
            check: check.into(),
            tag: tag.to_string(),
            status,
            witness: None,
            duration_ms: 0.0,
        }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub expected_fail: usize,
}

impl Summary {
    pub fn of(records: &[Record]) -> Self {
        let count = |s| records.iter().filter(|r| r.status == s).count();
        Summary {
            total: records.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            expected_fail: count(Status::ExpectedFail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub suites: Vec<String>,
    pub lattices: Vec<String>,
    pub nmax: Option<usize>,
    pub symbolic_n: usize,
    pub guard: usize,
    pub seed: u64,
    pub instances: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: ConfigEcho,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: ConfigEcho, records: Vec<Record>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            summary: Summary::of(&records),
            records,
        }
    }

    pub fn success(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = write!(out, "{:<5} {:<15} {}", r.status.label(), r.suite, r.check);
            if let Some(w) = &r.witness {
                let _ = write!(out, "  [{w}]");
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "seed {}: {} checks, {} passed, {} expected failures, {} failed",
            self.config.seed, s.total, s.passed, s.expected_fail, s.failed
        );
        out
    }
}
