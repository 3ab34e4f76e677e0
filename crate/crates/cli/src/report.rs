//! Machine-readable verification reports.
//!
//! Serialization is byte-stable for identical inputs: checks are sorted by
//! id and wall-clock timings are attached only when explicitly requested,
//! so reports from repeated runs (and any worker count) compare equal.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where an expected value comes from: quoted from the classification
/// literature, derived by an independent computation in this repository, or
/// immediate from definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Quoted,
    Derived,
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub provenance: Provenance,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(default)]
    pub wall_ms: Option<u64>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub toolkit: String,
    pub version: String,
    pub command: String,
    pub overall: Status,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(command: &str, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let overall = if checks.iter().all(CheckRecord::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            toolkit: "classcount".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            overall,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Plain-text table: one aligned line per check plus a footer.
    pub fn render_table(&self) -> String {
        let id_w = self
            .checks
            .iter()
            .map(|c| c.id.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!(
                "{status}  {:<id_w$}  expected {} | computed {}\n",
                c.id, c.expected, c.computed
            ));
        }
        let (np, nf) = self.counts();
        out.push_str(&format!(
            "overall: {} ({np} passed, {nf} failed)\n",
            match self.overall {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            }
        ));
        out
    }

    pub fn counts(&self) -> (usize, usize) {
        let np = self.checks.iter().filter(|c| c.passed()).count();
        (np, self.checks.len() - np)
    }
}

/// Builder shorthand used by the verification runners.
pub fn check(
    id: impl Into<String>,
    inputs: impl Into<String>,
    expected: impl Into<String>,
    computed: impl Into<String>,
    provenance: Provenance,
    pass: bool,
) -> CheckRecord {
    CheckRecord {
        id: id.into(),
        inputs: inputs.into(),
        expected: expected.into(),
        computed: computed.into(),
        provenance,
        status: if pass { Status::Pass } else { Status::Fail },
        wall_ms: None,
    }
}
