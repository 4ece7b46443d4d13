//! Verification reports: canonical JSON (sorted keys) and plain text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::config::SuiteConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// Failures kept in full per check; the count is always exact.
pub const MAX_WITNESSES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub system: String,
    pub ring: String,
    /// `exact`, `matrix` or `arithmetic` (identities of vectors and scalars).
    pub tier: String,
    pub instances: u64,
    pub exhaustive: bool,
    pub failure_count: u64,
    pub failures: Vec<Value>,
    pub inconclusive: u64,
    pub inconclusive_reasons: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.inconclusive == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub metrics: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn check<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a CheckRecord> + 'a {
        self.checks.iter().filter(move |c| c.name == name)
    }

    /// Canonical JSON: keys sorted, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        // serde_json's Map is ordered by key, so a round trip through Value
        // sorts every object
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite {}: {}", self.suite, self.verdict.to_uppercase());
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            let _ = write!(
                s,
                "  [{status}] {} ({}, {}) tier={} instances={}{}",
                c.name,
                c.system,
                c.ring,
                c.tier,
                c.instances,
                if c.exhaustive { " exhaustive" } else { " sampled" }
            );
            if c.failure_count > 0 {
                let _ = write!(s, " failures={}", c.failure_count);
            }
            if c.inconclusive > 0 {
                let _ = write!(s, " inconclusive={}", c.inconclusive);
            }
            s.push('\n');
            for w in &c.failures {
                let _ = writeln!(s, "      witness: {w}");
            }
            for r in &c.inconclusive_reasons {
                let _ = writeln!(s, "      inconclusive: {r}");
            }
        }
        for (k, v) in &self.metrics {
            let _ = writeln!(s, "  metric {k} = {v}");
        }
        for w in &self.warnings {
            let _ = writeln!(s, "  warning: {w}");
        }
        s
    }
}
