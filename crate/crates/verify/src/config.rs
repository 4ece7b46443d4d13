//! Suite configuration: a single JSON document, overridable from the CLI.

use serde::{Deserialize, Serialize};

/// How equalities in `St(Φ, R)` are decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TierPolicy {
    /// Require a complete coset table; checks without one are inconclusive.
    Exact,
    /// Compare matrix images only.
    Matrix,
    /// Exact when a table is cached or small enough to enumerate.
    #[default]
    Auto,
}

impl TierPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            TierPolicy::Exact => "exact",
            TierPolicy::Matrix => "matrix",
            TierPolicy::Auto => "auto",
        }
    }
}

pub const DEFAULT_DOMAIN_CAP: usize = 1_000_000;
pub const DEFAULT_RELATOR_LIMIT: usize = 2_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suite: String,
    /// Ring specs; empty selects the suite's defaults.
    pub rings: Vec<String>,
    /// Root system names; empty selects the suite's defaults.
    pub systems: Vec<String>,
    /// Matrix size for the `GL_n`-style suites; overrides `systems` there.
    pub n: Option<usize>,
    pub ideal: Option<String>,
    /// Element `a` to localize at (T-map suite).
    pub localize_at: Option<String>,
    /// Sampled instances per sampled check; `None` selects the suite default.
    pub samples: Option<usize>,
    pub seed: u64,
    pub tier: TierPolicy,
    pub max_cosets: usize,
    /// Domains larger than this are sampled instead of enumerated; `None`
    /// selects the suite default.
    pub domain_cap: Option<usize>,
    pub relator_limit: usize,
    /// Relator families for the star-presentation suite; empty means all.
    pub families: Vec<String>,
    /// Restricts a suite to the named checks; empty means all.
    pub checks: Vec<String>,
    pub expected_kernel_order: Option<u64>,
    /// Adds a deliberately false check, for exercising failure reporting.
    pub inject_fault: bool,
    /// Include wall-clock times in the report (breaks byte-stability).
    pub record_timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: String::new(),
            rings: Vec::new(),
            systems: Vec::new(),
            n: None,
            ideal: None,
            localize_at: None,
            samples: None,
            seed: 0,
            tier: TierPolicy::Auto,
            max_cosets: steinberg_fp::DEFAULT_MAX_COSETS,
            domain_cap: None,
            relator_limit: DEFAULT_RELATOR_LIMIT,
            families: Vec::new(),
            checks: Vec::new(),
            expected_kernel_order: None,
            inject_fault: false,
            record_timings: false,
        }
    }
}

impl SuiteConfig {
    pub fn new(suite: &str) -> Self {
        SuiteConfig {
            suite: suite.to_string(),
            ..SuiteConfig::default()
        }
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn wants(&self, check: &str) -> bool {
        self.checks.is_empty() || self.checks.iter().any(|c| c == check)
    }
}
