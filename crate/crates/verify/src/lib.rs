//! Verification harness: named suites of identity checks over configured
//! rings and root systems, reported as canonical JSON.

pub mod config;
pub mod context;
pub mod report;
pub mod suites;

pub use config::{SuiteConfig, TierPolicy};
pub use report::{CheckRecord, VerificationReport};
pub use suites::{run_suite, SUITES};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] steinberg_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
