use std::time::Instant;

use serde_json::json;

use crate::config::SuiteConfig;
use crate::context::{Check, Ctx};
use crate::report::VerificationReport;
use crate::report::SCHEMA_VERSION;
use crate::VerifyError;

mod amalgam;
mod chevalley;
mod common;
mod k2;
mod psi;
mod relative;
mod star;
mod tmap;
mod tulenbaev;
mod vdk;
mod xeqy;

pub const SUITES: &[&str] = &[
    "chevalley-relations",
    "vdk-identities",
    "tulenbaev-identities",
    "xeqy",
    "star-presentation",
    "psi-s-relations",
    "k2-exact",
    "relative-generation",
    "amalgam",
    "tmap-diagram",
];

pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let mut ctx = Ctx::new(cfg);
    match cfg.suite.as_str() {
        "chevalley-relations" => chevalley::run(&mut ctx)?,
        "vdk-identities" => vdk::run(&mut ctx)?,
        "tulenbaev-identities" => tulenbaev::run(&mut ctx)?,
        "xeqy" => xeqy::run(&mut ctx)?,
        "star-presentation" => star::run(&mut ctx)?,
        "psi-s-relations" => psi::run(&mut ctx)?,
        "k2-exact" => k2::run(&mut ctx)?,
        "relative-generation" => relative::run(&mut ctx)?,
        "amalgam" => amalgam::run(&mut ctx)?,
        "tmap-diagram" => tmap::run(&mut ctx)?,
        other => {
            return Err(VerifyError::Config(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    }
    if cfg.inject_fault {
        inject_fault(&mut ctx);
    }
    if cfg.samples == Some(0) {
        ctx.warnings
            .push("samples = 0: sampled checks ran no instances, so their pass is vacuous".into());
    }
    for c in &ctx.checks {
        if c.instances == 0 {
            ctx.warnings.push(format!("{} ({}, {}) checked no instances", c.name, c.system, c.ring));
        }
    }
    let pass = ctx.checks.iter().all(|c| c.passed());
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        suite: cfg.suite.clone(),
        config: cfg.clone(),
        checks: ctx.checks,
        metrics: ctx.metrics,
        warnings: ctx.warnings,
        verdict: if pass { "pass" } else { "fail" }.into(),
        wall_ms: cfg.record_timings.then(|| start.elapsed().as_millis() as u64),
    })
}

/// A check asserting `x_α(1) = 1` in `St(A_2, F_2)`, which is false.
fn inject_fault(ctx: &mut Ctx) {
    use steinberg_core::{RootDatum, Ring, StWord};
    let sys = RootDatum::parse("A2").expect("A2");
    let ring = Ring::parse("f2").expect("f2");
    let mut check = Check::new("injected-fault", "A2", "f2", "matrix", true);
    let w = StWord::letter(&sys, &ring, 0, ring.one());
    let outcome = w.phi().map(|m| m.is_identity());
    check.record(outcome, || json!({"word": w.format(), "expected": "1"}));
    ctx.push(check);
}
