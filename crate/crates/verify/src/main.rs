use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use steinberg_verify::{run_suite, SuiteConfig, TierPolicy, VerifyError, SUITES};

/// Runs a verification suite and writes a JSON report.
///
/// Exit status: 0 when every check passes, 1 when any check fails or is
/// inconclusive, 2 on configuration or I/O errors.
#[derive(Parser, Debug)]
#[command(name = "steinberg-verify", version)]
struct Args {
    /// JSON configuration file; command-line flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite name (see --list).
    #[arg(long)]
    suite: Option<String>,
    /// Ring spec, repeatable or comma-separated at the top level.
    #[arg(long = "ring")]
    rings: Vec<String>,
    /// Root system name, repeatable.
    #[arg(long = "system")]
    systems: Vec<String>,
    /// Ideal: `;`-separated generator literals, or `0`, `aug`, `kernel`
    #[arg(long)]
    ideal: Option<String>,
    /// Vector length for the vector-based suites
    #[arg(long)]
    n: Option<usize>,
    /// Seed for all sampling
    #[arg(long)]
    seed: Option<u64>,
    /// Random instances per sampled check
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum)]
    tier: Option<TierPolicy>,
    /// Restrict to the named checks, repeatable.
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Add a check that is known to fail
    #[arg(long)]
    inject_fault: bool,
    /// Include wall-clock times in the report.
    #[arg(long)]
    record_timings: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// List the suites and exit.
    #[arg(long)]
    list: bool,
}

/// Splits on commas outside parentheses, so `prod(f2,f3)` stays whole.
fn split_specs(items: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for item in items {
        let mut depth = 0i32;
        let mut cur = String::new();
        for ch in item.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    out.push(std::mem::take(&mut cur));
                    continue;
                }
                _ => {}
            }
            cur.push(ch);
        }
        if !cur.is_empty() {
            out.push(cur);
        }
    }
    out
}

fn build_config(args: &Args) -> Result<SuiteConfig, VerifyError> {
    let mut cfg = match &args.config {
        Some(path) => SuiteConfig::from_json(&std::fs::read_to_string(path)?)?,
        None => SuiteConfig::default(),
    };
    if let Some(s) = &args.suite {
        cfg.suite = s.clone();
    }
    if !args.rings.is_empty() {
        cfg.rings = split_specs(&args.rings);
    }
    if !args.systems.is_empty() {
        cfg.systems = split_specs(&args.systems);
    }
    if args.ideal.is_some() {
        cfg.ideal = args.ideal.clone();
    }
    if args.n.is_some() {
        cfg.n = args.n;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if args.samples.is_some() {
        cfg.samples = args.samples;
    }
    if let Some(t) = args.tier {
        cfg.tier = t;
    }
    if !args.checks.is_empty() {
        cfg.checks = args.checks.clone();
    }
    cfg.inject_fault |= args.inject_fault;
    cfg.record_timings |= args.record_timings;
    if cfg.suite.is_empty() {
        return Err(VerifyError::Config("no suite given (use --suite or the config file)".into()));
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list {
        for s in SUITES {
            println!("{s}");
        }
        return ExitCode::SUCCESS;
    }
    let result = build_config(&args).and_then(|cfg| {
        let report = run_suite(&cfg)?;
        let json = report.to_json();
        match &args.out {
            Some(path) => {
                std::fs::write(path, &json)?;
                eprint!("{}", report.to_text());
            }
            None => {
                print!("{json}");
                eprint!("{}", report.to_text());
            }
        }
        Ok(report.passed())
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
