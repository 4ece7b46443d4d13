//! Per-run state shared by the suites: seeded RNG, coset-table oracles,
//! accumulated check records.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use steinberg_core::roots::RootDatum;
use steinberg_core::word::ExactOracle;
use steinberg_core::{Error, Ideal, Ring};
use steinberg_fp::cache::{cache_dir, cache_key};
use steinberg_fp::{steinberg_presentation, EnumerationCaps, StTable};

use crate::config::{SuiteConfig, TierPolicy, DEFAULT_DOMAIN_CAP};
use crate::report::{CheckRecord, MAX_WITNESSES};
use crate::VerifyError;

pub struct Ctx<'a> {
    pub cfg: &'a SuiteConfig,
    pub rng: ChaCha8Rng,
    pub checks: Vec<CheckRecord>,
    pub metrics: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
    tables: BTreeMap<(String, String), Result<Option<Arc<StTable>>, String>>,
}

/// Oracle lookup result: `Err` carries the reason an exact table is missing
/// under the `exact` policy.
pub type OracleChoice = Result<Option<Arc<StTable>>, String>;

impl<'a> Ctx<'a> {
    pub fn new(cfg: &'a SuiteConfig) -> Self {
        Ctx {
            cfg,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            checks: Vec::new(),
            metrics: BTreeMap::new(),
            warnings: Vec::new(),
            tables: BTreeMap::new(),
        }
    }

    pub fn caps(&self) -> EnumerationCaps {
        EnumerationCaps {
            max_cosets: self.cfg.max_cosets,
        }
    }

    pub fn domain_cap(&self) -> usize {
        self.cfg.domain_cap.unwrap_or(DEFAULT_DOMAIN_CAP)
    }

    pub fn samples(&self, default: usize) -> usize {
        self.cfg.samples.unwrap_or(default)
    }

    pub fn rings(&self, defaults: &[&str]) -> Result<Vec<Ring>, VerifyError> {
        let specs: Vec<String> = if self.cfg.rings.is_empty() {
            defaults.iter().map(|s| s.to_string()).collect()
        } else {
            self.cfg.rings.clone()
        };
        specs
            .iter()
            .map(|s| Ring::parse(s).map_err(|e| VerifyError::Config(format!("ring {s}: {e}"))))
            .collect()
    }

    pub fn systems(&self, defaults: &[&str]) -> Result<Vec<Arc<RootDatum>>, VerifyError> {
        let specs: Vec<String> = if self.cfg.systems.is_empty() {
            defaults.iter().map(|s| s.to_string()).collect()
        } else {
            self.cfg.systems.clone()
        };
        specs
            .iter()
            .map(|s| RootDatum::parse(s).map_err(|e| VerifyError::Config(format!("system {s}: {e}"))))
            .collect()
    }

    /// `A_{n−1}` for the configured `n`, or the type-A default.
    pub fn gl_system(&self, default_n: usize) -> Result<Arc<RootDatum>, VerifyError> {
        let n = self.cfg.n.unwrap_or(default_n);
        if n < 2 {
            return Err(VerifyError::Config(format!("n = {n} is too small")));
        }
        RootDatum::parse(&format!("A{}", n - 1)).map_err(|e| VerifyError::Config(e.to_string()))
    }

    /// The configured ideal of `ring`, defaulting to `(X)` for rings with a
    /// variable and to the unit ideal otherwise.
    pub fn ideal(&self, ring: &Ring) -> Result<Ideal, VerifyError> {
        let spec = match &self.cfg.ideal {
            Some(s) => s.clone(),
            None => ring.variable().unwrap_or("1").to_string(),
        };
        Ideal::parse(ring, &spec).map_err(|e| VerifyError::Config(format!("ideal {spec}: {e}")))
    }

    /// The exact oracle for `St(Φ, R)` under the tier policy.
    pub fn oracle(&mut self, system: &Arc<RootDatum>, ring: &Ring) -> OracleChoice {
        let key = (system.name(), ring.spec().to_string());
        if let Some(t) = self.tables.get(&key) {
            return t.clone();
        }
        let t = self.build_oracle(system, ring);
        self.tables.insert(key, t.clone());
        t
    }

    fn build_oracle(&self, system: &Arc<RootDatum>, ring: &Ring) -> OracleChoice {
        match self.cfg.tier {
            TierPolicy::Matrix => Ok(None),
            TierPolicy::Exact => StTable::enumerate(system, ring, self.caps())
                .map(|t| Some(Arc::new(t)))
                .map_err(|e| format!("no coset table for St({}, {}): {e}", system.name(), ring)),
            TierPolicy::Auto => {
                if !self.affordable(system, ring) {
                    return Ok(None);
                }
                Ok(StTable::enumerate(system, ring, self.caps()).ok().map(Arc::new))
            }
        }
    }

    /// A cached table exists, or `|R|^{dim G}` is within the coset cap.
    fn affordable(&self, system: &Arc<RootDatum>, ring: &Ring) -> bool {
        let Some(size) = ring.size() else { return false };
        let dim = (system.num_roots() + system.rank()) as u32;
        if (size as f64).powi(dim as i32) <= self.cfg.max_cosets as f64 {
            return true;
        }
        let Some(dir) = cache_dir() else { return false };
        let Ok(p) = steinberg_presentation(system, ring) else { return false };
        dir.join(format!("{}.table", cache_key(&p.presentation, &[], self.caps())))
            .exists()
    }

    pub fn push(&mut self, check: Check) {
        let mut rec = check.rec;
        if self.cfg.record_timings {
            rec.wall_ms = Some(check.start.elapsed().as_millis() as u64);
        }
        self.checks.push(rec);
    }
}

pub fn as_oracle(t: &Option<Arc<StTable>>) -> Option<&dyn ExactOracle> {
    t.as_deref().map(|t| t as &dyn ExactOracle)
}

pub fn tier_name(t: &Option<Arc<StTable>>) -> &'static str {
    if t.is_some() {
        "exact"
    } else {
        "matrix"
    }
}

/// Builder for one check record.
pub struct Check {
    pub rec: CheckRecord,
    start: Instant,
}

impl Check {
    pub fn new(name: &str, system: &str, ring: &str, tier: &str, exhaustive: bool) -> Self {
        Check {
            rec: CheckRecord {
                name: name.to_string(),
                system: system.to_string(),
                ring: ring.to_string(),
                tier: tier.to_string(),
                instances: 0,
                exhaustive,
                failure_count: 0,
                failures: Vec::new(),
                inconclusive: 0,
                inconclusive_reasons: Vec::new(),
                wall_ms: None,
            },
            start: Instant::now(),
        }
    }

    pub fn fail(&mut self, witness: Value) {
        self.rec.instances += 1;
        self.rec.failure_count += 1;
        if self.rec.failures.len() < MAX_WITNESSES {
            self.rec.failures.push(witness);
        }
    }

    pub fn inconclusive(&mut self, reason: String) {
        self.rec.instances += 1;
        self.rec.inconclusive += 1;
        if self.rec.inconclusive_reasons.len() < MAX_WITNESSES {
            self.rec.inconclusive_reasons.push(reason);
        }
    }

    /// Records one instance: `Ok(true)` passes, `Ok(false)` fails with the
    /// witness, inconclusive errors count as inconclusive and other errors
    /// fail with the error attached.
    pub fn record(&mut self, outcome: steinberg_core::Result<bool>, witness: impl FnOnce() -> Value) {
        match outcome {
            Ok(true) => self.rec.instances += 1,
            Ok(false) => self.fail(witness()),
            Err(e) if e.is_inconclusive() => self.inconclusive(e.to_string()),
            Err(e) => {
                let mut w = witness();
                if let Value::Object(m) = &mut w {
                    m.insert("error".into(), json!(e.to_string()));
                }
                self.fail(w)
            }
        }
    }

    /// The check could not run at all.
    pub fn unavailable(&mut self, reason: String) {
        self.inconclusive(reason);
    }
}

pub fn core_err(e: Error) -> VerifyError {
    VerifyError::Core(e)
}
