//! Index of the subgroup generated by the `z_α(s, r)` in `St(Φ, R)`.

use std::sync::Arc;

use serde::Serialize;
use steinberg_core::roots::RootDatum;
use steinberg_core::word::z_generator;
use steinberg_core::{Error, Ideal, Result, Ring};

use crate::cache::enumerate_cached;
use crate::exact::StTable;
use crate::presentation::steinberg_presentation;
use crate::todd_coxeter::EnumerationCaps;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeIndexReport {
    pub system: String,
    pub ring: String,
    pub ideal: String,
    pub quotient_ring: String,
    pub subgroup_generators: usize,
    pub index: u64,
    pub quotient_order: u64,
}

impl RelativeIndexReport {
    pub fn matches(&self) -> bool {
        self.index == self.quotient_order
    }
}

/// Enumerates `St(Φ, R) / ⟨z_α(s, r) : s ∈ I, r ∈ R⟩` and, separately,
/// `St(Φ, R/I)`.
pub fn relative_subgroup_index(
    system: &Arc<RootDatum>,
    ring: &Ring,
    ideal: &Ideal,
    caps: EnumerationCaps,
) -> Result<RelativeIndexReport> {
    let p = steinberg_presentation(system, ring)?;
    let els = ring
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("{ring} is not finite")))?;
    let ideal_els = ideal
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("ideal {} is not enumerable", ideal.label())))?;
    let mut h = Vec::new();
    for alpha in 0..system.num_roots() {
        for s in ideal_els.iter().filter(|s| !ring.is_zero(s)) {
            for r in els.iter() {
                h.push(p.columns(&z_generator(system, ring, alpha, s, r))?);
            }
        }
    }
    let table = enumerate_cached(&p.presentation, &h, caps)?;
    let quotient = Ring::finite_quotient(ring, &ideal_els, &ideal.label())?;
    let q = StTable::enumerate(system, &quotient, caps)?;
    Ok(RelativeIndexReport {
        system: system.name(),
        ring: ring.spec().to_string(),
        ideal: ideal.label(),
        quotient_ring: quotient.spec().to_string(),
        subgroup_generators: h.len(),
        index: table.len() as u64,
        quotient_order: q.order(),
    })
}
