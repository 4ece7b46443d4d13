//! Exact equality in `St(Φ, R)` through a complete coset table of the
//! trivial subgroup.

use std::sync::Arc;

use steinberg_core::roots::RootDatum;
use steinberg_core::word::ExactOracle;
use steinberg_core::{Result, Ring, StWord};

use crate::cache::enumerate_cached;
use crate::presentation::{steinberg_presentation, SteinbergPresentation};
use crate::todd_coxeter::{CosetTable, EnumerationCaps};

/// The regular representation of a finite `St(Φ, R)`.
#[derive(Clone, Debug)]
pub struct StTable {
    pub presentation: SteinbergPresentation,
    pub table: CosetTable,
}

impl StTable {
    pub fn enumerate(system: &Arc<RootDatum>, ring: &Ring, caps: EnumerationCaps) -> Result<Self> {
        let presentation = steinberg_presentation(system, ring)?;
        let table = enumerate_cached(&presentation.presentation, &[], caps)?;
        Ok(StTable {
            presentation,
            table,
        })
    }

    /// `|St(Φ, R)|`.
    pub fn order(&self) -> u64 {
        self.table.len() as u64
    }

    /// The coset (group element) reached by `w`.
    pub fn element(&self, w: &StWord) -> Result<usize> {
        Ok(self.table.trace(0, &self.presentation.columns(w)?))
    }

    /// The permutation of `St(Φ, R)` induced by right multiplication by `w`.
    pub fn eval_word(&self, w: &StWord) -> Result<Vec<u32>> {
        Ok(self.table.permutation(&self.presentation.columns(w)?))
    }
}

impl ExactOracle for StTable {
    fn is_identity(&self, w: &StWord) -> Result<bool> {
        Ok(self.element(w)? == 0)
    }
}
