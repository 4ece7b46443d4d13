//! On-disk cache of complete coset tables, keyed by presentation, subgroup
//! and caps. Enabled by the `STEINBERG_CACHE` environment variable.

use std::fs;
use std::path::PathBuf;

use sha2::{Digest, Sha256};
use steinberg_core::Result;

use crate::presentation::Presentation;
use crate::todd_coxeter::{enumerate_cosets, CosetTable, EnumerationCaps};

pub const CACHE_ENV: &str = "STEINBERG_CACHE";

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

pub fn cache_key(p: &Presentation, subgroup: &[Vec<usize>], caps: EnumerationCaps) -> String {
    let mut h = Sha256::new();
    h.update(p.fingerprint().as_bytes());
    for w in subgroup {
        for &x in w {
            h.update((x as u64).to_le_bytes());
        }
        h.update(b"\x03");
    }
    h.update((caps.max_cosets as u64).to_le_bytes());
    hex::encode(h.finalize())
}

/// [`enumerate_cosets`] behind the cache. Unreadable or inconsistent cache
/// entries are recomputed; failures to write the cache are ignored.
pub fn enumerate_cached(
    p: &Presentation,
    subgroup: &[Vec<usize>],
    caps: EnumerationCaps,
) -> Result<CosetTable> {
    let Some(dir) = cache_dir() else {
        return enumerate_cosets(p, subgroup, caps);
    };
    let path = dir.join(format!("{}.table", cache_key(p, subgroup, caps)));
    if let Ok(bytes) = fs::read(&path) {
        if let Ok(t) = CosetTable::from_bytes(&bytes) {
            if t.verify(&p.relators).is_ok() && subgroup.iter().all(|w| t.trace(0, w) == 0) {
                return Ok(t);
            }
        }
    }
    let t = enumerate_cosets(p, subgroup, caps)?;
    if fs::create_dir_all(&dir).is_ok() {
        let tmp = path.with_extension("tmp");
        if fs::write(&tmp, t.to_bytes()).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
    Ok(t)
}
