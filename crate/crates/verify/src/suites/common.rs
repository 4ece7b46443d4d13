//! Vector domains and witness formatting shared by the suites.

use rand::Rng;
use serde_json::{json, Value};
use steinberg_core::{Elem, RVector, Ring};

/// All of `Rⁿ` in lexicographic order of element indices.
pub fn all_vectors(ring: &Ring, n: usize) -> Vec<RVector> {
    let els = ring.elements().expect("finite ring");
    let mut out: Vec<Vec<Elem>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * els.len());
        for v in &out {
            for x in els.iter() {
                let mut w = v.clone();
                w.push(x.clone());
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter().map(|e| RVector::new(ring, e)).collect()
}

pub fn random_vector<R: Rng + ?Sized>(ring: &Ring, n: usize, rng: &mut R) -> RVector {
    RVector::new(ring, (0..n).map(|_| ring.random_elem(rng)).collect())
}

/// `|R|^k`, saturating; `None` for infinite rings.
pub fn domain_size(ring: &Ring, k: usize) -> Option<u64> {
    let s = ring.size()?;
    Some((s as u128).saturating_pow(k as u32).min(u64::MAX as u128) as u64)
}

/// Whether a domain of `|R|^k` points is enumerated under `cap`.
pub fn enumerable(ring: &Ring, k: usize, cap: usize) -> bool {
    domain_size(ring, k).is_some_and(|s| s <= cap as u64)
}

pub fn vec_json(v: &RVector) -> Value {
    json!(v.format())
}

/// Solves `cᵗu = a` by search; `None` when `a ∉ I(u)`.
pub fn membership(u: &RVector, a: &Elem) -> Option<RVector> {
    steinberg_core::ring::lin_solve(&u.ring, &u.entries, a)
        .ok()
        .flatten()
        .map(|c| RVector::new(&u.ring, c))
}
