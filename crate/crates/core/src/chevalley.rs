//! Root unipotents, elementary-orbit witnesses and elementary group orders.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{RMatrix, RVector};
use crate::ring::{Elem, Ring, RingKind};
use crate::roots::{Family, RootDatum};
use crate::word::StWord;

/// Default node budget for breadth-first searches.
pub const DEFAULT_SEARCH_CAP: usize = 1_000_000;

/// `t_α(ξ)` in the matrix realization of `Φ` (types A and D).
pub fn unipotent(system: &RootDatum, ring: &Ring, root: usize, xi: &Elem) -> Result<RMatrix> {
    let n = system.matrix_size().ok_or_else(|| {
        Error::Unsupported(format!("no matrix realization for {}", system.name()))
    })?;
    let mut m = RMatrix::identity(ring, n);
    for &(p, q, s) in system.pattern(root)? {
        let c = if s > 0 { xi.clone() } else { ring.neg(xi) };
        let v = ring.add(m.get(p, q), &c);
        m.set(p, q, v);
    }
    Ok(m)
}

fn require_a(system: &RootDatum) -> Result<()> {
    if system.family() != Family::A {
        return Err(Error::Unsupported(format!(
            "elementary orbits are computed in type A, not {}",
            system.name()
        )));
    }
    Ok(())
}

/// A word `w` in the generators `x_{ij}(r)` with `φ(w) e_1 = u`, or `None`
/// when `u` lies outside the elementary orbit of `e_1`.
pub fn elementary_orbit_witness(
    system: &Arc<RootDatum>,
    u: &RVector,
    cap: usize,
) -> Result<Option<StWord>> {
    require_a(system)?;
    let n = system.rank() + 1;
    if u.len() != n {
        return Err(Error::Mismatch(format!("vector of length {} for {}", u.len(), system.name())));
    }
    let ring = &u.ring;
    if n < 2 {
        return Err(Error::Precondition("need n >= 2".into()));
    }
    if ring.elements().is_some() {
        return orbit_bfs(system, u, cap);
    }
    if matches!(ring.kind(), RingKind::Integers) {
        return Ok(euclid_witness(system, u));
    }
    Err(Error::Inconclusive(format!(
        "no orbit procedure for vectors over {ring}"
    )))
}

fn orbit_bfs(system: &Arc<RootDatum>, u: &RVector, cap: usize) -> Result<Option<StWord>> {
    let ring = &u.ring;
    let n = u.len();
    let start = RVector::basis(ring, n, 0).entries;
    if u.entries == start {
        return Ok(Some(StWord::identity(system, ring)));
    }
    if u.unimodular_certificate()?.is_none() {
        return Ok(None);
    }
    let nonzero = ring.nonzero_elements().expect("finite ring");
    let mut parent: HashMap<Vec<Elem>, (Vec<Elem>, usize, Elem)> = HashMap::new();
    let mut seen: HashSet<Vec<Elem>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for root in 0..system.num_roots() {
            let (i, j) = system.a_pair(root).unwrap();
            if ring.is_zero(&v[j]) {
                continue;
            }
            for r in &nonzero {
                let mut w = v.clone();
                w[i] = ring.add(&w[i], &ring.mul(r, &v[j]));
                if seen.contains(&w) {
                    continue;
                }
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(format!(
                        "orbit search exceeded {cap} vectors"
                    )));
                }
                seen.insert(w.clone());
                parent.insert(w.clone(), (v.clone(), root, r.clone()));
                if w == u.entries {
                    // walk back: u = g_k ⋯ g_1 e_1
                    let mut letters = Vec::new();
                    let mut cur = w;
                    while let Some((prev, root, r)) = parent.get(&cur) {
                        letters.push((*root, r.clone()));
                        cur = prev.clone();
                    }
                    return Ok(Some(StWord {
                        system: system.clone(),
                        ring: ring.clone(),
                        letters,
                    }));
                }
                queue.push_back(w);
            }
        }
    }
    Ok(None)
}

/// Euclidean reduction of an integer column to `e_1`.
fn euclid_witness(system: &Arc<RootDatum>, u: &RVector) -> Option<StWord> {
    let ring = &u.ring;
    let n = u.len();
    let mut v: Vec<BigInt> = u
        .entries
        .iter()
        .map(|x| match x {
            Elem::Int(b) => b.clone(),
            _ => unreachable!(),
        })
        .collect();
    // g = ops applied on the left, in order; g·u = e_1 at the end
    let mut ops: Vec<(usize, usize, BigInt)> = Vec::new();
    let mut apply = |v: &mut Vec<BigInt>, i: usize, j: usize, c: BigInt| {
        let d = &c * &v[j];
        v[i] += d;
        ops.push((i, j, c));
    };
    loop {
        let nz: Vec<usize> = (0..n).filter(|&k| !v[k].is_zero()).collect();
        if nz.is_empty() {
            return None;
        }
        if nz.len() == 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&k| (v[k].abs(), k)).unwrap();
        for &k in &nz {
            if k != p {
                let q = num_integer::Integer::div_floor(&v[k], &v[p]);
                apply(&mut v, k, p, -q);
            }
        }
    }
    let i = (0..n).find(|&k| !v[k].is_zero()).unwrap();
    if !v[i].abs().is_one() {
        return None;
    }
    if i != 0 {
        apply(&mut v, 0, i, BigInt::one());
        apply(&mut v, i, 0, -BigInt::one());
    }
    if v[0] == -BigInt::one() {
        apply(&mut v, 1, 0, -BigInt::one());
        apply(&mut v, 0, 1, BigInt::from(2));
        apply(&mut v, 1, 0, -BigInt::one());
    }
    debug_assert!(v[0].is_one());
    let g = StWord {
        system: system.clone(),
        ring: ring.clone(),
        letters: ops
            .into_iter()
            .rev()
            .map(|(i, j, c)| (system.a_index(i, j).unwrap(), Elem::Int(c)))
            .collect(),
    };
    Some(g.inverse().simplify())
}

/// `|E(Φ, R)|` by breadth-first search over matrices.
pub fn elementary_group_order(system: &RootDatum, ring: &Ring, cap: usize) -> Result<u64> {
    let n = system.matrix_size().ok_or_else(|| {
        Error::Unsupported(format!("no matrix realization for {}", system.name()))
    })?;
    let nonzero = ring
        .nonzero_elements()
        .ok_or_else(|| Error::Unsupported(format!("{ring} is not enumerable")))?;
    let start = RMatrix::identity(ring, n);
    let mut seen: HashSet<Vec<Elem>> = HashSet::from([start.entries.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(m) = queue.pop_front() {
        for root in 0..system.num_roots() {
            for r in &nonzero {
                let mut next = m.clone();
                for &(p, q, s) in system.pattern(root)? {
                    let c = if s > 0 { r.clone() } else { ring.neg(r) };
                    next.add_col_multiple(p, q, &c);
                }
                if seen.insert(next.entries.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded(format!(
                            "elementary group exceeds {cap} matrices"
                        )));
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen.len() as u64)
}

/// A random word with `len` letters, coefficients drawn by [`Ring::random_elem`].
pub fn random_word<R: rand::Rng + ?Sized>(
    system: &Arc<RootDatum>,
    ring: &Ring,
    len: usize,
    rng: &mut R,
) -> StWord {
    let mut w = StWord::identity(system, ring);
    for _ in 0..len {
        let root = rng.gen_range(0..system.num_roots());
        w.letters.push((root, ring.random_elem(rng)));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl3_f2_has_168_elements() {
        let sys = RootDatum::parse("A2").unwrap();
        let r = Ring::parse("f2").unwrap();
        assert_eq!(elementary_group_order(&sys, &r, 10_000).unwrap(), 168);
    }

    #[test]
    fn orbit_witness_examples() {
        let sys = RootDatum::parse("A3").unwrap();
        let r = Ring::parse("z/6").unwrap();
        let e2 = RVector::basis(&r, 4, 1);
        let w = elementary_orbit_witness(&sys, &e2, DEFAULT_SEARCH_CAP).unwrap().unwrap();
        assert_eq!(w.phi().unwrap().column(0), e2);
        let bad = RVector::from_ints(&r, &[2, 4, 0, 0]);
        assert!(elementary_orbit_witness(&sys, &bad, DEFAULT_SEARCH_CAP).unwrap().is_none());
        let e1 = RVector::basis(&r, 4, 0);
        assert!(elementary_orbit_witness(&sys, &e1, 10).unwrap().unwrap().is_empty());
    }

    #[test]
    fn integer_orbit_witness() {
        let sys = RootDatum::parse("A2").unwrap();
        let z = Ring::parse("z").unwrap();
        for v in [[6, 10, 15], [0, -1, 0], [-1, 0, 0], [3, 5, 0]] {
            let u = RVector::from_ints(&z, &v);
            let w = elementary_orbit_witness(&sys, &u, 0).unwrap().unwrap();
            assert_eq!(w.phi().unwrap().column(0), u, "{v:?}");
        }
        assert!(elementary_orbit_witness(&sys, &RVector::from_ints(&z, &[2, 4, 0]), 0)
            .unwrap()
            .is_none());
    }

    #[test]
    fn d4_unipotents_preserve_hyperbolic_form() {
        let sys = RootDatum::parse("D4").unwrap();
        let r = Ring::parse("z/4").unwrap();
        let mut j = RMatrix::zero(&r, 8);
        for i in 0..8 {
            j.set(i, 7 - i, r.one());
        }
        for root in 0..sys.num_roots() {
            for x in r.elements().unwrap().iter() {
                let g = unipotent(&sys, &r, root, x).unwrap();
                assert_eq!(g.transpose().mul(&j).unwrap().mul(&g).unwrap(), j);
            }
        }
    }
}
