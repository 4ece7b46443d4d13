//! Words in the Steinberg generators `x_α(ξ)` and the projection `φ`.

use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::RMatrix;
use crate::ring::{Elem, Ring, RingMorphism};
use crate::roots::{Family, RootDatum};

#[derive(Clone)]
pub struct StWord {
    pub system: Arc<RootDatum>,
    pub ring: Ring,
    pub letters: Vec<(usize, Elem)>,
}

impl PartialEq for StWord {
    fn eq(&self, other: &Self) -> bool {
        *self.system == *other.system && self.ring == other.ring && self.letters == other.letters
    }
}
impl Eq for StWord {}

impl fmt::Debug for StWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl StWord {
    pub fn identity(system: &Arc<RootDatum>, ring: &Ring) -> Self {
        StWord {
            system: system.clone(),
            ring: ring.clone(),
            letters: Vec::new(),
        }
    }

    /// `x_α(ξ)`; a zero coefficient gives the empty word.
    pub fn letter(system: &Arc<RootDatum>, ring: &Ring, root: usize, c: Elem) -> Self {
        let mut w = StWord::identity(system, ring);
        if !ring.is_zero(&c) {
            w.letters.push((root, c));
        }
        w
    }

    /// `x_{ij}(c)` in type A, 0-based indices.
    pub fn x(system: &Arc<RootDatum>, ring: &Ring, i: usize, j: usize, c: Elem) -> Result<Self> {
        let root = system.a_index(i, j).ok_or_else(|| {
            Error::Precondition(format!("x_{{{i}{j}}} is not a root of {}", system.name()))
        })?;
        Ok(StWord::letter(system, ring, root, c))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check(&self, other: &StWord) -> Result<()> {
        if *self.system != *other.system || self.ring != other.ring {
            return Err(Error::Mismatch(format!(
                "words over ({}, {}) and ({}, {})",
                self.system.name(),
                self.ring,
                other.system.name(),
                other.ring
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &StWord) -> Result<StWord> {
        self.check(other)?;
        let mut w = self.clone();
        w.letters.extend(other.letters.iter().cloned());
        Ok(w)
    }

    /// Concatenation of many words.
    pub fn product<'a>(
        system: &Arc<RootDatum>,
        ring: &Ring,
        words: impl IntoIterator<Item = &'a StWord>,
    ) -> Result<StWord> {
        let mut acc = StWord::identity(system, ring);
        for w in words {
            acc.check(w)?;
            acc.letters.extend(w.letters.iter().cloned());
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> StWord {
        let mut w = self.clone();
        w.letters = self
            .letters
            .iter()
            .rev()
            .map(|(r, c)| (*r, self.ring.neg(c)))
            .collect();
        w
    }

    /// `g h g⁻¹`.
    pub fn conjugate(g: &StWord, h: &StWord) -> Result<StWord> {
        g.mul(h)?.mul(&g.inverse())
    }

    /// Left-normed `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &StWord, y: &StWord) -> Result<StWord> {
        x.mul(y)?.mul(&x.inverse())?.mul(&y.inverse())
    }

    /// Merges adjacent letters on the same root and drops zero letters.
    /// Only the additivity relation is used, so the result is equal in `St`.
    pub fn simplify(&self) -> StWord {
        let r = &self.ring;
        let mut out: Vec<(usize, Elem)> = Vec::with_capacity(self.letters.len());
        for (root, c) in &self.letters {
            if r.is_zero(c) {
                continue;
            }
            match out.last_mut() {
                Some((top, d)) if top == root => {
                    let s = r.add(d, c);
                    if r.is_zero(&s) {
                        out.pop();
                    } else {
                        *d = s;
                    }
                }
                _ => out.push((*root, c.clone())),
            }
        }
        StWord {
            system: self.system.clone(),
            ring: self.ring.clone(),
            letters: out,
        }
    }

    /// `φ(w) = ∏ t_α(ξ)`, evaluated by sparse column operations.
    pub fn phi(&self) -> Result<RMatrix> {
        let n = self.system.matrix_size().ok_or_else(|| {
            Error::Unsupported(format!("no matrix realization for {}", self.system.name()))
        })?;
        let r = &self.ring;
        let mut m = RMatrix::identity(r, n);
        for (root, c) in &self.letters {
            for &(p, q, s) in self.system.pattern(*root)? {
                let coeff = if s > 0 { c.clone() } else { r.neg(c) };
                m.add_col_multiple(p, q, &coeff);
            }
        }
        Ok(m)
    }

    /// `φ(w)* = ((φ(w))ᵗ)⁻¹`, using `t_α(ξ)* = 1 − ξ Nᵗ` factor by factor.
    pub fn phi_contragredient(&self) -> Result<RMatrix> {
        let n = self.system.matrix_size().ok_or_else(|| {
            Error::Unsupported(format!("no matrix realization for {}", self.system.name()))
        })?;
        let r = &self.ring;
        let mut m = RMatrix::identity(r, n);
        for (root, c) in &self.letters {
            for &(p, q, s) in self.system.pattern(*root)? {
                let coeff = if s > 0 { r.neg(c) } else { c.clone() };
                m.add_col_multiple(q, p, &coeff);
            }
        }
        Ok(m)
    }

    /// Letter-wise `x_{ij}(r) ↦ x_{ji}(r)` with the order reversed, so that
    /// `φ(transpose_anti(w)) = φ(w)ᵗ`. Type A only.
    pub fn transpose_anti(&self) -> Result<StWord> {
        if self.system.family() != Family::A {
            return Err(Error::Unsupported(
                "transpose is only defined in type A".into(),
            ));
        }
        let mut w = self.clone();
        w.letters = self
            .letters
            .iter()
            .rev()
            .map(|(root, c)| (self.system.neg(*root), c.clone()))
            .collect();
        Ok(w)
    }

    /// Image under the Steinberg functor applied to a ring morphism.
    pub fn map_ring(&self, f: &RingMorphism) -> StWord {
        let letters = self
            .letters
            .iter()
            .map(|(root, c)| (*root, f.apply(c)))
            .filter(|(_, c)| !f.target.is_zero(c))
            .collect();
        StWord {
            system: self.system.clone(),
            ring: f.target.clone(),
            letters,
        }
    }

    /// Relabels roots through `map` with sign twist, into a larger system.
    pub fn embed(&self, target: &Arc<RootDatum>, map: &[usize], twist: &[i8]) -> StWord {
        let r = &self.ring;
        StWord {
            system: target.clone(),
            ring: r.clone(),
            letters: self
                .letters
                .iter()
                .map(|(root, c)| {
                    let c = if twist[*root] < 0 { r.neg(c) } else { c.clone() };
                    (map[*root], c)
                })
                .collect(),
        }
    }

    pub fn letter_name(&self, root: usize) -> String {
        match self.system.a_pair(root) {
            Some((i, j)) => format!("x{}{}", i + 1, j + 1),
            None => format!("x{:?}", self.system.root(root)),
        }
    }

    pub fn format(&self) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(root, c)| format!("{}({})", self.letter_name(*root), self.ring.format(c)))
            .collect();
        parts.join("·")
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.letters
                .iter()
                .map(|(root, c)| {
                    Value::Array(vec![Value::from(*root as u64), Value::String(self.ring.format(c))])
                })
                .collect(),
        )
    }
}

/// `z_α(s, r) = x_{−α}(r) x_α(s) x_{−α}(−r)`.
pub fn z_generator(system: &Arc<RootDatum>, ring: &Ring, alpha: usize, s: &Elem, r: &Elem) -> StWord {
    let neg = system.neg(alpha);
    let mut w = StWord::identity(system, ring);
    for (root, c) in [(neg, r.clone()), (alpha, s.clone()), (neg, ring.neg(r))] {
        if !ring.is_zero(&c) {
            w.letters.push((root, c));
        }
    }
    w
}

/// Level at which a word equality was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    Syntactic,
    Matrix,
    Exact,
}

impl Tier {
    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Syntactic => "syntactic",
            Tier::Matrix => "matrix",
            Tier::Exact => "exact",
        }
    }
}

/// Decides equality in `St(Φ, R)`, e.g. through a complete coset table.
pub trait ExactOracle: Sync {
    fn is_identity(&self, w: &StWord) -> Result<bool>;

    fn equal(&self, a: &StWord, b: &StWord) -> Result<bool> {
        self.is_identity(&a.mul(&b.inverse())?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub equal: bool,
    pub tier: Tier,
}

/// Compares two words at the strongest available tier. A matrix-tier `true`
/// is only a necessary condition for equality in `St`; a matrix-tier `false`
/// is conclusive.
pub fn tiered_equal(a: &StWord, b: &StWord, oracle: Option<&dyn ExactOracle>) -> Result<Verdict> {
    a.check(b)?;
    if a.simplify() == b.simplify() {
        return Ok(Verdict {
            equal: true,
            tier: Tier::Syntactic,
        });
    }
    if let Some(o) = oracle {
        return Ok(Verdict {
            equal: o.equal(a, b)?,
            tier: Tier::Exact,
        });
    }
    Ok(Verdict {
        equal: a.phi()? == b.phi()?,
        tier: Tier::Matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_of_s3_commutator() {
        let sys = RootDatum::parse("A2").unwrap();
        let r = Ring::parse("z/6").unwrap();
        let a = StWord::x(&sys, &r, 0, 1, Elem::Mod(2)).unwrap();
        let b = StWord::x(&sys, &r, 1, 2, Elem::Mod(5)).unwrap();
        let c = StWord::commutator(&a, &b).unwrap();
        assert_eq!(c.phi().unwrap(), RMatrix::elementary(&r, 3, 0, 2, &Elem::Mod(4)));
    }

    #[test]
    fn simplify_merges_and_cancels() {
        let sys = RootDatum::parse("A2").unwrap();
        let r = Ring::parse("z/5").unwrap();
        let w = StWord::x(&sys, &r, 0, 1, Elem::Mod(2))
            .unwrap()
            .mul(&StWord::x(&sys, &r, 0, 1, Elem::Mod(3)).unwrap())
            .unwrap();
        assert!(w.simplify().is_empty());
        let g = StWord::x(&sys, &r, 1, 2, Elem::Mod(1)).unwrap();
        assert!(StWord::commutator(&g, &StWord::identity(&sys, &r))
            .unwrap()
            .simplify()
            .is_empty());
    }

    #[test]
    fn z_generator_with_zero_r() {
        let sys = RootDatum::parse("A2").unwrap();
        let r = Ring::parse("f2").unwrap();
        let a = sys.a_index(0, 1).unwrap();
        let z = z_generator(&sys, &r, a, &Elem::Mod(1), &Elem::Mod(0));
        assert_eq!(z, StWord::letter(&sys, &r, a, Elem::Mod(1)));
    }

    #[test]
    fn contragredient_matches_general_inverse() {
        let sys = RootDatum::parse("D4").unwrap();
        let r = Ring::parse("z/4").unwrap();
        let mut w = StWord::identity(&sys, &r);
        for k in 0..sys.num_roots() {
            w.letters.push((k, Elem::Mod((k % 3 + 1) as u64)));
        }
        let m = w.phi().unwrap();
        let mut prod = w.phi_contragredient().unwrap().transpose().mul(&m).unwrap();
        assert!(prod.is_identity());
        prod = m.contragredient().unwrap();
        assert_eq!(prod, w.phi_contragredient().unwrap());
    }
}
