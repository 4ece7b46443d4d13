//! Finite presentations over a fixed set of table columns, and the Steinberg
//! presentation of `St(Φ, R)` for a finite ring.

use std::collections::HashMap;
use std::sync::Arc;

use sha2::{Digest, Sha256};
use steinberg_core::roots::RootDatum;
use steinberg_core::{Elem, Error, Result, Ring, StWord};

/// A presentation whose generators come with declared inverses.
///
/// Words are sequences of column indices; `inverse` is an involution on the
/// columns (a column may be its own inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub names: Vec<String>,
    pub inverse: Vec<usize>,
    pub relators: Vec<Vec<usize>>,
}

impl Presentation {
    /// Free generators `a, b, …`, each with a separate inverse column `a^-1`.
    pub fn free(names: &[&str]) -> Self {
        let mut cols = Vec::with_capacity(2 * names.len());
        let mut inverse = Vec::with_capacity(2 * names.len());
        for (k, n) in names.iter().enumerate() {
            cols.push(n.to_string());
            cols.push(format!("{n}^-1"));
            inverse.push(2 * k + 1);
            inverse.push(2 * k);
        }
        Presentation {
            names: cols,
            inverse,
            relators: Vec::new(),
        }
    }

    /// Columns with an explicit inverse map.
    pub fn with_inverses(names: Vec<String>, inverse: Vec<usize>) -> Result<Self> {
        if names.len() != inverse.len() {
            return Err(Error::Mismatch("one inverse per column required".into()));
        }
        for (i, &j) in inverse.iter().enumerate() {
            if j >= inverse.len() || inverse[j] != i {
                return Err(Error::Precondition(format!(
                    "inverse map is not an involution at column {i}"
                )));
            }
        }
        Ok(Presentation {
            names,
            inverse,
            relators: Vec::new(),
        })
    }

    pub fn num_columns(&self) -> usize {
        self.names.len()
    }

    pub fn add_relator(&mut self, w: Vec<usize>) -> Result<()> {
        self.check_word(&w)?;
        self.relators.push(w);
        Ok(())
    }

    pub fn check_word(&self, w: &[usize]) -> Result<()> {
        if let Some(&x) = w.iter().find(|&&x| x >= self.names.len()) {
            return Err(Error::Precondition(format!("letter {x} is not a generator")));
        }
        Ok(())
    }

    /// Parses a space-separated word of column names.
    pub fn word(&self, text: &str) -> Result<Vec<usize>> {
        text.split_whitespace()
            .map(|t| {
                self.names
                    .iter()
                    .position(|n| n == t)
                    .ok_or_else(|| Error::Precondition(format!("unknown generator {t}")))
            })
            .collect()
    }

    pub fn invert(&self, w: &[usize]) -> Vec<usize> {
        w.iter().rev().map(|&x| self.inverse[x]).collect()
    }

    /// Stable digest of the columns, inverses and relators.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        for (n, i) in self.names.iter().zip(&self.inverse) {
            h.update(n.as_bytes());
            h.update(b"\x00");
            h.update((*i as u64).to_le_bytes());
        }
        h.update(b"\x01");
        for r in &self.relators {
            for &x in r {
                h.update((x as u64).to_le_bytes());
            }
            h.update(b"\x02");
        }
        hex::encode(h.finalize())
    }
}

/// `St(Φ, R)` presented by one generator per `(α, r)`, `r ≠ 0`, with
/// `x_α(r)⁻¹ = x_α(−r)` declared as column inverses.
#[derive(Clone, Debug)]
pub struct SteinbergPresentation {
    pub system: Arc<RootDatum>,
    pub ring: Ring,
    pub presentation: Presentation,
    pub generators: Vec<(usize, Elem)>,
    index: HashMap<(usize, Elem), usize>,
}

impl SteinbergPresentation {
    pub fn column(&self, root: usize, c: &Elem) -> Option<usize> {
        self.index.get(&(root, c.clone())).copied()
    }

    /// Column word of a Steinberg word; zero letters are dropped.
    pub fn columns(&self, w: &StWord) -> Result<Vec<usize>> {
        if *w.system != *self.system || w.ring != self.ring {
            return Err(Error::Mismatch(format!(
                "word over ({}, {}) evaluated in St({}, {})",
                w.system.name(),
                w.ring,
                self.system.name(),
                self.ring
            )));
        }
        w.letters
            .iter()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(root, c)| {
                self.column(*root, c).ok_or_else(|| {
                    Error::Precondition(format!(
                        "x_{root}({}) is not a generator",
                        self.ring.format(c)
                    ))
                })
            })
            .collect()
    }

    /// The Steinberg word of a column word.
    pub fn to_word(&self, cols: &[usize]) -> StWord {
        StWord {
            system: self.system.clone(),
            ring: self.ring.clone(),
            letters: cols.iter().map(|&x| self.generators[x].clone()).collect(),
        }
    }
}

/// Builds the presentation with relators
/// `x_α(r) x_α(s) = x_α(r+s)` (`r, s, r+s ≠ 0`) and
/// `[x_α(r), x_β(s)] = x_{α+β}(N_{αβ} rs)` or `1` for all `β ≠ −α`.
pub fn steinberg_presentation(system: &Arc<RootDatum>, ring: &Ring) -> Result<SteinbergPresentation> {
    if system.rank() < 2 {
        return Err(Error::Precondition(format!("{} has rank < 2", system.name())));
    }
    let nonzero = ring
        .nonzero_elements()
        .ok_or_else(|| Error::Unsupported(format!("{ring} is not finite")))?;
    let mut generators = Vec::new();
    let mut index = HashMap::new();
    for root in 0..system.num_roots() {
        for r in &nonzero {
            index.insert((root, r.clone()), generators.len());
            generators.push((root, r.clone()));
        }
    }
    let names: Vec<String> = generators
        .iter()
        .map(|(root, r)| {
            let w = StWord::letter(system, ring, *root, r.clone());
            format!("{}({})", w.letter_name(*root), ring.format(r))
        })
        .collect();
    let inverse: Vec<usize> = generators
        .iter()
        .map(|(root, r)| index[&(*root, ring.neg(r))])
        .collect();
    let mut p = Presentation::with_inverses(names, inverse)?;
    let col = |root: usize, c: &Elem| index[&(root, c.clone())];
    for root in 0..system.num_roots() {
        for r in &nonzero {
            for s in &nonzero {
                let t = ring.add(r, s);
                if ring.is_zero(&t) {
                    continue;
                }
                p.add_relator(vec![col(root, r), col(root, s), col(root, &ring.neg(&t))])?;
            }
        }
    }
    for a in 0..system.num_roots() {
        for b in 0..system.num_roots() {
            if b == system.neg(a) {
                continue;
            }
            for r in &nonzero {
                for s in &nonzero {
                    let mut w = vec![
                        col(a, r),
                        col(b, s),
                        col(a, &ring.neg(r)),
                        col(b, &ring.neg(s)),
                    ];
                    if let Some(c) = system.sum(a, b) {
                        let n = system.structure_constant(a, b)?;
                        let mut rs = ring.mul(r, s);
                        if n < 0 {
                            rs = ring.neg(&rs);
                        }
                        if !ring.is_zero(&rs) {
                            w.push(col(c, &ring.neg(&rs)));
                        }
                    }
                    p.add_relator(w)?;
                }
            }
        }
    }
    Ok(SteinbergPresentation {
        system: system.clone(),
        ring: ring.clone(),
        presentation: p,
        generators,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_counts() {
        let a2 = RootDatum::parse("A2").unwrap();
        let f2 = Ring::parse("f2").unwrap();
        assert_eq!(steinberg_presentation(&a2, &f2).unwrap().generators.len(), 6);
        let a3 = RootDatum::parse("A3").unwrap();
        let f3 = Ring::parse("f3").unwrap();
        assert_eq!(steinberg_presentation(&a3, &f3).unwrap().generators.len(), 24);
    }

    #[test]
    fn free_presentation_words() {
        let p = Presentation::free(&["a", "b"]);
        let w = p.word("a b^-1 a").unwrap();
        assert_eq!(w, vec![0, 3, 0]);
        assert_eq!(p.invert(&w), vec![1, 2, 1]);
        assert!(p.word("c").is_err());
    }
}
