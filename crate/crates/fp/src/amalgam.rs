//! The relative Steinberg group as an amalgam of its `A_3` pieces: generators
//! `z^Ψ_β(s, r)` for each `A_3` subsystem `Ψ ⊆ Φ`, glued along common roots.

use std::sync::Arc;

use serde::Serialize;
use steinberg_core::roots::{A3Embedding, Family, RootDatum};
use steinberg_core::word::{tiered_equal, z_generator, ExactOracle, Tier};
use steinberg_core::{Elem, Error, Ideal, Result, Ring, StWord};

/// `z^Ψ_β(s, r)` in the standard `A_3` coordinates of subsystem `Ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGenerator {
    pub subsystem: usize,
    pub local_root: usize,
    pub s: Elem,
    pub r: Elem,
}

/// `z^{Ψ_1}_α(s, r) = z^{Ψ_2}_α(s, r)` for a root `α` of `Φ` lying in both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingRelator {
    pub root: usize,
    pub s: Elem,
    pub r: Elem,
    pub first: LocalGenerator,
    pub second: LocalGenerator,
}

#[derive(Clone, Debug)]
pub struct AmalgamPresentation {
    pub system: Arc<RootDatum>,
    pub local: Arc<RootDatum>,
    pub ring: Ring,
    pub ideal: Ideal,
    pub subsystems: Vec<A3Embedding>,
    pub generators: Vec<LocalGenerator>,
    /// `z_β(s, r) z_β(s′, r) = z_β(s + s′, r)` inside each piece.
    pub component_relators: Vec<(LocalGenerator, LocalGenerator, LocalGenerator)>,
    pub gluing: Vec<GluingRelator>,
}

impl AmalgamPresentation {
    pub fn new(system: &Arc<RootDatum>, ring: &Ring, ideal: &Ideal) -> Result<Self> {
        if system.rank() < 3 || !matches!(system.family(), Family::A | Family::D | Family::E) {
            return Err(Error::Precondition(format!(
                "{} is not simply laced of rank ≥ 3",
                system.name()
            )));
        }
        let subsystems = system.a3_subsystems();
        if subsystems.is_empty() {
            return Err(Error::Precondition(format!("{} has no A3 subsystems", system.name())));
        }
        let local = RootDatum::parse("A3")?;
        let ring_els = ring
            .elements()
            .ok_or_else(|| Error::Unsupported(format!("{ring} is not finite")))?;
        let ideal_els = ideal
            .elements()
            .ok_or_else(|| Error::Unsupported(format!("ideal {} is not enumerable", ideal.label())))?;
        let nonzero_ideal: Vec<Elem> = ideal_els.iter().filter(|s| !ring.is_zero(s)).cloned().collect();
        let mut generators = Vec::new();
        let mut component_relators = Vec::new();
        for (k, _) in subsystems.iter().enumerate() {
            for beta in 0..local.num_roots() {
                for r in ring_els.iter() {
                    let g = |s: &Elem| LocalGenerator {
                        subsystem: k,
                        local_root: beta,
                        s: s.clone(),
                        r: r.clone(),
                    };
                    for s in &nonzero_ideal {
                        generators.push(g(s));
                        for s2 in &nonzero_ideal {
                            let t = ring.add(s, s2);
                            if !ring.is_zero(&t) {
                                component_relators.push((g(s), g(s2), g(&t)));
                            }
                        }
                    }
                }
            }
        }
        let mut gluing = Vec::new();
        for alpha in 0..system.num_roots() {
            let containing: Vec<usize> = (0..subsystems.len())
                .filter(|&k| subsystems[k].map.contains(&alpha))
                .collect();
            for (a, &k1) in containing.iter().enumerate() {
                for &k2 in &containing[a + 1..] {
                    for s in &nonzero_ideal {
                        for r in ring_els.iter() {
                            gluing.push(GluingRelator {
                                root: alpha,
                                s: s.clone(),
                                r: r.clone(),
                                first: preimage(&subsystems, &local, ring, k1, alpha, s, r),
                                second: preimage(&subsystems, &local, ring, k2, alpha, s, r),
                            });
                        }
                    }
                }
            }
        }
        Ok(AmalgamPresentation {
            system: system.clone(),
            local,
            ring: ring.clone(),
            ideal: ideal.clone(),
            subsystems,
            generators,
            component_relators,
            gluing,
        })
    }

    /// The canonical map `z^Ψ_β(s, r) ↦` the embedded `A_3` word in `St(Φ, R)`.
    pub fn canonical_image(&self, g: &LocalGenerator) -> StWord {
        let e = &self.subsystems[g.subsystem];
        z_generator(&self.local, &self.ring, g.local_root, &g.s, &g.r).embed(&self.system, &e.map, &e.twist)
    }

    pub fn generator_label(&self, g: &LocalGenerator) -> String {
        format!(
            "z^{}_{}({}, {})",
            g.subsystem,
            self.local.root(g.local_root).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(""),
            self.ring.format(&g.s),
            self.ring.format(&g.r)
        )
    }

    /// Every gluing and component relator maps to the identity; each gluing
    /// side also equals `z_α(s, r)` letter for letter.
    pub fn check_canonical_map(&self, oracle: Option<&dyn ExactOracle>) -> Result<AmalgamCheck> {
        let mut failures = Vec::new();
        for g in &self.gluing {
            let a = self.canonical_image(&g.first);
            let b = self.canonical_image(&g.second);
            let target = z_generator(&self.system, &self.ring, g.root, &g.s, &g.r);
            let v = tiered_equal(&a, &b, oracle)?;
            if !v.equal || a.simplify() != target.simplify() || b.simplify() != target.simplify() {
                failures.push(format!(
                    "{} vs {}: images {} and {}, expected {}",
                    self.generator_label(&g.first),
                    self.generator_label(&g.second),
                    a.format(),
                    b.format(),
                    target.format()
                ));
            }
        }
        for (x, y, z) in &self.component_relators {
            let lhs = self.canonical_image(x).mul(&self.canonical_image(y))?;
            let rhs = self.canonical_image(z);
            if !tiered_equal(&lhs, &rhs, oracle)?.equal {
                failures.push(format!(
                    "{}·{} ≠ {}",
                    self.generator_label(x),
                    self.generator_label(y),
                    self.generator_label(z)
                ));
            }
        }
        Ok(AmalgamCheck {
            subsystems: self.subsystems.len(),
            generators: self.generators.len(),
            gluing_relators: self.gluing.len(),
            component_relators: self.component_relators.len(),
            tier: if oracle.is_some() { Tier::Exact } else { Tier::Matrix }.as_str(),
            failures,
        })
    }

    /// `z_α(s, r)` of `Φ` not hit by any subsystem generator.
    pub fn uncovered(&self) -> Vec<(usize, Elem, Elem)> {
        let mut out = Vec::new();
        let ring_els = self.ring.elements().expect("finite");
        let ideal_els = self.ideal.elements().expect("enumerable");
        for alpha in 0..self.system.num_roots() {
            for s in ideal_els.iter().filter(|s| !self.ring.is_zero(s)) {
                for r in ring_els.iter() {
                    let target = z_generator(&self.system, &self.ring, alpha, s, r).simplify();
                    let hit = (0..self.subsystems.len()).any(|k| {
                        self.subsystems[k].map.contains(&alpha)
                            && self
                                .canonical_image(&preimage(
                                    &self.subsystems,
                                    &self.local,
                                    &self.ring,
                                    k,
                                    alpha,
                                    s,
                                    r,
                                ))
                                .simplify()
                                == target
                    });
                    if !hit {
                        out.push((alpha, s.clone(), r.clone()));
                    }
                }
            }
        }
        out
    }
}

/// The local generator of subsystem `k` mapping to `z_α(s, r)`.
fn preimage(
    subsystems: &[A3Embedding],
    local: &RootDatum,
    ring: &Ring,
    k: usize,
    alpha: usize,
    s: &Elem,
    r: &Elem,
) -> LocalGenerator {
    let e = &subsystems[k];
    let beta = e.map.iter().position(|&a| a == alpha).expect("root in subsystem");
    let sign = |root: usize, c: &Elem| if e.twist[root] < 0 { ring.neg(c) } else { c.clone() };
    LocalGenerator {
        subsystem: k,
        local_root: beta,
        s: sign(beta, s),
        r: sign(local.neg(beta), r),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmalgamCheck {
    pub subsystems: usize,
    pub generators: usize,
    pub gluing_relators: usize,
    pub component_relators: usize,
    pub tier: &'static str,
    pub failures: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_is_a_single_piece() {
        let sys = RootDatum::parse("A3").unwrap();
        let r = Ring::parse("z/4").unwrap();
        let i = Ideal::parse(&r, "2").unwrap();
        let a = AmalgamPresentation::new(&sys, &r, &i).unwrap();
        assert_eq!(a.subsystems.len(), 1);
        assert!(a.gluing.is_empty());
        assert!(a.check_canonical_map(None).unwrap().failures.is_empty());
        assert!(a.uncovered().is_empty());
    }
}
