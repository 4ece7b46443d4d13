//! Ring morphisms and the constructions that produce them: localization,
//! semidirect extensions, substitutions and splitting sections.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{Elem, Ideal, IdealKind, Ring, RingKind};
use crate::error::{Error, Result};

type Action = Arc<dyn Fn(&Elem) -> Elem + Send + Sync>;

#[derive(Clone)]
pub struct RingMorphism {
    pub source: Ring,
    pub target: Ring,
    pub name: String,
    action: Action,
}

impl fmt::Debug for RingMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.name, self.source, self.target)
    }
}

impl RingMorphism {
    pub fn new(
        source: &Ring,
        target: &Ring,
        name: impl Into<String>,
        action: impl Fn(&Elem) -> Elem + Send + Sync + 'static,
    ) -> Self {
        RingMorphism {
            source: source.clone(),
            target: target.clone(),
            name: name.into(),
            action: Arc::new(action),
        }
    }

    pub fn identity(ring: &Ring) -> Self {
        RingMorphism::new(ring, ring, "id", |x| x.clone())
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        (self.action)(x)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingMorphism) -> RingMorphism {
        let a = self.action.clone();
        let b = other.action.clone();
        RingMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            name: format!("{}∘{}", other.name, self.name),
            action: Arc::new(move |x| b(&a(x))),
        }
    }

    /// Checks the unital homomorphism laws on all pairs from `sample`,
    /// returning the first offending pair.
    pub fn check_on(&self, sample: &[Elem]) -> Option<(Elem, Elem)> {
        let (s, t) = (&self.source, &self.target);
        if self.apply(&s.one()) != t.one() || self.apply(&s.zero()) != t.zero() {
            return Some((s.one(), s.zero()));
        }
        for x in sample {
            for y in sample {
                let fx = self.apply(x);
                let fy = self.apply(y);
                if self.apply(&s.add(x, y)) != t.add(&fx, &fy)
                    || self.apply(&s.mul(x, y)) != t.mul(&fx, &fy)
                {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
        None
    }
}

/// `R_a` together with `λ_a : R → R_a`.
///
/// Finite rings are modelled as `e R` with `e` the idempotent power of `a`;
/// domains use reduced fractions. A nilpotent `a` gives the zero ring.
pub fn localization(ring: &Ring, a: &Elem) -> Result<(Ring, RingMorphism)> {
    let spec = format!("loc({ring},{})", ring.format(a));
    if ring.elements().is_some() {
        let mut e = a.clone();
        let mut k = 1u64;
        loop {
            let sq = ring.mul(&e, &e);
            if sq == e {
                break;
            }
            e = ring.mul(&e, a);
            k += 1;
            if k > ring.size().unwrap_or(u64::MAX) + 1 {
                return Err(Error::Precondition(format!(
                    "no idempotent power of {} in {ring}",
                    ring.format(a)
                )));
            }
        }
        let ae = ring.mul(a, &e);
        let els = ring.elements().unwrap();
        let a_inv = els
            .iter()
            .map(|x| ring.mul(x, &e))
            .find(|x| ring.mul(x, &ae) == e)
            .expect("a is invertible on eR");
        let loc = Ring::from_kind(
            spec,
            RingKind::LocFinite {
                base: ring.clone(),
                a: a.clone(),
                e: e.clone(),
                a_inv,
            },
        );
        let lam = RingMorphism::new(ring, &loc, "λ", {
            let ring = ring.clone();
            move |x| ring.mul(x, &e)
        });
        return Ok((loc, lam));
    }
    if ring.is_domain() {
        if ring.is_zero(a) {
            let z = Ring::zero_ring();
            let lam = RingMorphism::new(ring, &z, "λ", |_| Elem::Mod(0));
            return Ok((z, lam));
        }
        let loc = Ring::from_kind(
            spec,
            RingKind::LocDomain {
                base: ring.clone(),
                a: a.clone(),
            },
        );
        let lam = RingMorphism::new(ring, &loc, "λ", {
            let loc = loc.clone();
            move |x| loc.reduce_frac(x.clone(), 0)
        });
        return Ok((loc, lam));
    }
    Err(Error::Inconclusive(format!(
        "localization of {ring}: neither enumerable nor a recognized domain"
    )))
}

/// `R ⋉ X·R_a[X]` with multiplication `(r,f)(r',f') = (rr', λ(r)f' + λ(r')f + ff')`.
pub fn semidirect_ring(ring: &Ring, a: &Elem) -> Result<Ring> {
    let (loc, lambda) = localization(ring, a)?;
    let coeffs = Ring::poly(&loc, "X");
    Ok(Ring::from_kind(
        format!("semi({ring},{})", ring.format(a)),
        RingKind::Semidirect {
            base: ring.clone(),
            a: a.clone(),
            loc,
            lambda,
            coeffs,
        },
    ))
}

/// Projection `R ⋉ X·R_a[X] → R` and the localization map of the base.
pub fn semidirect_parts(ring: &Ring) -> Option<(Ring, Elem, RingMorphism, Ring)> {
    match ring.kind() {
        RingKind::Semidirect {
            base,
            a,
            lambda,
            coeffs,
            ..
        } => Some((base.clone(), a.clone(), lambda.clone(), coeffs.clone())),
        _ => None,
    }
}

/// The coefficient-fixing morphism `S[X] → S[Y]`, `X ↦ a^n Y`.
pub fn substitution_morphism(poly: &Ring, a: &Elem, n: u32) -> Result<RingMorphism> {
    let RingKind::Poly { base, .. } = poly.kind() else {
        return Err(Error::Mismatch(format!("{poly} is not a polynomial ring")));
    };
    let target = Ring::poly(base, "Y");
    let an = base.pow(a, n as u64);
    let (base, tgt) = (base.clone(), target.clone());
    Ok(RingMorphism::new(poly, &target, format!("X↦{}^{n}Y", base.format(a)), move |f| {
        let Elem::Poly(c) = f else {
            panic!("not a polynomial")
        };
        let mut scale = base.one();
        let mut out = Vec::with_capacity(c.len());
        for x in c {
            out.push(base.mul(x, &scale));
            scale = base.mul(&scale, &an);
        }
        tgt.poly_from_coeffs(out).expect("polynomial target")
    }))
}

/// Image of `f` under `X ↦ a^n Y`.
pub fn substitute(poly: &Ring, f: &Elem, a: &Elem, n: u32) -> Result<Elem> {
    if !matches!(f, Elem::Poly(_)) {
        return Err(Error::Mismatch("substitute expects a polynomial".into()));
    }
    Ok(substitution_morphism(poly, a, n)?.apply(f))
}

/// A split pair `R → R/I` with unital section `σ`.
#[derive(Clone, Debug)]
pub struct SplitData {
    pub ring: Ring,
    pub ideal: Ideal,
    pub quotient: Ring,
    pub pi: RingMorphism,
    pub sigma: RingMorphism,
}

impl SplitData {
    /// `ξ − σπ(ξ)`, the component of `ξ` in `I`.
    pub fn kernel_part(&self, x: &Elem) -> Elem {
        self.ring.sub(x, &self.sigma.apply(&self.pi.apply(x)))
    }
}

/// Builds `R/I`, the projection and a section, or `None` when no unital
/// section exists.
pub fn split(ring: &Ring, ideal: &Ideal) -> Result<Option<SplitData>> {
    if let Some(data) = canonical_split(ring, ideal)? {
        return Ok(Some(data));
    }
    let IdealKind::Generated(gens) = ideal.kind() else {
        unreachable!("non-generated ideals have canonical splittings")
    };
    let ielems = ideal.elements().ok_or_else(|| {
        Error::Inconclusive(format!(
            "no registered section for {ring} and its ideal is not enumerable"
        ))
    })?;
    let label: Vec<String> = gens.iter().map(|g| ring.format(g)).collect();
    let quotient = Ring::finite_quotient(ring, &ielems, &label.join(","))?;
    let pi = RingMorphism::new(ring, &quotient, "π", {
        let q = quotient.clone();
        move |x| match q.kind() {
            RingKind::FiniteQuotient { reps, .. } => reps[x].clone(),
            _ => unreachable!(),
        }
    });
    let Some(table) = search_section(ring, &quotient, &pi) else {
        return Ok(None);
    };
    let sigma = RingMorphism::new(&quotient, ring, "σ", move |x| table[x].clone());
    Ok(Some(SplitData {
        ring: ring.clone(),
        ideal: ideal.clone(),
        quotient,
        pi,
        sigma,
    }))
}

/// Section `σ : R/I → R`, if one exists.
pub fn splitting_section(ring: &Ring, ideal: &Ideal) -> Result<Option<RingMorphism>> {
    Ok(split(ring, ideal)?.map(|d| d.sigma))
}

fn canonical_split(ring: &Ring, ideal: &Ideal) -> Result<Option<SplitData>> {
    let constants = |base: &Ring, var: &str| -> Result<Option<SplitData>> {
        if let RingKind::Quotient { modulus, .. } = ring.kind() {
            if !base.is_zero(&modulus[0]) {
                return Err(Error::Precondition(format!(
                    "({var}) is not a proper ideal of {ring}"
                )));
            }
        }
        let pi = RingMorphism::new(ring, base, format!("{var}↦0"), {
            let base = base.clone();
            move |x| match x {
                Elem::Poly(c) => c.first().cloned().unwrap_or_else(|| base.zero()),
                _ => unreachable!(),
            }
        });
        let sigma = RingMorphism::new(base, ring, "const", {
            let ring = ring.clone();
            move |x| ring.poly_from_coeffs(vec![x.clone()]).expect("polynomial ring")
        });
        Ok(Some(SplitData {
            ring: ring.clone(),
            ideal: Ideal::augmentation(ring)?,
            quotient: base.clone(),
            pi,
            sigma,
        }))
    };
    match (ideal.kind(), ring.kind()) {
        (IdealKind::Augmentation, RingKind::Poly { base, var })
        | (IdealKind::Augmentation, RingKind::Quotient { base, var, .. }) => constants(base, var),
        (IdealKind::Generated(g), RingKind::Poly { base, var })
        | (IdealKind::Generated(g), RingKind::Quotient { base, var, .. })
            if g.len() == 1 && g[0] == Elem::Poly(vec![base.zero(), base.one()]) =>
        {
            constants(base, var)
        }
        (IdealKind::SemidirectKernel, RingKind::Semidirect { base, .. }) => {
            let pi = RingMorphism::new(ring, base, "π", |x| match x {
                Elem::Pair(r, _) => (**r).clone(),
                _ => unreachable!(),
            });
            let sigma = RingMorphism::new(base, ring, "σ", |x| {
                Elem::pair(x.clone(), Elem::Poly(Vec::new()))
            });
            Ok(Some(SplitData {
                ring: ring.clone(),
                ideal: ideal.clone(),
                quotient: base.clone(),
                pi,
                sigma,
            }))
        }
        (IdealKind::Generated(_), _) => Ok(None),
        _ => Err(Error::Mismatch(format!(
            "ideal kind does not belong to {ring}"
        ))),
    }
}

/// Backtracking over coset representatives: assigns `σ(q)` for `q` in
/// quotient enumeration order, candidates in ring enumeration order.
fn search_section(ring: &Ring, quotient: &Ring, pi: &RingMorphism) -> Option<HashMap<Elem, Elem>> {
    let qels = quotient.elements()?;
    let rels = ring.elements()?;
    let mut fibres: HashMap<Elem, Vec<Elem>> = HashMap::new();
    for x in rels.iter() {
        fibres.entry(pi.apply(x)).or_default().push(x.clone());
    }
    let q_idx: HashMap<Elem, usize> = qels.iter().enumerate().map(|(i, q)| (q.clone(), i)).collect();
    let mut assigned: Vec<Option<Elem>> = vec![None; qels.len()];
    // zero and one are forced
    let qz = q_idx[&quotient.zero()];
    let qo = q_idx[&quotient.one()];
    assigned[qz] = Some(ring.zero());
    if qo != qz {
        assigned[qo] = Some(ring.one());
    } else if ring.one() != ring.zero() {
        return None;
    }

    fn consistent(
        ring: &Ring,
        quotient: &Ring,
        qels: &[Elem],
        q_idx: &HashMap<Elem, usize>,
        assigned: &[Option<Elem>],
        new: usize,
    ) -> bool {
        let x = assigned[new].as_ref().unwrap();
        let q = &qels[new];
        for (j, y) in assigned.iter().enumerate() {
            let Some(y) = y else { continue };
            let qj = &qels[j];
            let s = q_idx[&quotient.add(q, qj)];
            if let Some(t) = &assigned[s] {
                if *t != ring.add(x, y) {
                    return false;
                }
            }
            let p = q_idx[&quotient.mul(q, qj)];
            if let Some(t) = &assigned[p] {
                if *t != ring.mul(x, y) {
                    return false;
                }
            }
        }
        true
    }

    for i in [qz, qo] {
        if !consistent(ring, quotient, &qels, &q_idx, &assigned, i) {
            return None;
        }
    }

    fn go(
        pos: usize,
        ring: &Ring,
        quotient: &Ring,
        qels: &[Elem],
        q_idx: &HashMap<Elem, usize>,
        fibres: &HashMap<Elem, Vec<Elem>>,
        assigned: &mut Vec<Option<Elem>>,
    ) -> bool {
        if pos == qels.len() {
            return true;
        }
        if assigned[pos].is_some() {
            return go(pos + 1, ring, quotient, qels, q_idx, fibres, assigned);
        }
        for cand in &fibres[&qels[pos]] {
            assigned[pos] = Some(cand.clone());
            if consistent(ring, quotient, qels, q_idx, assigned, pos)
                && go(pos + 1, ring, quotient, qels, q_idx, fibres, assigned)
            {
                return true;
            }
        }
        assigned[pos] = None;
        false
    }

    if !go(0, ring, quotient, &qels, &q_idx, &fibres, &mut assigned) {
        return None;
    }
    let table: HashMap<Elem, Elem> = qels
        .iter()
        .cloned()
        .zip(assigned.into_iter().map(Option::unwrap))
        .collect();
    Some(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Ring {
        Ring::parse(s).unwrap()
    }

    #[test]
    fn finite_localization_uses_idempotent_power() {
        let z6 = r("z/6");
        let (loc, lam) = localization(&z6, &Elem::Mod(2)).unwrap();
        assert_eq!(loc.size(), Some(3));
        assert_eq!(lam.apply(&Elem::Mod(1)), Elem::Mod(4));
        assert!(loc.is_unit(&lam.apply(&Elem::Mod(2))));
    }

    #[test]
    fn nilpotent_localization_is_zero_ring() {
        let (loc, _) = localization(&r("z/4"), &Elem::Mod(2)).unwrap();
        assert!(loc.is_zero_ring());
    }

    #[test]
    fn semidirect_multiplication_example() {
        let s = r("semi(z/6,2)");
        let x = s.parse_elem("(3,[0,4])").unwrap();
        let y = s.parse_elem("(2,[0,2])").unwrap();
        // λ(3)=0, λ(2)=2 on {0,2,4}: f = 2·4X + 8X² = 2X + 2X²
        assert_eq!(s.format(&s.mul(&x, &y)), "(0,[0,2,2])");
    }

    #[test]
    fn substitution_examples() {
        let p = r("poly(z,X)");
        let x2 = p.parse_elem("X^2").unwrap();
        let img = substitute(&p, &x2, &p.coefficient_ring().unwrap().from_int(2), 3).unwrap();
        assert_eq!(Ring::poly(&r("z"), "Y").format(&img), "[0,0,64]");
    }

    #[test]
    fn split_diagonal_and_none() {
        let r22 = r("prod(f2,f2)");
        let i = Ideal::generated(&r22, vec![r22.parse_elem("(0,1)").unwrap()]).unwrap();
        let sigma = splitting_section(&r22, &i).unwrap().unwrap();
        let one_bar = sigma.source.one();
        assert_eq!(r22.format(&sigma.apply(&one_bar)), "(1,1)");

        let r23 = r("prod(f2,f3)");
        let i = Ideal::generated(&r23, vec![r23.parse_elem("(0,1)").unwrap()]).unwrap();
        assert!(splitting_section(&r23, &i).unwrap().is_none());
    }
}
