//! Exact commutative rings with identity.
//!
//! A [`Ring`] is a cheap, shareable handle describing a construction
//! (`z`, `z/N`, products, polynomial rings, monic quotients, localizations,
//! semidirect extensions). Elements are plain [`Elem`] payloads in canonical
//! form, so structural equality is ring equality. All arithmetic goes
//! through the owning handle.

mod ideal;
mod morphism;
mod parse;

pub use ideal::{lin_solve, Ideal, IdealKind};
pub use morphism::{
    localization, semidirect_parts, semidirect_ring, split, splitting_section, substitute, substitution_morphism,
    RingMorphism, SplitData,
};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rings with more elements than this are never enumerated.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

/// Canonical-form payload of a ring element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Int(BigInt),
    Mod(u64),
    Pair(Box<Elem>, Box<Elem>),
    /// Dense coefficient list, constant term first, no trailing zeros.
    Poly(Vec<Elem>),
    /// `num / a^exp` in a localized domain, with `exp` minimal.
    Frac(Box<Elem>, u32),
}

impl Elem {
    pub fn pair(a: Elem, b: Elem) -> Elem {
        Elem::Pair(Box::new(a), Box::new(b))
    }
}

#[derive(Clone)]
pub struct Ring(Arc<RingData>);

struct RingData {
    spec: String,
    kind: RingKind,
    elements: OnceLock<Option<Arc<Vec<Elem>>>>,
    index: OnceLock<Option<Arc<HashMap<Elem, usize>>>>,
}

pub(crate) enum RingKind {
    Integers,
    Modular(u64),
    Product(Ring, Ring),
    Poly {
        base: Ring,
        var: String,
    },
    /// `base[var] / (modulus)` with a monic modulus of degree >= 1.
    Quotient {
        base: Ring,
        var: String,
        modulus: Vec<Elem>,
    },
    /// Quotient of a finite ring by an ideal, elements are coset representatives.
    FiniteQuotient {
        base: Ring,
        reps: HashMap<Elem, Elem>,
    },
    /// `R_a` for finite `R`, modelled as `e R` where `e` is the idempotent power of `a`.
    LocFinite {
        base: Ring,
        a: Elem,
        e: Elem,
        a_inv: Elem,
    },
    /// Fractions `x / a^k` over a domain.
    LocDomain {
        base: Ring,
        a: Elem,
    },
    /// `R ⋉ X R_a[X]`: pairs `(r, f)` with `f` having zero constant term.
    Semidirect {
        base: Ring,
        a: Elem,
        loc: Ring,
        lambda: RingMorphism,
        coeffs: Ring,
    },
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.spec.hash(state)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.spec)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.spec)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub(crate) fn from_kind(spec: String, kind: RingKind) -> Ring {
        Ring(Arc::new(RingData {
            spec,
            kind,
            elements: OnceLock::new(),
            index: OnceLock::new(),
        }))
    }

    pub(crate) fn kind(&self) -> &RingKind {
        &self.0.kind
    }

    /// Parse a construction expression such as `prod(z/2,z/3)` or
    /// `quo(poly(f2,X),X^2)`.
    pub fn parse(spec: &str) -> Result<Ring> {
        parse::parse_ring(spec)
    }

    pub fn integers() -> Ring {
        Ring::from_kind("z".into(), RingKind::Integers)
    }

    /// `z/n`; `n = 1` is the zero ring.
    pub fn modular(n: u64) -> Result<Ring> {
        if n == 0 {
            return Ok(Ring::integers());
        }
        let spec = if is_prime(n) { format!("f{n}") } else { format!("z/{n}") };
        Ok(Ring::from_kind(spec, RingKind::Modular(n)))
    }

    pub fn zero_ring() -> Ring {
        Ring::from_kind("z/1".into(), RingKind::Modular(1))
    }

    pub fn product(a: &Ring, b: &Ring) -> Ring {
        Ring::from_kind(
            format!("prod({a},{b})"),
            RingKind::Product(a.clone(), b.clone()),
        )
    }

    pub fn poly(base: &Ring, var: &str) -> Ring {
        Ring::from_kind(
            format!("poly({base},{var})"),
            RingKind::Poly {
                base: base.clone(),
                var: var.to_string(),
            },
        )
    }

    /// `base[var] / (modulus)`. The modulus must have a unit leading coefficient.
    pub fn quotient(base: &Ring, var: &str, modulus: &[Elem]) -> Result<Ring> {
        let mut m = modulus.to_vec();
        trim(base, &mut m);
        if m.len() < 2 {
            return Err(Error::Unsupported(
                "quotient modulus must have degree >= 1".into(),
            ));
        }
        let lc = m.last().unwrap().clone();
        let inv = base.unit_inverse(&lc).ok_or_else(|| {
            Error::Unsupported("quotient modulus must have a unit leading coefficient".into())
        })?;
        for c in m.iter_mut() {
            *c = base.mul(c, &inv);
        }
        let poly_ring = Ring::poly(base, var);
        let spec = format!("quo({poly_ring},{})", poly_ring.format(&Elem::Poly(m.clone())));
        Ok(Ring::from_kind(
            spec,
            RingKind::Quotient {
                base: base.clone(),
                var: var.to_string(),
                modulus: m,
            },
        ))
    }

    /// Quotient of a finite ring by the additive subgroup `ideal` (which must be an ideal).
    pub fn finite_quotient(base: &Ring, ideal: &[Elem], label: &str) -> Result<Ring> {
        let elems = base
            .elements()
            .ok_or_else(|| Error::Unsupported(format!("{base} is not enumerable")))?;
        let mut reps: HashMap<Elem, Elem> = HashMap::with_capacity(elems.len());
        for x in elems.iter() {
            if reps.contains_key(x) {
                continue;
            }
            for i in ideal {
                reps.insert(base.add(x, i), x.clone());
            }
        }
        Ok(Ring::from_kind(
            format!("({base})/({label})"),
            RingKind::FiniteQuotient {
                base: base.clone(),
                reps,
            },
        ))
    }

    pub fn spec(&self) -> &str {
        &self.0.spec
    }

    /// For polynomial-like constructions, the coefficient ring.
    pub fn coefficient_ring(&self) -> Option<&Ring> {
        match self.kind() {
            RingKind::Poly { base, .. } | RingKind::Quotient { base, .. } => Some(base),
            RingKind::Semidirect { coeffs, .. } => Some(coeffs),
            _ => None,
        }
    }

    pub fn variable(&self) -> Option<&str> {
        match self.kind() {
            RingKind::Poly { var, .. } | RingKind::Quotient { var, .. } => Some(var),
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.kind(), RingKind::Poly { .. })
    }

    // ----- constants -----

    pub fn zero(&self) -> Elem {
        match self.kind() {
            RingKind::Integers => Elem::Int(BigInt::zero()),
            RingKind::Modular(_) => Elem::Mod(0),
            RingKind::Product(a, b) => Elem::pair(a.zero(), b.zero()),
            RingKind::Poly { .. } | RingKind::Quotient { .. } => Elem::Poly(Vec::new()),
            RingKind::FiniteQuotient { base, .. } | RingKind::LocFinite { base, .. } => base.zero(),
            RingKind::LocDomain { base, .. } => Elem::Frac(Box::new(base.zero()), 0),
            RingKind::Semidirect { base, .. } => Elem::pair(base.zero(), Elem::Poly(Vec::new())),
        }
    }

    pub fn one(&self) -> Elem {
        match self.kind() {
            RingKind::Integers => Elem::Int(BigInt::one()),
            RingKind::Modular(n) => Elem::Mod(1 % n),
            RingKind::Product(a, b) => Elem::pair(a.one(), b.one()),
            RingKind::Poly { base, .. } => {
                let mut v = vec![base.one()];
                trim(base, &mut v);
                Elem::Poly(v)
            }
            RingKind::Quotient { base, .. } => self.reduce_quotient(vec![base.one()]),
            RingKind::FiniteQuotient { base, reps } => reps[&base.one()].clone(),
            RingKind::LocFinite { e, .. } => e.clone(),
            RingKind::LocDomain { base, .. } => self.reduce_frac(base.one(), 0),
            RingKind::Semidirect { base, .. } => Elem::pair(base.one(), Elem::Poly(Vec::new())),
        }
    }

    pub fn from_int(&self, k: i64) -> Elem {
        match self.kind() {
            RingKind::Integers => Elem::Int(BigInt::from(k)),
            RingKind::Modular(n) => Elem::Mod(k.rem_euclid(*n as i64) as u64),
            RingKind::Product(a, b) => Elem::pair(a.from_int(k), b.from_int(k)),
            RingKind::Poly { base, .. } => {
                let mut v = vec![base.from_int(k)];
                trim(base, &mut v);
                Elem::Poly(v)
            }
            RingKind::Quotient { base, .. } => self.reduce_quotient(vec![base.from_int(k)]),
            RingKind::FiniteQuotient { base, reps } => reps[&base.from_int(k)].clone(),
            RingKind::LocFinite { base, e, .. } => base.mul(&base.from_int(k), e),
            RingKind::LocDomain { base, .. } => self.reduce_frac(base.from_int(k), 0),
            RingKind::Semidirect { base, .. } => {
                Elem::pair(base.from_int(k), Elem::Poly(Vec::new()))
            }
        }
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        match (self.kind(), x) {
            (RingKind::Integers, Elem::Int(v)) => v.is_zero(),
            (RingKind::Modular(_), Elem::Mod(v)) => *v == 0,
            (RingKind::Poly { .. } | RingKind::Quotient { .. }, Elem::Poly(v)) => v.is_empty(),
            _ => *x == self.zero(),
        }
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        *x == self.one()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.one() == self.zero()
    }

    // ----- arithmetic -----

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (self.kind(), x, y) {
            (RingKind::Integers, Elem::Int(a), Elem::Int(b)) => Elem::Int(a + b),
            (RingKind::Modular(n), Elem::Mod(a), Elem::Mod(b)) => {
                Elem::Mod(((*a as u128 + *b as u128) % *n as u128) as u64)
            }
            (RingKind::Product(ra, rb), Elem::Pair(a1, b1), Elem::Pair(a2, b2)) => {
                Elem::pair(ra.add(a1, a2), rb.add(b1, b2))
            }
            (RingKind::Poly { base, .. }, Elem::Poly(a), Elem::Poly(b)) => {
                Elem::Poly(poly_add(base, a, b))
            }
            (RingKind::Quotient { base, .. }, Elem::Poly(a), Elem::Poly(b)) => {
                Elem::Poly(poly_add(base, a, b))
            }
            (RingKind::FiniteQuotient { base, reps }, a, b) => reps[&base.add(a, b)].clone(),
            (RingKind::LocFinite { base, .. }, a, b) => base.add(a, b),
            (RingKind::LocDomain { base, a }, Elem::Frac(n1, k1), Elem::Frac(n2, k2)) => {
                let k = (*k1).max(*k2);
                let t1 = base.mul(n1, &base.pow(a, (k - k1) as u64));
                let t2 = base.mul(n2, &base.pow(a, (k - k2) as u64));
                self.reduce_frac(base.add(&t1, &t2), k)
            }
            (RingKind::Semidirect { base, coeffs, .. }, Elem::Pair(r1, f1), Elem::Pair(r2, f2)) => {
                Elem::pair(base.add(r1, r2), coeffs.add(f1, f2))
            }
            _ => panic!("element does not belong to {}: {x:?} / {y:?}", self.spec()),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match (self.kind(), x) {
            (RingKind::Integers, Elem::Int(a)) => Elem::Int(-a),
            (RingKind::Modular(n), Elem::Mod(a)) => Elem::Mod(if *a == 0 { 0 } else { n - a }),
            (RingKind::Product(ra, rb), Elem::Pair(a, b)) => Elem::pair(ra.neg(a), rb.neg(b)),
            (RingKind::Poly { base, .. } | RingKind::Quotient { base, .. }, Elem::Poly(a)) => {
                Elem::Poly(a.iter().map(|c| base.neg(c)).collect())
            }
            (RingKind::FiniteQuotient { base, reps }, a) => reps[&base.neg(a)].clone(),
            (RingKind::LocFinite { base, .. }, a) => base.neg(a),
            (RingKind::LocDomain { base, .. }, Elem::Frac(n, k)) => {
                Elem::Frac(Box::new(base.neg(n)), *k)
            }
            (RingKind::Semidirect { base, coeffs, .. }, Elem::Pair(r, f)) => {
                Elem::pair(base.neg(r), coeffs.neg(f))
            }
            _ => panic!("element does not belong to {}: {x:?}", self.spec()),
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (self.kind(), x, y) {
            (RingKind::Integers, Elem::Int(a), Elem::Int(b)) => Elem::Int(a * b),
            (RingKind::Modular(n), Elem::Mod(a), Elem::Mod(b)) => {
                Elem::Mod(((*a as u128 * *b as u128) % *n as u128) as u64)
            }
            (RingKind::Product(ra, rb), Elem::Pair(a1, b1), Elem::Pair(a2, b2)) => {
                Elem::pair(ra.mul(a1, a2), rb.mul(b1, b2))
            }
            (RingKind::Poly { base, .. }, Elem::Poly(a), Elem::Poly(b)) => {
                Elem::Poly(poly_mul(base, a, b))
            }
            (RingKind::Quotient { base, .. }, Elem::Poly(a), Elem::Poly(b)) => {
                self.reduce_quotient(poly_mul(base, a, b))
            }
            (RingKind::FiniteQuotient { base, reps }, a, b) => reps[&base.mul(a, b)].clone(),
            (RingKind::LocFinite { base, .. }, a, b) => base.mul(a, b),
            (RingKind::LocDomain { base, .. }, Elem::Frac(n1, k1), Elem::Frac(n2, k2)) => {
                self.reduce_frac(base.mul(n1, n2), k1 + k2)
            }
            (
                RingKind::Semidirect {
                    base,
                    lambda,
                    coeffs,
                    ..
                },
                Elem::Pair(r1, f1),
                Elem::Pair(r2, f2),
            ) => {
                let loc = coeffs.coefficient_ring().unwrap();
                let l1 = Elem::Poly(lift_const(loc, lambda.apply(r1)));
                let l2 = Elem::Poly(lift_const(loc, lambda.apply(r2)));
                let f = coeffs.add(
                    &coeffs.add(&coeffs.mul(&l1, f2), &coeffs.mul(&l2, f1)),
                    &coeffs.mul(f1, f2),
                );
                Elem::pair(base.mul(r1, r2), f)
            }
            _ => panic!("element does not belong to {}: {x:?} / {y:?}", self.spec()),
        }
    }

    pub fn pow(&self, x: &Elem, mut k: u64) -> Elem {
        let mut acc = self.one();
        let mut b = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            k >>= 1;
            if k > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// Multiplicative inverse, if `x` is a unit.
    pub fn unit_inverse(&self, x: &Elem) -> Option<Elem> {
        match (self.kind(), x) {
            (RingKind::Integers, Elem::Int(a)) => {
                if a.abs().is_one() {
                    Some(x.clone())
                } else {
                    None
                }
            }
            (RingKind::Modular(n), Elem::Mod(a)) => {
                if *n == 1 {
                    return Some(Elem::Mod(0));
                }
                let g = (*a as i128).extended_gcd(&(*n as i128));
                if g.gcd == 1 {
                    Some(Elem::Mod(g.x.rem_euclid(*n as i128) as u64))
                } else {
                    None
                }
            }
            (RingKind::Product(ra, rb), Elem::Pair(a, b)) => {
                Some(Elem::pair(ra.unit_inverse(a)?, rb.unit_inverse(b)?))
            }
            (RingKind::Poly { base, .. }, Elem::Poly(v)) => {
                if base.is_zero_ring() {
                    return Some(x.clone());
                }
                if v.len() == 1 && base.is_domain() {
                    Some(Elem::Poly(vec![base.unit_inverse(&v[0])?]))
                } else {
                    None
                }
            }
            (RingKind::LocDomain { base, a }, Elem::Frac(n, k)) => {
                if base.is_zero(n) {
                    return if self.is_zero_ring() { Some(x.clone()) } else { None };
                }
                let mut num = (**n).clone();
                let mut c = 0u32;
                while let Some(q) = base.exact_div(&num, a) {
                    num = q;
                    c += 1;
                    if c > 4096 {
                        return None;
                    }
                }
                let u = base.unit_inverse(&num)?;
                Some(self.reduce_frac(base.mul(&u, &base.pow(a, *k as u64)), c))
            }
            (RingKind::Semidirect { base, .. }, Elem::Pair(r, f)) => match f.as_ref() {
                Elem::Poly(v) if v.is_empty() => {
                    Some(Elem::pair(base.unit_inverse(r)?, Elem::Poly(Vec::new())))
                }
                _ => None,
            },
            _ => {
                let elems = self.elements()?;
                let one = self.one();
                elems.iter().find(|y| self.mul(x, y) == one).cloned()
            }
        }
    }

    pub fn is_unit(&self, x: &Elem) -> bool {
        self.unit_inverse(x).is_some()
    }

    /// A quotient `q` with `d * q = x`. In a domain the quotient is unique; in a
    /// finite ring the first quotient in enumeration order is returned.
    pub fn exact_div(&self, x: &Elem, d: &Elem) -> Option<Elem> {
        match (self.kind(), x, d) {
            (RingKind::Integers, Elem::Int(a), Elem::Int(b)) => {
                if b.is_zero() {
                    return if a.is_zero() { Some(x.clone()) } else { None };
                }
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Some(Elem::Int(q))
                } else {
                    None
                }
            }
            (RingKind::Poly { base, .. }, Elem::Poly(a), Elem::Poly(b)) => {
                poly_exact_div(base, a, b).map(Elem::Poly)
            }
            (RingKind::LocDomain { base, a }, Elem::Frac(n1, k1), Elem::Frac(n2, k2)) => {
                if base.is_zero(n2) {
                    return if base.is_zero(n1) { Some(self.zero()) } else { None };
                }
                // x/y = (n1 a^k2) / (n2 a^k1); allow extra powers of a in the denominator
                for t in 0..=64u32 {
                    let num = base.mul(&base.mul(n1, &base.pow(a, *k2 as u64)), &base.pow(a, t as u64));
                    if let Some(q) = base.exact_div(&num, n2) {
                        return Some(self.reduce_frac(q, k1 + t));
                    }
                }
                None
            }
            (RingKind::Semidirect { base, lambda, coeffs, .. }, Elem::Pair(r, f), Elem::Pair(dr, df)) => {
                if !matches!(df.as_ref(), Elem::Poly(v) if v.is_empty()) {
                    return None;
                }
                let q = base.exact_div(r, dr)?;
                let loc = coeffs.coefficient_ring().unwrap();
                let inv = loc.unit_inverse(&lambda.apply(dr))?;
                let g = coeffs.mul(f, &Elem::Poly(lift_const(loc, inv)));
                Some(Elem::pair(q, g))
            }
            (RingKind::Product(ra, rb), Elem::Pair(a1, b1), Elem::Pair(a2, b2)) => {
                Some(Elem::pair(ra.exact_div(a1, a2)?, rb.exact_div(b1, b2)?))
            }
            _ => {
                let elems = self.elements()?;
                elems.iter().find(|q| self.mul(d, q) == *x).cloned()
            }
        }
    }

    // ----- structure -----

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// Number of elements, `None` for infinite rings (or sizes beyond `u64`).
    pub fn size(&self) -> Option<u64> {
        match self.kind() {
            RingKind::Integers => None,
            RingKind::Modular(n) => Some(*n),
            RingKind::Product(a, b) => a.size()?.checked_mul(b.size()?),
            RingKind::Poly { base, .. } => {
                if base.is_zero_ring() {
                    Some(1)
                } else {
                    None
                }
            }
            RingKind::Quotient { base, modulus, .. } => {
                base.size()?.checked_pow((modulus.len() - 1) as u32)
            }
            RingKind::FiniteQuotient { .. } | RingKind::LocFinite { .. } => {
                Some(self.elements()?.len() as u64)
            }
            RingKind::LocDomain { .. } => None,
            RingKind::Semidirect { base, loc, .. } => {
                if loc.is_zero_ring() {
                    base.size()
                } else {
                    None
                }
            }
        }
    }

    /// Conservative integral-domain test: `true` only when provable from the construction.
    pub fn is_domain(&self) -> bool {
        match self.kind() {
            RingKind::Integers => true,
            RingKind::Modular(n) => is_prime(*n),
            RingKind::Poly { base, .. } => base.is_domain(),
            RingKind::LocDomain { base, .. } => base.is_domain() && !self.is_zero_ring(),
            RingKind::Semidirect { base, loc, .. } => base.is_domain() && !loc.is_zero_ring(),
            _ => false,
        }
    }

    /// All elements in enumerator order, for finite rings of moderate size.
    pub fn elements(&self) -> Option<Arc<Vec<Elem>>> {
        self.0
            .elements
            .get_or_init(|| self.enumerate().map(Arc::new))
            .clone()
    }

    fn enumerate(&self) -> Option<Vec<Elem>> {
        match self.kind() {
            RingKind::Integers | RingKind::LocDomain { .. } => None,
            RingKind::Modular(n) => {
                if *n > ENUMERATION_LIMIT {
                    return None;
                }
                Some((0..*n).map(Elem::Mod).collect())
            }
            RingKind::Product(a, b) => {
                if self.size()? > ENUMERATION_LIMIT {
                    return None;
                }
                let ea = a.elements()?;
                let eb = b.elements()?;
                let mut out = Vec::with_capacity(ea.len() * eb.len());
                for x in ea.iter() {
                    for y in eb.iter() {
                        out.push(Elem::pair(x.clone(), y.clone()));
                    }
                }
                Some(out)
            }
            RingKind::Poly { base, .. } => {
                if base.is_zero_ring() {
                    Some(vec![Elem::Poly(Vec::new())])
                } else {
                    None
                }
            }
            RingKind::Quotient { base, modulus, .. } => {
                if self.size()? > ENUMERATION_LIMIT {
                    return None;
                }
                let eb = base.elements()?;
                let d = modulus.len() - 1;
                let total = self.size()? as usize;
                let q = eb.len();
                let mut out = Vec::with_capacity(total);
                for idx in 0..total {
                    let mut rest = idx;
                    let mut coeffs = Vec::with_capacity(d);
                    for _ in 0..d {
                        coeffs.push(eb[rest % q].clone());
                        rest /= q;
                    }
                    trim(base, &mut coeffs);
                    out.push(Elem::Poly(coeffs));
                }
                Some(out)
            }
            RingKind::FiniteQuotient { base, reps } => {
                let eb = base.elements()?;
                let mut seen = std::collections::HashSet::new();
                let mut out = Vec::new();
                for x in eb.iter() {
                    let r = &reps[x];
                    if seen.insert(r.clone()) {
                        out.push(r.clone());
                    }
                }
                Some(out)
            }
            RingKind::LocFinite { base, e, .. } => {
                let eb = base.elements()?;
                let mut seen = std::collections::HashSet::new();
                let mut out = Vec::new();
                for x in eb.iter() {
                    let r = base.mul(x, e);
                    if seen.insert(r.clone()) {
                        out.push(r);
                    }
                }
                Some(out)
            }
            RingKind::Semidirect { base, loc, .. } => {
                if !loc.is_zero_ring() {
                    return None;
                }
                let eb = base.elements()?;
                Some(
                    eb.iter()
                        .map(|x| Elem::pair(x.clone(), Elem::Poly(Vec::new())))
                        .collect(),
                )
            }
        }
    }

    /// Position of `x` in the enumerator order.
    pub fn index_of(&self, x: &Elem) -> Option<usize> {
        let idx = self
            .0
            .index
            .get_or_init(|| {
                self.elements().map(|els| {
                    Arc::new(
                        els.iter()
                            .enumerate()
                            .map(|(i, e)| (e.clone(), i))
                            .collect::<HashMap<_, _>>(),
                    )
                })
            })
            .clone()?;
        idx.get(x).copied()
    }

    /// Nonzero elements in enumerator order.
    pub fn nonzero_elements(&self) -> Option<Vec<Elem>> {
        let els = self.elements()?;
        Some(els.iter().filter(|x| !self.is_zero(x)).cloned().collect())
    }

    /// Checks that `x` is a canonical payload of this ring.
    pub fn contains(&self, x: &Elem) -> bool {
        match (self.kind(), x) {
            (RingKind::Integers, Elem::Int(_)) => true,
            (RingKind::Modular(n), Elem::Mod(v)) => v < n,
            (RingKind::Product(a, b), Elem::Pair(p, q)) => a.contains(p) && b.contains(q),
            (RingKind::Poly { base, .. }, Elem::Poly(v)) => {
                v.iter().all(|c| base.contains(c)) && v.last().is_none_or(|c| !base.is_zero(c))
            }
            (RingKind::Quotient { base, modulus, .. }, Elem::Poly(v)) => {
                v.len() < modulus.len()
                    && v.iter().all(|c| base.contains(c))
                    && v.last().is_none_or(|c| !base.is_zero(c))
            }
            (RingKind::FiniteQuotient { reps, .. }, x) => reps.get(x) == Some(x),
            (RingKind::LocFinite { base, e, .. }, x) => base.contains(x) && base.mul(x, e) == *x,
            (RingKind::LocDomain { .. }, Elem::Frac(n, k)) => {
                self.reduce_frac((**n).clone(), *k) == *x
            }
            (RingKind::Semidirect { base, coeffs, .. }, Elem::Pair(r, f)) => {
                base.contains(r)
                    && coeffs.contains(f)
                    && matches!(f.as_ref(), Elem::Poly(v) if v.first().is_none_or(|c| coeffs.coefficient_ring().unwrap().is_zero(c)))
            }
            _ => false,
        }
    }

    // ----- literals -----

    pub fn parse_elem(&self, literal: &str) -> Result<Elem> {
        parse::parse_elem(self, literal)
    }

    pub fn format(&self, x: &Elem) -> String {
        match (self.kind(), x) {
            (RingKind::Integers, Elem::Int(v)) => v.to_string(),
            (RingKind::Modular(_), Elem::Mod(v)) => v.to_string(),
            (RingKind::Product(a, b), Elem::Pair(p, q)) => {
                format!("({},{})", a.format(p), b.format(q))
            }
            (RingKind::Poly { base, .. } | RingKind::Quotient { base, .. }, Elem::Poly(v)) => {
                let parts: Vec<String> = v.iter().map(|c| base.format(c)).collect();
                format!("[{}]", parts.join(","))
            }
            (RingKind::FiniteQuotient { base, .. } | RingKind::LocFinite { base, .. }, x) => {
                base.format(x)
            }
            (RingKind::LocDomain { base, a }, Elem::Frac(n, k)) => {
                if *k == 0 {
                    base.format(n)
                } else {
                    let num = base.format(n);
                    let num = if num.contains('/') { format!("({num})") } else { num };
                    format!("{}/{}", num, base.format(&base.pow(a, *k as u64)))
                }
            }
            (RingKind::Semidirect { base, coeffs, .. }, Elem::Pair(r, f)) => {
                format!("({},{})", base.format(r), coeffs.format(f))
            }
            _ => format!("<foreign {x:?}>"),
        }
    }

    /// A random element; finite rings sample uniformly, infinite rings sample
    /// small bounded-degree values.
    pub fn random_elem<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        if let Some(els) = self.elements() {
            return els[rng.gen_range(0..els.len())].clone();
        }
        match self.kind() {
            RingKind::Integers => Elem::Int(BigInt::from(rng.gen_range(-3i64..=3))),
            RingKind::Modular(n) => Elem::Mod(rng.gen_range(0..*n)),
            RingKind::Product(a, b) => Elem::pair(a.random_elem(rng), b.random_elem(rng)),
            RingKind::Poly { base, .. } => {
                let deg = rng.gen_range(0..=2usize);
                let mut v: Vec<Elem> = (0..=deg).map(|_| base.random_elem(rng)).collect();
                trim(base, &mut v);
                Elem::Poly(v)
            }
            RingKind::Quotient { base, modulus, .. } => {
                let v: Vec<Elem> = (0..modulus.len() - 1).map(|_| base.random_elem(rng)).collect();
                self.reduce_quotient(v)
            }
            RingKind::LocDomain { base, .. } => {
                let n = base.random_elem(rng);
                let k = rng.gen_range(0..=2u32);
                self.reduce_frac(n, k)
            }
            RingKind::Semidirect { base, coeffs, .. } => {
                let loc = coeffs.coefficient_ring().unwrap();
                let deg = rng.gen_range(0..=2usize);
                let mut v = vec![loc.zero()];
                for _ in 0..deg {
                    v.push(loc.random_elem(rng));
                }
                trim(loc, &mut v);
                Elem::pair(base.random_elem(rng), Elem::Poly(v))
            }
            RingKind::FiniteQuotient { .. } | RingKind::LocFinite { .. } => unreachable!(),
        }
    }

    // ----- canonical-form helpers -----

    fn reduce_quotient(&self, mut v: Vec<Elem>) -> Elem {
        let RingKind::Quotient { base, modulus, .. } = self.kind() else {
            unreachable!()
        };
        let d = modulus.len() - 1;
        while v.len() > d {
            let top = v.pop().unwrap();
            if base.is_zero(&top) {
                continue;
            }
            let shift = v.len() - d;
            for (j, m) in modulus[..d].iter().enumerate() {
                let t = base.mul(&top, m);
                v[shift + j] = base.sub(&v[shift + j], &t);
            }
        }
        trim(base, &mut v);
        Elem::Poly(v)
    }

    pub(crate) fn reduce_frac(&self, mut num: Elem, mut k: u32) -> Elem {
        let RingKind::LocDomain { base, a } = self.kind() else {
            unreachable!()
        };
        if base.is_zero(&num) {
            return Elem::Frac(Box::new(num), 0);
        }
        while k > 0 {
            match base.exact_div(&num, a) {
                Some(q) => {
                    num = q;
                    k -= 1;
                }
                None => break,
            }
        }
        Elem::Frac(Box::new(num), k)
    }

    /// Builds a polynomial/quotient element from coefficients, canonicalizing.
    pub fn poly_from_coeffs(&self, coeffs: Vec<Elem>) -> Result<Elem> {
        match self.kind() {
            RingKind::Poly { base, .. } => {
                let mut v = coeffs;
                trim(base, &mut v);
                Ok(Elem::Poly(v))
            }
            RingKind::Quotient { .. } => Ok(self.reduce_quotient(coeffs)),
            _ => Err(Error::Mismatch(format!("{} is not a polynomial ring", self))),
        }
    }

    /// Coefficients of a polynomial-like element.
    pub fn coeffs<'a>(&self, x: &'a Elem) -> Result<&'a [Elem]> {
        match (self.kind(), x) {
            (RingKind::Poly { .. } | RingKind::Quotient { .. }, Elem::Poly(v)) => Ok(v),
            _ => Err(Error::Mismatch(format!(
                "{} is not a polynomial element of {}",
                self.format(x),
                self
            ))),
        }
    }

    /// `x` as a small integer when this is `z` or `z/n`.
    pub fn as_i64(&self, x: &Elem) -> Option<i64> {
        match x {
            Elem::Int(v) => v.to_i64(),
            Elem::Mod(v) => i64::try_from(*v).ok(),
            _ => None,
        }
    }
}

pub(crate) fn trim(base: &Ring, v: &mut Vec<Elem>) {
    while v.last().is_some_and(|c| base.is_zero(c)) {
        v.pop();
    }
}

fn lift_const(base: &Ring, c: Elem) -> Vec<Elem> {
    let mut v = vec![c];
    trim(base, &mut v);
    v
}

pub(crate) fn poly_add(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let c = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => base.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        out.push(c);
    }
    trim(base, &mut out);
    out
}

pub(crate) fn poly_mul(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![base.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if base.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = base.mul(x, y);
            out[i + j] = base.add(&out[i + j], &t);
        }
    }
    trim(base, &mut out);
    out
}

fn poly_exact_div(base: &Ring, a: &[Elem], b: &[Elem]) -> Option<Vec<Elem>> {
    if b.is_empty() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let lb = b.last().unwrap();
    let mut q = vec![base.zero(); a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let top = rem[i + b.len() - 1].clone();
        if base.is_zero(&top) {
            continue;
        }
        let c = base.exact_div(&top, lb)?;
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] = base.sub(&rem[i + j], &base.mul(&c, bj));
        }
        q[i] = c;
    }
    if rem.iter().all(|c| base.is_zero(c)) {
        trim(base, &mut q);
        Some(q)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Ring {
        Ring::parse(s).unwrap()
    }

    #[test]
    fn modular_ring_has_n_elements() {
        let z6 = r("z/6");
        assert_eq!(z6.size(), Some(6));
        assert_eq!(z6.elements().unwrap().len(), 6);
        assert_eq!(z6.add(&Elem::Mod(4), &Elem::Mod(5)), Elem::Mod(3));
    }

    #[test]
    fn poly_over_f2_is_infinite() {
        let p = r("poly(f2,X)");
        assert!(!p.is_finite());
        assert!(p.elements().is_none());
    }

    #[test]
    fn quotient_dual_numbers() {
        let d = r("quo(poly(f2,X),X^2)");
        assert_eq!(d.size(), Some(4));
        let eps = d.parse_elem("[0,1]").unwrap();
        assert!(d.is_zero(&d.mul(&eps, &eps)));
        let els = d.elements().unwrap();
        let shown: Vec<String> = els.iter().map(|x| d.format(x)).collect();
        assert_eq!(shown, vec!["[]", "[1]", "[0,1]", "[1,1]"]);
    }

    #[test]
    fn unit_inverse_in_modular() {
        let z9 = r("z/9");
        assert_eq!(z9.unit_inverse(&Elem::Mod(2)), Some(Elem::Mod(5)));
        assert_eq!(z9.unit_inverse(&Elem::Mod(3)), None);
    }

    #[test]
    fn poly_exact_division_over_z() {
        let p = r("poly(z,X)");
        let a = p.parse_elem("[2,4,2]").unwrap();
        let b = p.parse_elem("[1,1]").unwrap();
        assert_eq!(p.exact_div(&a, &b), Some(p.parse_elem("[2,2]").unwrap()));
        assert_eq!(p.exact_div(&b, &p.from_int(2)), None);
    }

    #[test]
    fn domain_flags() {
        assert!(r("z").is_domain());
        assert!(r("z/7").is_domain());
        assert!(!r("z/6").is_domain());
        assert!(r("poly(z,X)").is_domain());
        assert!(!r("prod(f2,f3)").is_domain());
    }
}
