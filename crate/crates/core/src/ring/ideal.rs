//! Ideals, membership certificates and unique division.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Elem, Ring, RingKind};
use crate::error::{Error, Result};

/// Finite rings up to this size are solved by exhaustive search.
const EXHAUSTIVE_SOLVE_LIMIT: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealKind {
    Generated(Vec<Elem>),
    /// `(X)` in a polynomial ring or a monic quotient whose modulus vanishes at 0.
    Augmentation,
    /// `X·R_a[X]` inside `R ⋉ X·R_a[X]`; not finitely generated in general.
    SemidirectKernel,
}

#[derive(Clone)]
pub struct Ideal(Arc<IdealData>);

struct IdealData {
    ring: Ring,
    kind: IdealKind,
    elements: OnceLock<Option<Arc<Vec<Elem>>>>,
    division: Mutex<HashMap<Elem, std::result::Result<Arc<HashMap<Elem, Elem>>, String>>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({} in {})", self.label(), self.0.ring)
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.0.ring == other.0.ring && self.0.kind == other.0.kind
    }
}

impl Ideal {
    fn from_kind(ring: &Ring, kind: IdealKind) -> Ideal {
        Ideal(Arc::new(IdealData {
            ring: ring.clone(),
            kind,
            elements: OnceLock::new(),
            division: Mutex::new(HashMap::new()),
        }))
    }

    pub fn generated(ring: &Ring, gens: Vec<Elem>) -> Result<Ideal> {
        if let Some(g) = gens.iter().find(|g| !ring.contains(g)) {
            return Err(Error::Mismatch(format!("{g:?} is not an element of {ring}")));
        }
        Ok(Ideal::from_kind(ring, IdealKind::Generated(gens)))
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::from_kind(ring, IdealKind::Generated(Vec::new()))
    }

    pub fn augmentation(ring: &Ring) -> Result<Ideal> {
        match ring.kind() {
            RingKind::Poly { .. } | RingKind::Quotient { .. } => {
                Ok(Ideal::from_kind(ring, IdealKind::Augmentation))
            }
            _ => Err(Error::Mismatch(format!("{ring} has no polynomial variable"))),
        }
    }

    pub fn semidirect_kernel(ring: &Ring) -> Result<Ideal> {
        match ring.kind() {
            RingKind::Semidirect { .. } => Ok(Ideal::from_kind(ring, IdealKind::SemidirectKernel)),
            _ => Err(Error::Mismatch(format!("{ring} is not a semidirect extension"))),
        }
    }

    /// Parses `0`, `aug`, `kernel`, or a `;`-separated list of generator literals.
    pub fn parse(ring: &Ring, spec: &str) -> Result<Ideal> {
        match spec.trim() {
            "0" | "" => Ok(Ideal::zero(ring)),
            "aug" => Ideal::augmentation(ring),
            "kernel" => Ideal::semidirect_kernel(ring),
            s => {
                let gens = s
                    .split(';')
                    .map(|g| ring.parse_elem(g))
                    .collect::<Result<Vec<_>>>()?;
                Ideal::generated(ring, gens)
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn kind(&self) -> &IdealKind {
        &self.0.kind
    }

    pub fn label(&self) -> String {
        match &self.0.kind {
            IdealKind::Generated(g) => {
                let parts: Vec<String> = g.iter().map(|x| self.0.ring.format(x)).collect();
                format!("({})", parts.join(";"))
            }
            IdealKind::Augmentation => {
                format!("({})", self.0.ring.variable().unwrap_or("X"))
            }
            IdealKind::SemidirectKernel => "X·R_a[X]".into(),
        }
    }

    /// All elements, for ideals of enumerable rings, in ring enumeration order.
    pub fn elements(&self) -> Option<Arc<Vec<Elem>>> {
        self.0
            .elements
            .get_or_init(|| self.enumerate().map(Arc::new))
            .clone()
    }

    fn enumerate(&self) -> Option<Vec<Elem>> {
        let ring = &self.0.ring;
        let els = ring.elements()?;
        let members: HashSet<Elem> = match &self.0.kind {
            IdealKind::Generated(gens) => {
                let mut span: HashSet<Elem> = HashSet::from([ring.zero()]);
                for g in gens {
                    let multiples: HashSet<Elem> = els.iter().map(|r| ring.mul(g, r)).collect();
                    let mut next = HashSet::with_capacity(span.len() * multiples.len());
                    for s in &span {
                        for m in &multiples {
                            next.insert(ring.add(s, m));
                        }
                    }
                    span = next;
                }
                span
            }
            _ => els
                .iter()
                .filter(|x| self.contains(x).unwrap_or(false))
                .cloned()
                .collect(),
        };
        Some(els.iter().filter(|x| members.contains(*x)).cloned().collect())
    }

    pub fn contains(&self, x: &Elem) -> Result<bool> {
        let ring = &self.0.ring;
        match &self.0.kind {
            IdealKind::Generated(gens) => Ok(lin_solve(ring, gens, x)?.is_some()),
            IdealKind::Augmentation => match x {
                Elem::Poly(c) => Ok(c.first().is_none_or(|c0| {
                    ring.coefficient_ring().unwrap().is_zero(c0)
                })),
                _ => Err(Error::Mismatch("not a polynomial".into())),
            },
            IdealKind::SemidirectKernel => match (ring.kind(), x) {
                (RingKind::Semidirect { base, .. }, Elem::Pair(r, _)) => Ok(base.is_zero(r)),
                _ => Err(Error::Mismatch("not a semidirect element".into())),
            },
        }
    }

    /// Coefficients `w` with `x = Σ g_k w_k`.
    pub fn certificate(&self, x: &Elem) -> Result<Option<Vec<Elem>>> {
        match &self.0.kind {
            IdealKind::Generated(gens) => lin_solve(&self.0.ring, gens, x),
            _ => Err(Error::Unsupported(
                "membership certificates need explicit generators".into(),
            )),
        }
    }

    /// Whether multiplication by `a` is a bijection of this ideal.
    pub fn is_uniquely_divisible(&self, a: &Elem) -> Result<bool> {
        match self.division_table(a) {
            Ok(_) => Ok(true),
            Err(Error::Divisibility(_)) => Ok(false),
            Err(Error::Unsupported(_)) => {
                let ring = &self.0.ring;
                if ring.is_domain() && !ring.is_zero(a) {
                    Ok(self.surjective_for_domain(a))
                } else {
                    Err(Error::Inconclusive(format!(
                        "unique divisibility by {} in {ring}",
                        ring.format(a)
                    )))
                }
            }
            Err(e) => Err(e),
        }
    }

    fn surjective_for_domain(&self, a: &Elem) -> bool {
        let ring = &self.0.ring;
        match (&self.0.kind, ring.kind()) {
            (IdealKind::SemidirectKernel, RingKind::Semidirect { lambda, loc, .. }) => match a {
                Elem::Pair(r, f) => {
                    matches!(f.as_ref(), Elem::Poly(c) if c.is_empty())
                        && loc.is_unit(&lambda.apply(r))
                }
                _ => false,
            },
            _ => ring.is_unit(a),
        }
    }

    fn division_table(&self, a: &Elem) -> Result<Arc<HashMap<Elem, Elem>>> {
        let mut cache = self.0.division.lock().expect("division cache poisoned");
        if let Some(entry) = cache.get(a) {
            return entry.clone().map_err(Error::Divisibility);
        }
        let ring = &self.0.ring;
        let Some(els) = self.elements() else {
            return Err(Error::Unsupported("ideal is not enumerable".into()));
        };
        let mut inv: HashMap<Elem, Elem> = HashMap::with_capacity(els.len());
        let mut outcome = Ok(());
        for x in els.iter() {
            let y = ring.mul(a, x);
            if let Some(prev) = inv.insert(y.clone(), x.clone()) {
                outcome = Err(format!(
                    "{}·{} = {}·{} in {}",
                    ring.format(a),
                    ring.format(&prev),
                    ring.format(a),
                    ring.format(x),
                    self.label()
                ));
                break;
            }
        }
        let entry = outcome.map(|_| Arc::new(inv));
        cache.insert(a.clone(), entry.clone());
        entry.map_err(Error::Divisibility)
    }

    /// The unique `m' ∈ I` with `a·m' = m`.
    pub fn unique_divide(&self, a: &Elem, m: &Elem) -> Result<Elem> {
        let ring = &self.0.ring;
        match self.division_table(a) {
            Ok(table) => {
                return table.get(m).cloned().ok_or_else(|| {
                    Error::Precondition(format!("{} is not in {}", ring.format(m), self.label()))
                })
            }
            Err(Error::Unsupported(_)) => {}
            Err(e) => return Err(e),
        }
        if !self.contains(m)? {
            return Err(Error::Precondition(format!(
                "{} is not in {}",
                ring.format(m),
                self.label()
            )));
        }
        if !ring.is_domain() {
            return Err(Error::Inconclusive(format!(
                "unique division in {ring} (infinite, not a domain)"
            )));
        }
        if ring.is_zero(a) {
            return Err(Error::Divisibility("division by zero".into()));
        }
        let q = ring.exact_div(m, a).ok_or_else(|| {
            Error::Divisibility(format!(
                "{} is not divisible by {}",
                ring.format(m),
                ring.format(a)
            ))
        })?;
        if !self.contains(&q)? {
            return Err(Error::Divisibility(format!(
                "{}/{} leaves {}",
                ring.format(m),
                ring.format(a),
                self.label()
            )));
        }
        Ok(q)
    }
}

/// Solves `Σ u_k w_k = b`. Finite rings return the lexicographically least
/// solution in enumeration order (first coordinate most significant).
pub fn lin_solve(ring: &Ring, u: &[Elem], b: &Elem) -> Result<Option<Vec<Elem>>> {
    if u.is_empty() {
        return Ok(if ring.is_zero(b) { Some(Vec::new()) } else { None });
    }
    if let Some(size) = ring.size() {
        if size <= EXHAUSTIVE_SOLVE_LIMIT {
            if let Some(els) = ring.elements() {
                return Ok(exhaustive_solve(ring, &els, u, b));
            }
        }
    }
    match ring.kind() {
        RingKind::Integers => Ok(euclid_solve(u, b, None)),
        RingKind::Modular(n) => Ok(euclid_solve(u, b, Some(*n))),
        _ => {
            if ring.is_zero(b) {
                return Ok(Some(vec![ring.zero(); u.len()]));
            }
            for (k, uk) in u.iter().enumerate() {
                if let Some(inv) = ring.unit_inverse(uk) {
                    let mut w = vec![ring.zero(); u.len()];
                    w[k] = ring.mul(&inv, b);
                    return Ok(Some(w));
                }
            }
            Err(Error::Inconclusive(format!(
                "linear solving over {ring} without a unit coefficient"
            )))
        }
    }
}

fn exhaustive_solve(ring: &Ring, els: &[Elem], u: &[Elem], b: &Elem) -> Option<Vec<Elem>> {
    let n = u.len();
    // reach[k]: values of Σ_{j≥k} u_j w_j
    let mut reach: Vec<HashSet<Elem>> = vec![HashSet::new(); n + 1];
    reach[n].insert(ring.zero());
    for k in (0..n).rev() {
        let multiples: HashSet<Elem> = els.iter().map(|r| ring.mul(&u[k], r)).collect();
        let mut next = HashSet::new();
        for m in &multiples {
            for s in &reach[k + 1] {
                next.insert(ring.add(m, s));
            }
        }
        reach[k] = next;
    }
    if !reach[0].contains(b) {
        return None;
    }
    let mut target = b.clone();
    let mut w = Vec::with_capacity(n);
    for k in 0..n {
        let r = els
            .iter()
            .find(|r| reach[k + 1].contains(&ring.sub(&target, &ring.mul(&u[k], r))))
            .expect("reachability guarantees a choice");
        target = ring.sub(&target, &ring.mul(&u[k], r));
        w.push(r.clone());
    }
    Some(w)
}

fn euclid_solve(u: &[Elem], b: &Elem, modulus: Option<u64>) -> Option<Vec<Elem>> {
    let to_int = |x: &Elem| match x {
        Elem::Int(v) => v.clone(),
        Elem::Mod(v) => BigInt::from(*v),
        _ => unreachable!(),
    };
    let mut vals: Vec<BigInt> = u.iter().map(to_int).collect();
    if let Some(n) = modulus {
        vals.push(BigInt::from(n));
    }
    // running gcd g = Σ vals_k c_k
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); vals.len()];
    for (k, v) in vals.iter().enumerate() {
        let e = g.extended_gcd(v);
        for c in coeffs.iter_mut().take(k) {
            *c *= &e.x;
        }
        coeffs[k] = e.y.clone();
        g = e.gcd;
    }
    let target = to_int(b);
    if g.is_zero() {
        return if target.is_zero() {
            Some(u.iter().map(|x| reduce(x, BigInt::zero(), modulus)).collect())
        } else {
            None
        };
    }
    let (q, r) = target.div_rem(&g);
    if !r.is_zero() {
        return None;
    }
    Some(
        u.iter()
            .zip(coeffs)
            .map(|(x, c)| reduce(x, c * &q, modulus))
            .collect(),
    )
}

fn reduce(like: &Elem, v: BigInt, modulus: Option<u64>) -> Elem {
    match (like, modulus) {
        (Elem::Mod(_), Some(n)) => {
            let n = BigInt::from(n);
            let r = v.mod_floor(&n);
            Elem::Mod(u64::try_from(r.abs()).expect("residue fits"))
        }
        _ => Elem::Int(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Ring {
        Ring::parse(s).unwrap()
    }

    fn m(v: &[u64]) -> Vec<Elem> {
        v.iter().map(|x| Elem::Mod(*x)).collect()
    }

    #[test]
    fn lin_solve_lexicographically_least() {
        let z6 = r("z/6");
        assert_eq!(lin_solve(&z6, &m(&[2, 3]), &Elem::Mod(1)).unwrap(), Some(m(&[2, 1])));
        assert_eq!(lin_solve(&z6, &m(&[2, 4]), &Elem::Mod(1)).unwrap(), None);
        assert_eq!(lin_solve(&z6, &m(&[1, 0]), &Elem::Mod(1)).unwrap(), Some(m(&[1, 0])));
    }

    #[test]
    fn lin_solve_over_integers() {
        let z = r("z");
        let u: Vec<Elem> = [6, 10, 15].iter().map(|x| Elem::Int(BigInt::from(*x))).collect();
        let w = lin_solve(&z, &u, &Elem::Int(BigInt::from(7))).unwrap().unwrap();
        let s = u.iter().zip(&w).fold(z.zero(), |acc, (a, b)| z.add(&acc, &z.mul(a, b)));
        assert_eq!(s, Elem::Int(BigInt::from(7)));
        let u2: Vec<Elem> = [4, 6].iter().map(|x| Elem::Int(BigInt::from(*x))).collect();
        assert_eq!(lin_solve(&z, &u2, &Elem::Int(BigInt::from(3))).unwrap(), None);
    }

    #[test]
    fn unique_divide_examples() {
        let b = r("prod(f2,f3)");
        let i = Ideal::generated(&b, vec![b.parse_elem("(0,1)").unwrap()]).unwrap();
        let a = b.parse_elem("(0,1)").unwrap();
        let m = b.parse_elem("(0,2)").unwrap();
        assert_eq!(i.unique_divide(&a, &m).unwrap(), m);
        assert_eq!(i.unique_divide(&a, &b.zero()).unwrap(), b.zero());

        let z6 = r("z/6");
        let i3 = Ideal::generated(&z6, vec![Elem::Mod(3)]).unwrap();
        assert!(matches!(
            i3.unique_divide(&Elem::Mod(2), &Elem::Mod(3)),
            Err(Error::Divisibility(_))
        ));
    }

    #[test]
    fn semidirect_kernel_divides_by_two() {
        let s = r("semi(z,2)");
        let i = Ideal::semidirect_kernel(&s).unwrap();
        let two = s.from_int(2);
        let m = s.parse_elem("(0,[0,1])").unwrap();
        let q = i.unique_divide(&two, &m).unwrap();
        assert_eq!(s.format(&q), "(0,[0,1/2])");
        assert!(i.is_uniquely_divisible(&two).unwrap());
    }
}
