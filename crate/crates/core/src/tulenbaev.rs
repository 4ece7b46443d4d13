//! Tulenbaev's elements `X_{u,v}(a)`, `Y_{u,v}(a)`, the identity
//! `X_{u,vb⁴r}(b) = Y_{ub⁴r,v}(b)` with both commutator evaluations, and the
//! lifting map `T : St*(n, B_a, I) → St(n, B)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{transvection, RMatrix, RVector};
use crate::ring::{lin_solve, localization, Elem, Ideal, Ring, RingKind, RingMorphism};
use crate::roots::{Family, RootDatum};
use crate::vdk::{orthogonal_terms, x_small, vector_sum};
use crate::word::{tiered_equal, ExactOracle, StWord, Verdict};

/// A decomposition witnessing `v ∈ D(u)` (or, mirrored, `u ∈ D(v)`) together
/// with the parameter `a` and its membership certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TulenbaevDatum {
    pub u: RVector,
    pub v: RVector,
    pub a: Elem,
    /// Summands of `v` (of `u` when `mirrored`).
    pub terms: Vec<RVector>,
    /// `c` with `cᵗu = a` (`cᵗv = a` when `mirrored`).
    pub a_membership: RVector,
    pub mirrored: bool,
}

impl TulenbaevDatum {
    /// Datum for `X_{u,v}(a)` with the given summands of `v`.
    pub fn x(u: RVector, v: RVector, a: Elem, terms: Vec<RVector>, cert: RVector) -> Result<Self> {
        let d = TulenbaevDatum {
            u,
            v,
            a,
            terms,
            a_membership: cert,
            mirrored: false,
        };
        d.validate()?;
        Ok(d)
    }

    /// Datum for `Y_{u,v}(a)` with the given summands of `u`.
    pub fn y(u: RVector, v: RVector, a: Elem, terms: Vec<RVector>, cert: RVector) -> Result<Self> {
        let d = TulenbaevDatum {
            u,
            v,
            a,
            terms,
            a_membership: cert,
            mirrored: true,
        };
        d.validate()?;
        Ok(d)
    }

    /// The vector that stays whole.
    pub fn fixed(&self) -> &RVector {
        if self.mirrored {
            &self.v
        } else {
            &self.u
        }
    }

    /// The vector that is decomposed.
    pub fn moving(&self) -> &RVector {
        if self.mirrored {
            &self.u
        } else {
            &self.v
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fixed = self.fixed();
        let r = &fixed.ring;
        let n = fixed.len();
        let total = vector_sum(r, n, &self.terms)?;
        if total != *self.moving() {
            return Err(Error::Precondition(format!(
                "summands add up to {}, not {}",
                total.format(),
                self.moving().format()
            )));
        }
        for t in &self.terms {
            if !r.is_zero(&t.dot(fixed)?) {
                return Err(Error::Precondition(format!(
                    "summand {} is not orthogonal to {}",
                    t.format(),
                    fixed.format()
                )));
            }
            if t.zero_count() < 2 {
                return Err(Error::Precondition(format!(
                    "summand {} has fewer than two zero coordinates",
                    t.format()
                )));
            }
        }
        let m = self.a_membership.dot(fixed)?;
        if m != self.a {
            return Err(Error::MissingCertificate(format!(
                "{}ᵗ{} = {}, expected {}",
                self.a_membership.format(),
                fixed.format(),
                r.format(&m),
                r.format(&self.a)
            )));
        }
        Ok(())
    }
}

fn scaled_terms<'a>(terms: &'a [RVector], a: &Elem) -> impl Iterator<Item = RVector> + 'a {
    let a = a.clone();
    terms.iter().map(move |t| t.scale(&a)).filter(|t| !t.is_zero())
}

/// `X_{u,v}(a) = ∏ x(u, v_k a)`.
pub fn x_tul(system: &Arc<RootDatum>, d: &TulenbaevDatum) -> Result<StWord> {
    if d.mirrored {
        return Err(Error::Precondition("mirrored datum passed to X".into()));
    }
    d.validate()?;
    let mut out = StWord::identity(system, &d.u.ring);
    for t in scaled_terms(&d.terms, &d.a) {
        out = out.mul(&x_small(system, &d.u, &t)?)?;
    }
    Ok(out)
}

/// `Y_{u,v}(a) = ∏ x(u_k a, v)`.
pub fn y_tul(system: &Arc<RootDatum>, d: &TulenbaevDatum) -> Result<StWord> {
    if !d.mirrored {
        return Err(Error::Precondition("unmirrored datum passed to Y".into()));
    }
    d.validate()?;
    let mut out = StWord::identity(system, &d.v.ring);
    for t in scaled_terms(&d.terms, &d.a) {
        out = out.mul(&x_small(system, &t, &d.v)?)?;
    }
    Ok(out)
}

fn membership(fixed: &RVector, a: &Elem) -> Result<RVector> {
    let r = &fixed.ring;
    lin_solve(r, &fixed.entries, a)?
        .map(|c| RVector::new(r, c))
        .ok_or_else(|| {
            Error::Precondition(format!("{} is not in I({})", r.format(a), fixed.format()))
        })
}

/// Some decomposition of `moving` into summands orthogonal to `fixed` with at
/// least two zero coordinates each.
pub fn find_decomposition(fixed: &RVector, moving: &RVector) -> Result<Vec<RVector>> {
    let r = &fixed.ring;
    let n = fixed.len();
    if moving.is_zero() {
        return Ok(Vec::new());
    }
    if !r.is_zero(&fixed.dot(moving)?) {
        return Err(Error::Precondition(format!(
            "{} is not orthogonal to {}",
            moving.format(),
            fixed.format()
        )));
    }
    if moving.zero_count() >= 2 {
        return Ok(vec![moving.clone()]);
    }
    if fixed.is_zero() && n >= 3 {
        return Ok((0..n)
            .filter(|&i| !r.is_zero(&moving.entries[i]))
            .map(|i| {
                let mut t = RVector::zero(r, n);
                t.entries[i] = moving.entries[i].clone();
                t
            })
            .collect());
    }
    if n >= 4 {
        if let Some(w) = lin_solve(r, &fixed.entries, &r.one())? {
            let w = RVector::new(r, w);
            return Ok(orthogonal_terms(moving, fixed, &w)?
                .into_iter()
                .filter(|t| !t.is_zero())
                .collect());
        }
    }
    Err(Error::Inconclusive(format!(
        "no decomposition of {} over {} found",
        moving.format(),
        fixed.format()
    )))
}

/// Datum for `X_{u,v}(a)` with certificates found by search.
pub fn x_element(u: &RVector, v: &RVector, a: &Elem) -> Result<TulenbaevDatum> {
    let cert = membership(u, a)?;
    TulenbaevDatum::x(u.clone(), v.clone(), a.clone(), find_decomposition(u, v)?, cert)
}

/// Datum for `Y_{u,v}(a)` with certificates found by search.
pub fn y_element(u: &RVector, v: &RVector, a: &Elem) -> Result<TulenbaevDatum> {
    let cert = membership(v, a)?;
    TulenbaevDatum::y(u.clone(), v.clone(), a.clone(), find_decomposition(v, u)?, cert)
}

fn divide_vector(v: &RVector, b: &Elem, ideal: Option<&Ideal>) -> Result<RVector> {
    let r = &v.ring;
    let mut out = Vec::with_capacity(v.len());
    for x in &v.entries {
        let q = match ideal {
            Some(i) => i.unique_divide(b, x)?,
            None => r.exact_div(x, b).ok_or_else(|| {
                Error::Divisibility(format!("{} is not divisible by {}", r.format(x), r.format(b)))
            })?,
        };
        out.push(q);
    }
    Ok(RVector::new(r, out))
}

/// Splits `moving = moving'·b` along a certificate `wᵗfixed = b`.
fn decompose_by_multiple(
    fixed: &RVector,
    moving: &RVector,
    b: &Elem,
    w: &RVector,
    ideal: Option<&Ideal>,
) -> Result<Vec<RVector>> {
    let r = &fixed.ring;
    if w.dot(fixed)? != *b {
        return Err(Error::MissingCertificate(format!(
            "{}ᵗ{} ≠ {}",
            w.format(),
            fixed.format(),
            r.format(b)
        )));
    }
    let quotient = divide_vector(moving, b, ideal)?;
    if !r.is_zero(&quotient.dot(fixed)?) {
        return Err(Error::Divisibility(format!(
            "{}/{} is not orthogonal to {}",
            moving.format(),
            r.format(b),
            fixed.format()
        )));
    }
    Ok(orthogonal_terms(&quotient, fixed, w)?
        .into_iter()
        .filter(|t| !t.is_zero())
        .collect())
}

/// `v ∈ D(u)` through `a^k ∈ I(u)`: writes `v = v'a^k` and decomposes with a
/// certificate `wᵗu = a^k`. The datum's parameter is `a^k`.
#[allow(non_snake_case)]
pub fn decompose_in_D(
    u: &RVector,
    v: &RVector,
    k: u32,
    a: &Elem,
    ideal: Option<&Ideal>,
) -> Result<TulenbaevDatum> {
    let r = &u.ring;
    let b = r.pow(a, k as u64);
    let w = membership(u, &b)?;
    let terms = decompose_by_multiple(u, v, &b, &w, ideal)?;
    TulenbaevDatum::x(u.clone(), v.clone(), b, terms, w)
}

/// Mirrored form of [`decompose_in_D`]: `u ∈ D(v)` through `a^k ∈ I(v)`.
#[allow(non_snake_case)]
pub fn decompose_in_D_mirrored(
    u: &RVector,
    v: &RVector,
    k: u32,
    a: &Elem,
    ideal: Option<&Ideal>,
) -> Result<TulenbaevDatum> {
    let r = &v.ring;
    let b = r.pow(a, k as u64);
    let w = membership(v, &b)?;
    let terms = decompose_by_multiple(v, u, &b, &w, ideal)?;
    TulenbaevDatum::y(u.clone(), v.clone(), b, terms, w)
}

/// Inputs of the identity `X_{u,vb⁴r}(b) = Y_{ub⁴r,v}(b)`.
#[derive(Clone, Debug)]
pub struct XeqYInstance {
    pub x: RVector,
    pub y: RVector,
    pub u: RVector,
    pub v: RVector,
    pub b: Elem,
    pub r: Elem,
}

impl XeqYInstance {
    /// Checks `uᵗv = 0, xᵗy = b, xᵗv = 0, uᵗy = 0, xᵗu = 0, yᵗv = 0`.
    pub fn check_hypotheses(&self) -> Result<()> {
        let ring = &self.u.ring;
        let zero = ring.zero();
        let conditions = [
            ("uᵗv", self.u.dot(&self.v)?, &zero),
            ("xᵗy", self.x.dot(&self.y)?, &self.b),
            ("xᵗv", self.x.dot(&self.v)?, &zero),
            ("uᵗy", self.u.dot(&self.y)?, &zero),
            ("xᵗu", self.x.dot(&self.u)?, &zero),
            ("yᵗv", self.y.dot(&self.v)?, &zero),
        ];
        for (name, got, want) in conditions {
            if got != *want {
                return Err(Error::Precondition(format!(
                    "{name} = {}, expected {}",
                    ring.format(&got),
                    ring.format(want)
                )));
            }
        }
        Ok(())
    }
}

/// The words built for one instance of the identity.
#[derive(Clone, Debug)]
pub struct XeqYWords {
    pub lhs: StWord,
    pub rhs: StWord,
    /// `[Y_{−xbr,v}(b), X_{u,yb}(b)]`.
    pub commutator: StWord,
    /// `X_{t(xb²r,−v)u, t(xb²r,−v)*yb}(b) · X_{u,−yb}(b)`.
    pub path_x: StWord,
    /// `Y_{−xbr,v}(b) · Y_{t(u,yb²)xbr, t(u,yb²)*v}(b)`.
    pub path_y: StWord,
}

pub fn xeqy_words(system: &Arc<RootDatum>, inst: &XeqYInstance) -> Result<XeqYWords> {
    inst.check_hypotheses()?;
    let ring = &inst.u.ring;
    let b = &inst.b;
    let (u, v, x, y) = (&inst.u, &inst.v, &inst.x, &inst.y);
    let wu = membership(u, b)?;
    let wv = membership(v, b)?;
    let b2 = ring.mul(b, b);
    let b3 = ring.mul(&b2, b);
    let b3r = ring.mul(&b3, &inst.r);

    let x_of = |fixed: &RVector, quotient: &RVector, cert: &RVector| -> Result<StWord> {
        let terms: Vec<RVector> = orthogonal_terms(quotient, fixed, cert)?
            .into_iter()
            .filter(|t| !t.is_zero())
            .collect();
        let moving = vector_sum(ring, fixed.len(), &terms)?;
        x_tul(system, &TulenbaevDatum::x(fixed.clone(), moving, b.clone(), terms, cert.clone())?)
    };
    let y_of = |fixed: &RVector, quotient: &RVector, cert: &RVector| -> Result<StWord> {
        let terms: Vec<RVector> = orthogonal_terms(quotient, fixed, cert)?
            .into_iter()
            .filter(|t| !t.is_zero())
            .collect();
        let moving = vector_sum(ring, fixed.len(), &terms)?;
        y_tul(system, &TulenbaevDatum::y(moving, fixed.clone(), b.clone(), terms, cert.clone())?)
    };

    // second arguments are passed divided by b; each summand set adds up to quotient·b
    let lhs = x_of(u, &v.scale(&b3r), &wu)?;
    let rhs = y_of(v, &u.scale(&b3r), &wv)?;
    let xr = x.scale(&inst.r);
    let left = y_of(v, &xr.neg(), &wv)?;
    let right = x_of(u, y, &wu)?;
    let commutator = StWord::commutator(&left, &right)?;

    let g1 = transvection(&x.scale(&ring.mul(&b2, &inst.r)), &v.neg())?;
    let u1 = g1.mul_vec(u)?;
    let y1 = g1.contragredient()?.mul_vec(y)?;
    let path_x = x_of(&u1, &y1, &wu)?.mul(&x_of(u, &y.neg(), &wu)?)?;

    let g2 = transvection(u, &y.scale(&b2))?;
    let x2 = g2.mul_vec(&xr)?;
    let v2 = g2.contragredient()?.mul_vec(v)?;
    let path_y = left.mul(&y_of(&v2, &x2, &wv)?)?;

    Ok(XeqYWords {
        lhs,
        rhs,
        commutator,
        path_x,
        path_y,
    })
}

/// Tiered verdicts for one instance of the identity.
#[derive(Clone, Copy, Debug)]
pub struct XeqYVerdict {
    pub sides: Verdict,
    pub commutator_path_x: Verdict,
    pub commutator_path_y: Verdict,
    pub path_x_lhs: Verdict,
    pub path_y_rhs: Verdict,
}

impl XeqYVerdict {
    pub fn all_equal(&self) -> bool {
        [
            self.sides,
            self.commutator_path_x,
            self.commutator_path_y,
            self.path_x_lhs,
            self.path_y_rhs,
        ]
        .iter()
        .all(|v| v.equal)
    }
}

pub fn xeqy_check(
    system: &Arc<RootDatum>,
    inst: &XeqYInstance,
    oracle: Option<&dyn ExactOracle>,
) -> Result<XeqYVerdict> {
    let w = xeqy_words(system, inst)?;
    Ok(XeqYVerdict {
        sides: tiered_equal(&w.lhs, &w.rhs, oracle)?,
        commutator_path_x: tiered_equal(&w.commutator, &w.path_x, oracle)?,
        commutator_path_y: tiered_equal(&w.commutator, &w.path_y, oracle)?,
        path_x_lhs: tiered_equal(&w.path_x, &w.lhs, oracle)?,
        path_y_rhs: tiered_equal(&w.path_y, &w.rhs, oracle)?,
    })
}

/// Default bound on the exponent `m` scanned by the lift search.
pub const DEFAULT_LIFT_CAP: u32 = 8;

/// A generator of `St*(n, B_a, I)`. The nice vector lives over `B_a` and comes
/// with a word `M` over `B_a` such that it is the first column of `φ(M)`; the
/// other vector has entries in `I ⊆ B`.
#[derive(Clone, Debug)]
pub struct LocalizedGen {
    pub is_f: bool,
    pub nice: RVector,
    pub ideal_part: RVector,
    pub orbit: StWord,
}

impl LocalizedGen {
    pub fn label(&self) -> String {
        if self.is_f {
            format!("F({}, {})", self.nice.format(), self.ideal_part.format())
        } else {
            format!("S({}, {})", self.ideal_part.format(), self.nice.format())
        }
    }
}

/// The data of the lifting map for `(B, a, I)`.
#[derive(Clone)]
pub struct TMapContext {
    pub ring: Ring,
    pub a: Elem,
    pub ideal: Ideal,
    pub loc: Ring,
    pub lambda: RingMorphism,
    pub system: Arc<RootDatum>,
    pub local_system: Arc<RootDatum>,
    pub cap: u32,
}

/// `T(gen)` with the lift data that produced it.
#[derive(Clone, Debug)]
pub struct TImage {
    pub word: StWord,
    pub m: u32,
    pub lift: RVector,
    pub lift_cert: RVector,
    pub datum: TulenbaevDatum,
}

/// Bound on the number of candidate lift vectors tried for one exponent.
const LIFT_SEARCH_BUDGET: usize = 1 << 20;

impl TMapContext {
    pub fn new(ring: &Ring, a: &Elem, ideal: &Ideal, n: usize, cap: u32) -> Result<Self> {
        if n < 4 {
            return Err(Error::Precondition(format!("n = {n} < 4")));
        }
        if !ideal.is_uniquely_divisible(a)? {
            return Err(Error::Divisibility(format!(
                "{} is not uniquely {}-divisible",
                ideal.label(),
                ring.format(a)
            )));
        }
        let (loc, lambda) = localization(ring, a)?;
        let system = RootDatum::build(Family::A, n - 1)?;
        Ok(TMapContext {
            ring: ring.clone(),
            a: a.clone(),
            ideal: ideal.clone(),
            loc,
            lambda,
            local_system: system.clone(),
            system,
            cap,
        })
    }

    pub fn n(&self) -> usize {
        self.system.rank() + 1
    }

    pub fn localize(&self, v: &RVector) -> RVector {
        v.map(&self.lambda)
    }

    /// The unique `x ∈ I` with `λ(x) = y`.
    pub fn unlocalize_ideal(&self, y: &Elem) -> Result<Elem> {
        if let Some(els) = self.ideal.elements() {
            return els
                .iter()
                .find(|x| self.lambda.apply(x) == *y)
                .cloned()
                .ok_or_else(|| {
                    Error::Precondition(format!("{} is not in λ(I)", self.loc.format(y)))
                });
        }
        match (self.loc.kind(), y) {
            (RingKind::LocDomain { .. }, Elem::Frac(x, k)) => {
                let ak = self.ring.pow(&self.a, *k as u64);
                self.ideal.unique_divide(&ak, x)
            }
            _ => Err(Error::Inconclusive(format!(
                "cannot pull {} back to {}",
                self.loc.format(y),
                self.ideal.label()
            ))),
        }
    }

    /// All `x ∈ B` with `λ(x) = y·a^m`.
    fn preimages(&self, y: &Elem, m: u32) -> Result<Vec<Elem>> {
        let la = self.lambda.apply(&self.a);
        let target = self.loc.mul(y, &self.loc.pow(&la, m as u64));
        if let Some(els) = self.ring.elements() {
            return Ok(els
                .iter()
                .filter(|x| self.lambda.apply(x) == target)
                .cloned()
                .collect());
        }
        match (self.loc.kind(), &target) {
            (RingKind::LocDomain { .. }, Elem::Frac(x, 0)) => Ok(vec![(**x).clone()]),
            (RingKind::LocDomain { .. }, Elem::Frac(..)) => Ok(Vec::new()),
            _ => Err(Error::Inconclusive(format!("no lifting procedure for {}", self.loc))),
        }
    }

    fn lift_candidates(&self, v: &RVector, m: u32) -> Result<Option<Vec<Vec<Elem>>>> {
        let mut out = Vec::with_capacity(v.len());
        for y in &v.entries {
            let c = self.preimages(y, m)?;
            if c.is_empty() {
                return Ok(None);
            }
            out.push(c);
        }
        Ok(Some(out))
    }

    /// Least `m ≤ cap` with lifts `λ(ñ) = nice·a^m`, `λ(c̃) = cert·a^m`,
    /// `ñᵗ other = 0` and `c̃ᵗñ = a^{2m}`.
    fn find_lifts(
        &self,
        nice: &RVector,
        cert: &RVector,
        other: &RVector,
    ) -> Result<(u32, RVector, RVector)> {
        let r = &self.ring;
        for m in 0..=self.cap {
            let Some(nc) = self.lift_candidates(nice, m)? else { continue };
            let Some(cc) = self.lift_candidates(cert, m)? else { continue };
            let a2m = r.pow(&self.a, 2 * m as u64);
            let nice_lifts = cartesian(&nc, LIFT_SEARCH_BUDGET)?;
            let cert_lifts = cartesian(&cc, LIFT_SEARCH_BUDGET)?;
            for nl in &nice_lifts {
                let nl = RVector::new(r, nl.clone());
                if !r.is_zero(&nl.dot(other)?) {
                    continue;
                }
                for cl in &cert_lifts {
                    let cl = RVector::new(r, cl.clone());
                    if cl.dot(&nl)? == a2m {
                        return Ok((m, nl, cl));
                    }
                }
            }
        }
        Err(Error::Inconclusive(format!(
            "no lift of {} found with m ≤ {}",
            nice.format(),
            self.cap
        )))
    }

    /// `T(F(u, v)) = X_{ũ, v/a^{3m}}(a^{2m})`, `T(S(u, v)) = Y_{u/a^{3m}, ṽ}(a^{2m})`.
    pub fn t_map(&self, gen: &LocalizedGen) -> Result<TImage> {
        let r = &self.ring;
        let phi_m = gen.orbit.phi()?;
        if phi_m.column(0) != gen.nice {
            return Err(Error::MissingCertificate(format!(
                "orbit word does not carry e_1 to {}",
                gen.nice.format()
            )));
        }
        let cert = gen.orbit.phi_contragredient()?.column(0);
        let (m, lift, lift_cert) = self.find_lifts(&gen.nice, &cert, &gen.ideal_part)?;
        let a2m = r.pow(&self.a, 2 * m as u64);
        let a3m = r.pow(&self.a, 3 * m as u64);
        let a5m = r.pow(&self.a, 5 * m as u64);
        let moving = divide_vector(&gen.ideal_part, &a3m, Some(&self.ideal))?;
        let quotient = divide_vector(&gen.ideal_part, &a5m, Some(&self.ideal))?;
        let terms: Vec<RVector> = orthogonal_terms(&quotient, &lift, &lift_cert)?
            .into_iter()
            .filter(|t| !t.is_zero())
            .collect();
        let (datum, word) = if gen.is_f {
            let d = TulenbaevDatum::x(lift.clone(), moving, a2m, terms, lift_cert.clone())?;
            let w = x_tul(&self.system, &d)?;
            (d, w)
        } else {
            let d = TulenbaevDatum::y(moving, lift.clone(), a2m, terms, lift_cert.clone())?;
            let w = y_tul(&self.system, &d)?;
            (d, w)
        };
        Ok(TImage {
            word,
            m,
            lift,
            lift_cert,
            datum,
        })
    }

    /// `t(u, v)` over `B_a` for the generator.
    pub fn target_matrix(&self, gen: &LocalizedGen) -> Result<RMatrix> {
        let other = self.localize(&gen.ideal_part);
        if gen.is_f {
            transvection(&gen.nice, &other)
        } else {
            transvection(&other, &gen.nice)
        }
    }

    /// Whether `λ_a(φ_B(T(gen))) = t(u, v)` over `B_a`.
    pub fn diagram_commutes(&self, gen: &LocalizedGen) -> Result<bool> {
        let image = self.t_map(gen)?;
        Ok(image.word.phi()?.map(&self.lambda) == self.target_matrix(gen)?)
    }
}

fn cartesian(choices: &[Vec<Elem>], budget: usize) -> Result<Vec<Vec<Elem>>> {
    let total = choices
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
        .filter(|&t| t <= budget)
        .ok_or_else(|| Error::CapExceeded(format!("more than {budget} lift candidates")))?;
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; choices.len()];
    for _ in 0..total {
        out.push(idx.iter().zip(choices).map(|(&i, c)| c[i].clone()).collect());
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_in_d_example() {
        let r = Ring::parse("z/6").unwrap();
        let u = RVector::from_ints(&r, &[2, 3, 0, 1]);
        let v = RVector::from_ints(&r, &[3, 0, 5, 0]);
        let d = decompose_in_D(&u, &v, 0, &r.one(), None).unwrap();
        assert_eq!(vector_sum(&r, 4, &d.terms).unwrap(), v);
        let bad = RVector::from_ints(&r, &[2, 4, 0, 0]);
        assert!(decompose_in_D(&bad, &v, 0, &r.one(), None).is_err());
        let empty = decompose_in_D(&u, &RVector::zero(&r, 4), 0, &r.one(), None).unwrap();
        assert!(empty.terms.is_empty());
    }

    #[test]
    fn x_tul_projects_to_transvection() {
        let sys = RootDatum::parse("A3").unwrap();
        let r = Ring::parse("z/6").unwrap();
        let u = RVector::from_ints(&r, &[2, 3, 0, 0]);
        let v = RVector::from_ints(&r, &[3, 4, 1, 5]);
        assert!(r.is_zero(&u.dot(&v).unwrap()));
        let a = Elem::Mod(4);
        let d = x_element(&u, &v, &a).unwrap();
        let w = x_tul(&sys, &d).unwrap();
        assert_eq!(w.phi().unwrap(), transvection(&u, &v.scale(&a)).unwrap());
        let dy = y_element(&v, &u, &a).unwrap();
        let wy = y_tul(&sys, &dy).unwrap();
        assert_eq!(wy.phi().unwrap(), transvection(&v.scale(&a), &u).unwrap());
    }

    #[test]
    fn xeqy_matrix_tier() {
        let sys = RootDatum::parse("A3").unwrap();
        let r = Ring::parse("z/6").unwrap();
        let inst = XeqYInstance {
            x: RVector::basis(&r, 4, 2),
            y: RVector::basis(&r, 4, 2),
            u: RVector::basis(&r, 4, 0),
            v: RVector::basis(&r, 4, 1),
            b: r.one(),
            r: Elem::Mod(5),
        };
        let verdict = xeqy_check(&sys, &inst, None).unwrap();
        assert!(verdict.all_equal(), "{verdict:?}");
        let mut bad = inst.clone();
        bad.y = RVector::basis(&r, 4, 1);
        assert!(xeqy_check(&sys, &bad, None).is_err());
    }

    #[test]
    fn t_map_with_invertible_a() {
        let r = Ring::parse("z/5").unwrap();
        let ideal = Ideal::generated(&r, vec![r.one()]).unwrap();
        let ctx = TMapContext::new(&r, &Elem::Mod(2), &ideal, 4, DEFAULT_LIFT_CAP).unwrap();
        let orbit = StWord::x(&ctx.local_system, &ctx.loc, 1, 0, ctx.lambda.apply(&Elem::Mod(3)))
            .unwrap();
        let nice = orbit.phi().unwrap().column(0);
        let gen = LocalizedGen {
            is_f: true,
            nice: nice.clone(),
            ideal_part: RVector::from_ints(&r, &[0, 0, 1, 4]),
            orbit,
        };
        let image = ctx.t_map(&gen).unwrap();
        assert_eq!(image.m, 0);
        assert!(ctx.diagram_commutes(&gen).unwrap());
    }
}
