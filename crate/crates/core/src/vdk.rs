//! The elements `x(u, v)`, van der Kallen's generators `X(u, v)`, their
//! transposed counterparts `Y(u, v)`, and the map `ι` on the generators
//! `F(u, v)`, `S(u, v)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::RVector;
use crate::ring::Elem;
use crate::roots::{Family, RootDatum};
use crate::word::StWord;

/// Which coordinate a construction of `x(u, v)` pivots on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pivot {
    /// `v_i = 0`: direct construction.
    V(usize),
    /// `u_i = 0`: transpose of the construction for `(v, u)`.
    U(usize),
}

fn type_a_rank(system: &RootDatum, n: usize) -> Result<()> {
    if system.family() != Family::A || system.rank() + 1 != n {
        return Err(Error::Mismatch(format!(
            "vectors of length {n} need A{}, got {}",
            n.saturating_sub(1),
            system.name()
        )));
    }
    Ok(())
}

fn require_orthogonal(u: &RVector, v: &RVector) -> Result<()> {
    let d = u.dot(v)?;
    if !u.ring.is_zero(&d) {
        return Err(Error::Precondition(format!(
            "uᵗv = {} for u = {}, v = {}",
            u.ring.format(&d),
            u.format(),
            v.format()
        )));
    }
    Ok(())
}

/// Every pivot admissible for `(u, v)`: first the `v`-zeros, then the `u`-zeros.
pub fn pivots(u: &RVector, v: &RVector) -> Vec<Pivot> {
    let r = &u.ring;
    let mut out: Vec<Pivot> = (0..v.len()).filter(|&i| r.is_zero(&v.entries[i])).map(Pivot::V).collect();
    out.extend((0..u.len()).filter(|&i| r.is_zero(&u.entries[i])).map(Pivot::U));
    out
}

/// `x(u, v)` built on a chosen pivot.
///
/// For `v_i = 0` this is `∏_{j≠i} x_{ij}(u_i v_j) · [∏_{j≠i} x_{ji}(u_j), ∏_{j≠i} x_{ij}(v_j)]`.
pub fn x_small_at(system: &Arc<RootDatum>, u: &RVector, v: &RVector, pivot: Pivot) -> Result<StWord> {
    let n = u.len();
    type_a_rank(system, n)?;
    if v.len() != n {
        return Err(Error::Mismatch("u and v differ in length".into()));
    }
    require_orthogonal(u, v)?;
    let r = &u.ring;
    match pivot {
        Pivot::V(i) => {
            if !r.is_zero(&v.entries[i]) {
                return Err(Error::Precondition(format!("v_{} is not zero", i + 1)));
            }
            let mut head = StWord::identity(system, r);
            let mut a = StWord::identity(system, r);
            let mut b = StWord::identity(system, r);
            for j in (0..n).filter(|&j| j != i) {
                head = head.mul(&StWord::x(system, r, i, j, r.mul(&u.entries[i], &v.entries[j]))?)?;
                a = a.mul(&StWord::x(system, r, j, i, u.entries[j].clone())?)?;
                b = b.mul(&StWord::x(system, r, i, j, v.entries[j].clone())?)?;
            }
            head.mul(&StWord::commutator(&a, &b)?)
        }
        Pivot::U(i) => {
            if !r.is_zero(&u.entries[i]) {
                return Err(Error::Precondition(format!("u_{} is not zero", i + 1)));
            }
            x_small_at(system, v, u, Pivot::V(i))?.transpose_anti()
        }
    }
}

/// `x(u, v)` on the least admissible pivot; `φ(x(u, v)) = 1 + u vᵗ`.
pub fn x_small(system: &Arc<RootDatum>, u: &RVector, v: &RVector) -> Result<StWord> {
    let pivot = pivots(u, v).into_iter().next().ok_or_else(|| {
        Error::Precondition(format!(
            "x(u, v) needs a zero coordinate in u or v: u = {}, v = {}",
            u.format(),
            v.format()
        ))
    })?;
    x_small_at(system, u, v, pivot)
}

/// The terms `(e_p y_q − e_q y_p)(x_p w_q − x_q w_p)`, `p < q`.
///
/// Each term is orthogonal to `y` and has at most two nonzero coordinates;
/// the terms sum to `(yᵗw)·x − (yᵗx)·w`.
pub fn orthogonal_terms(x: &RVector, y: &RVector, w: &RVector) -> Result<Vec<RVector>> {
    let n = x.len();
    if y.len() != n || w.len() != n || x.ring != y.ring || x.ring != w.ring {
        return Err(Error::Mismatch("vectors differ in length or ring".into()));
    }
    let r = &x.ring;
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for p in 0..n {
        for q in p + 1..n {
            let c = r.sub(
                &r.mul(&x.entries[p], &w.entries[q]),
                &r.mul(&x.entries[q], &w.entries[p]),
            );
            let mut t = RVector::zero(r, n);
            t.entries[p] = r.mul(&y.entries[q], &c);
            t.entries[q] = r.neg(&r.mul(&y.entries[p], &c));
            out.push(t);
        }
    }
    Ok(out)
}

/// `{u_pq}_{p<q}` with `u_pq = (e_p v_q − e_q v_p)(u_p w_q − u_q w_p)`.
pub fn canonical_decomposition(u: &RVector, v: &RVector, w: &RVector) -> Result<Vec<RVector>> {
    if u.len() < 4 {
        return Err(Error::Precondition(format!("n = {} < 4", u.len())));
    }
    let wv = w.dot(v)?;
    if !u.ring.is_one(&wv) {
        return Err(Error::MissingCertificate(format!(
            "wᵗv = {} for v = {}, w = {}",
            u.ring.format(&wv),
            v.format(),
            w.format()
        )));
    }
    require_orthogonal(u, v)?;
    orthogonal_terms(u, v, w)
}

fn check_certificate(cert: &RVector, x: &RVector) -> Result<()> {
    let d = cert.dot(x)?;
    if !x.ring.is_one(&d) {
        return Err(Error::MissingCertificate(format!(
            "{}ᵗ{} = {}, expected 1",
            cert.format(),
            x.format(),
            x.ring.format(&d)
        )));
    }
    Ok(())
}

/// van der Kallen's `X(u, v)` for unimodular `u` with certificate `wᵗu = 1`.
pub fn x_gen(system: &Arc<RootDatum>, u: &RVector, v: &RVector, w: &RVector) -> Result<StWord> {
    check_certificate(w, u)?;
    require_orthogonal(u, v)?;
    let mut out = StWord::identity(system, &u.ring);
    for t in orthogonal_terms(v, u, w)? {
        if !t.is_zero() {
            out = out.mul(&x_small(system, u, &t)?)?;
        }
    }
    Ok(out)
}

/// `Y(u, v)` for unimodular `v` with certificate `wᵗv = 1`.
pub fn y_gen(system: &Arc<RootDatum>, u: &RVector, v: &RVector, w: &RVector) -> Result<StWord> {
    let mut out = StWord::identity(system, &u.ring);
    for t in canonical_decomposition(u, v, w)? {
        if !t.is_zero() {
            out = out.mul(&x_small(system, &t, v)?)?;
        }
    }
    Ok(out)
}

/// Generators `F(u, v)` and `S(u, v)` of the two-sided relative presentation.
/// The certificate is `w` with `wᵗu = 1` for `F` and `wᵗv = 1` for `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StarGen {
    F { u: RVector, v: RVector, cert: RVector },
    S { u: RVector, v: RVector, cert: RVector },
}

impl StarGen {
    pub fn u(&self) -> &RVector {
        match self {
            StarGen::F { u, .. } | StarGen::S { u, .. } => u,
        }
    }

    pub fn v(&self) -> &RVector {
        match self {
            StarGen::F { v, .. } | StarGen::S { v, .. } => v,
        }
    }

    pub fn is_f(&self) -> bool {
        matches!(self, StarGen::F { .. })
    }

    pub fn label(&self) -> String {
        let tag = if self.is_f() { "F" } else { "S" };
        format!("{tag}({}, {})", self.u().format(), self.v().format())
    }
}

/// `ι(F(u, v)) = X(u, v)`, `ι(S(u, v)) = Y(u, v)`.
pub fn iota(system: &Arc<RootDatum>, gen: &StarGen) -> Result<StWord> {
    match gen {
        StarGen::F { u, v, cert } => x_gen(system, u, v, cert),
        StarGen::S { u, v, cert } => y_gen(system, u, v, cert),
    }
}

/// Sum of a list of vectors of length `n`.
pub fn vector_sum(ring: &crate::ring::Ring, n: usize, terms: &[RVector]) -> Result<RVector> {
    terms.iter().try_fold(RVector::zero(ring, n), |acc, t| acc.add(t))
}

/// `e_i c`.
pub fn scaled_basis(ring: &crate::ring::Ring, n: usize, i: usize, c: &Elem) -> RVector {
    RVector::basis(ring, n, i).scale(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::transvection;
    use crate::ring::Ring;

    fn setup(spec: &str) -> (Arc<RootDatum>, Ring) {
        (RootDatum::parse("A3").unwrap(), Ring::parse(spec).unwrap())
    }

    #[test]
    fn x_small_of_basis_pair_is_one_letter() {
        let (sys, r) = setup("z/6");
        let u = RVector::basis(&r, 4, 0);
        let v = scaled_basis(&r, 4, 1, &Elem::Mod(5));
        let w = x_small(&sys, &u, &v).unwrap().simplify();
        assert_eq!(w, StWord::x(&sys, &r, 0, 1, Elem::Mod(5)).unwrap());
    }

    #[test]
    fn x_small_with_shared_zero() {
        let (sys, r) = setup("z/6");
        let u = RVector::from_ints(&r, &[1, 1, 0, 0]);
        let v = RVector::from_ints(&r, &[1, -1, 0, 0]);
        for p in pivots(&u, &v) {
            let w = x_small_at(&sys, &u, &v, p).unwrap();
            assert_eq!(w.phi().unwrap(), transvection(&u, &v).unwrap(), "{p:?}");
        }
    }

    #[test]
    fn x_small_dual_pivot() {
        let (sys, r) = setup("z/6");
        let u = RVector::from_ints(&r, &[0, 1, 2, 3]);
        let v = RVector::from_ints(&r, &[1, 1, 1, 1]);
        assert_eq!(pivots(&u, &v), vec![Pivot::U(0)]);
        assert_eq!(x_small(&sys, &u, &v).unwrap().phi().unwrap(), transvection(&u, &v).unwrap());
        let bad = RVector::from_ints(&r, &[1, 1, 1, 3]);
        assert!(x_small(&sys, &bad, &v).is_err());
    }

    #[test]
    fn canonical_decomposition_with_basis_certificate() {
        let (_, r) = setup("z/6");
        let u = RVector::from_ints(&r, &[2, 0, 3, 5]);
        let e2 = RVector::basis(&r, 4, 1);
        let terms = canonical_decomposition(&u, &e2, &e2).unwrap();
        let nonzero: Vec<_> = terms.iter().filter(|t| !t.is_zero()).cloned().collect();
        assert_eq!(nonzero.len(), 3);
        assert_eq!(vector_sum(&r, 4, &terms).unwrap(), u);
        assert!(canonical_decomposition(&u, &e2, &RVector::basis(&r, 4, 0)).is_err());
    }

    #[test]
    fn x_gen_and_y_gen_project_to_transvections() {
        let (sys, r) = setup("z/6");
        let u = RVector::from_ints(&r, &[2, 3, 0, 1]);
        let w = u.unimodular_certificate().unwrap().unwrap();
        let v = RVector::from_ints(&r, &[3, 0, 5, 0]);
        let t = transvection(&u, &v).unwrap();
        assert_eq!(x_gen(&sys, &u, &v, &w).unwrap().phi().unwrap(), t);
        assert_eq!(y_gen(&sys, &v, &u, &w).unwrap().phi().unwrap(), transvection(&v, &u).unwrap());
        assert!(x_gen(&sys, &u, &v, &RVector::basis(&r, 4, 1)).is_err());
    }
}
