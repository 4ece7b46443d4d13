//! `St(Φ, R) = St(Φ, R, I) ⋊ St(Φ, R/I)` for a split ideal, the commutator
//! formula in a semidirect product, and the map `ψ`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::RVector;
use crate::ring::{Elem, SplitData};
use crate::roots::RootDatum;
use crate::vdk::x_gen;
use crate::word::StWord;

/// Split data together with the root system the words live over.
#[derive(Clone, Debug)]
pub struct SplitContext {
    pub system: Arc<RootDatum>,
    pub split: SplitData,
}

/// A pair `(g, h)` with `g` a word over `R` (meant to lie in `St(Φ, R, I)`) and
/// `h` a word over `R/I`. It stands for `g · σ*(h)` in `St(Φ, R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectElement {
    pub kernel: StWord,
    pub quotient: StWord,
}

impl SplitContext {
    pub fn new(system: &Arc<RootDatum>, split: SplitData) -> Self {
        SplitContext {
            system: system.clone(),
            split,
        }
    }

    /// `σ*(h)`.
    pub fn lift(&self, h: &StWord) -> StWord {
        h.map_ring(&self.split.sigma)
    }

    /// `π*(g)`.
    pub fn project(&self, g: &StWord) -> StWord {
        g.map_ring(&self.split.pi)
    }

    pub fn identity(&self) -> SemidirectElement {
        SemidirectElement {
            kernel: StWord::identity(&self.system, &self.split.ring),
            quotient: StWord::identity(&self.system, &self.split.quotient),
        }
    }

    /// `ᵇc = σ*(b) c σ*(b)⁻¹`.
    pub fn act(&self, b: &StWord, c: &StWord) -> Result<StWord> {
        StWord::conjugate(&self.lift(b), c)
    }

    /// `(g, h)(g′, h′) = (g · ʰg′, hh′)`.
    pub fn mul(&self, x: &SemidirectElement, y: &SemidirectElement) -> Result<SemidirectElement> {
        Ok(SemidirectElement {
            kernel: x.kernel.mul(&self.act(&x.quotient, &y.kernel)?)?,
            quotient: x.quotient.mul(&y.quotient)?,
        })
    }

    pub fn inverse(&self, x: &SemidirectElement) -> Result<SemidirectElement> {
        let hinv = x.quotient.inverse();
        Ok(SemidirectElement {
            kernel: self.act(&hinv, &x.kernel.inverse())?,
            quotient: hinv,
        })
    }

    /// `[x, y]` by multiplying out.
    pub fn commutator(&self, x: &SemidirectElement, y: &SemidirectElement) -> Result<SemidirectElement> {
        let xy = self.mul(x, y)?;
        let xinv = self.inverse(x)?;
        let yinv = self.inverse(y)?;
        self.mul(&self.mul(&xy, &xinv)?, &yinv)
    }

    /// `[(a, b), (c, d)] = (a · ᵇc · ^{bdb⁻¹}a⁻¹ · ^{[b,d]}c⁻¹, [b, d])`.
    pub fn commutator_formula(
        &self,
        x: &SemidirectElement,
        y: &SemidirectElement,
    ) -> Result<SemidirectElement> {
        let (a, b) = (&x.kernel, &x.quotient);
        let (c, d) = (&y.kernel, &y.quotient);
        let bdb = StWord::conjugate(b, d)?;
        let bd = StWord::commutator(b, d)?;
        let kernel = a
            .mul(&self.act(b, c)?)?
            .mul(&self.act(&bdb, &a.inverse())?)?
            .mul(&self.act(&bd, &c.inverse())?)?;
        Ok(SemidirectElement {
            kernel,
            quotient: bd,
        })
    }

    /// The element `g · σ*(h)` of `St(Φ, R)`.
    pub fn to_word(&self, x: &SemidirectElement) -> Result<StWord> {
        x.kernel.mul(&self.lift(&x.quotient))
    }

    /// `X(e_i, e_j ξ′)` with `ξ′ = ξ − σπ(ξ)`.
    pub fn kernel_generator(&self, i: usize, j: usize, xi: &Elem) -> Result<StWord> {
        let r = &self.split.ring;
        let n = self.system.rank() + 1;
        let u = RVector::basis(r, n, i);
        let v = RVector::basis(r, n, j).scale(&self.split.kernel_part(xi));
        x_gen(&self.system, &u, &v, &u)
    }

    /// `X(u, v)` over `R` for a unimodular `u` with certificate.
    pub fn kernel_x(&self, u: &RVector, v: &RVector, cert: &RVector) -> Result<StWord> {
        x_gen(&self.system, u, v, cert)
    }

    /// `ψ(x_{ij}(ξ)) = (X(e_i, e_j ξ′), x_{ij}(π(ξ)))`.
    pub fn psi(&self, i: usize, j: usize, xi: &Elem) -> Result<SemidirectElement> {
        if i == j {
            return Err(Error::Precondition("ψ needs i ≠ j".into()));
        }
        let q = &self.split.quotient;
        Ok(SemidirectElement {
            kernel: self.kernel_generator(i, j, xi)?,
            quotient: StWord::x(&self.system, q, i, j, self.split.pi.apply(xi))?,
        })
    }

    /// The four-factor kernel expression for `[ψ(x_{ij}(ξ)), ψ(x_{jk}(η))]` and
    /// its quotient part `x_{ik}(π(ξη))`.
    pub fn psi_commutator_expression(
        &self,
        i: usize,
        j: usize,
        k: usize,
        xi: &Elem,
        eta: &Elem,
    ) -> Result<SemidirectElement> {
        let r = &self.split.ring;
        let n = self.system.rank() + 1;
        let sp = &self.split;
        let pxi = sp.sigma.apply(&sp.pi.apply(xi));
        let peta = sp.sigma.apply(&sp.pi.apply(eta));
        let xi1 = sp.kernel_part(xi);
        let eta1 = sp.kernel_part(eta);
        let e = |t: usize| RVector::basis(r, n, t);
        let f1 = self.kernel_x(&e(i), &e(j).scale(&xi1), &e(i))?;
        let u2 = e(j).add(&e(i).scale(&pxi))?;
        let f2 = self.kernel_x(&u2, &e(k).scale(&eta1), &e(j))?;
        let v3 = e(k).scale(&r.mul(&peta, &xi1)).sub(&e(j).scale(&xi1))?;
        let f3 = self.kernel_x(&e(i), &v3, &e(i))?;
        let f4 = self.kernel_x(&e(j), &e(k).scale(&r.neg(&eta1)), &e(j))?;
        let q = &sp.quotient;
        Ok(SemidirectElement {
            kernel: f1.mul(&f2)?.mul(&f3)?.mul(&f4)?,
            quotient: StWord::x(&self.system, q, i, k, sp.pi.apply(&r.mul(xi, eta)))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{split, Ideal, Ring};

    fn dual_numbers() -> SplitContext {
        let r = Ring::parse("quo(poly(f2,X),X^2)").unwrap();
        let ideal = Ideal::parse(&r, "X").unwrap();
        let sp = split(&r, &ideal).unwrap().unwrap();
        SplitContext::new(&RootDatum::parse("A3").unwrap(), sp)
    }

    #[test]
    fn trivial_kernel_parts() {
        let ctx = dual_numbers();
        let r = ctx.split.ring.clone();
        let one = r.one();
        let p = ctx.psi(0, 1, &one).unwrap();
        assert!(p.kernel.simplify().is_empty());
        let e = ctx.identity();
        let c = ctx.commutator_formula(&e, &p).unwrap();
        assert!(c.kernel.simplify().is_empty());
    }

    #[test]
    fn formula_matches_direct_commutator() {
        let ctx = dual_numbers();
        let r = ctx.split.ring.clone();
        let eps = r.parse_elem("X").unwrap();
        let xi = r.add(&r.one(), &eps);
        let x = ctx.psi(0, 1, &xi).unwrap();
        let y = ctx.psi(1, 2, &eps).unwrap();
        let direct = ctx.to_word(&ctx.commutator(&x, &y).unwrap()).unwrap();
        let formula = ctx.to_word(&ctx.commutator_formula(&x, &y).unwrap()).unwrap();
        assert_eq!(direct.phi().unwrap(), formula.phi().unwrap());
        let expr = ctx.psi_commutator_expression(0, 1, 2, &xi, &eps).unwrap();
        assert_eq!(ctx.to_word(&expr).unwrap().phi().unwrap(), formula.phi().unwrap());
    }
}
