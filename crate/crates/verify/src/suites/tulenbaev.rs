//! Properties (a)–(d) of the elements `X_{u,v}(a)` and `Y_{u,v}(a)` on random
//! instances built from explicit decompositions.

use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};
use steinberg_core::chevalley::random_word;
use steinberg_core::tulenbaev::{find_decomposition, x_tul, y_tul, TulenbaevDatum};
use steinberg_core::vdk::orthogonal_terms;
use steinberg_core::word::tiered_equal;
use steinberg_core::{Elem, RVector, Result as CoreResult, Ring, RootDatum, StWord};
use steinberg_fp::StTable;

use super::common::{random_vector, vec_json};
use crate::context::{as_oracle, tier_name, Check, Ctx};
use crate::VerifyError;

pub const DEFAULT_SAMPLES: usize = 100;

/// `fixed`, a certificate `c` with `a = cᵗ fixed`, and `moving ⊥ fixed` with
/// its summands.
struct Instance {
    fixed: RVector,
    cert: RVector,
    a: Elem,
    moving: RVector,
    terms: Vec<RVector>,
}

fn nonzero(ts: Vec<RVector>) -> Vec<RVector> {
    ts.into_iter().filter(|t| !t.is_zero()).collect()
}

fn sum(ring: &Ring, n: usize, ts: &[RVector]) -> RVector {
    ts.iter().fold(RVector::zero(ring, n), |acc, t| acc.add(t).expect("same length"))
}

/// Summands of a vector orthogonal to `fixed`: `(fixedᵗw)x − (fixedᵗx)w`.
fn orthogonal_part<R: Rng + ?Sized>(ring: &Ring, n: usize, fixed: &RVector, rng: &mut R) -> Vec<RVector> {
    let x = random_vector(ring, n, rng);
    let w = random_vector(ring, n, rng);
    nonzero(orthogonal_terms(&x, fixed, &w).expect("same length"))
}

fn instance<R: Rng + ?Sized>(ring: &Ring, n: usize, rng: &mut R) -> Instance {
    let fixed = random_vector(ring, n, rng);
    let cert = random_vector(ring, n, rng);
    let a = cert.dot(&fixed).expect("same length");
    let terms = orthogonal_part(ring, n, &fixed, rng);
    Instance {
        moving: sum(ring, n, &terms),
        fixed,
        cert,
        a,
        terms,
    }
}

/// Another decomposition of `moving`: a searched one when available,
/// otherwise the given summands in reverse order.
fn other_decomposition(fixed: &RVector, moving: &RVector, fallback: &[RVector]) -> Vec<RVector> {
    match find_decomposition(fixed, moving) {
        Ok(ts) if ts != fallback => ts,
        _ => fallback.iter().rev().cloned().collect(),
    }
}

fn scale_all(ts: &[RVector], c: &Elem) -> Vec<RVector> {
    nonzero(ts.iter().map(|t| t.scale(c)).collect())
}

type Case = (StWord, StWord, Value);

pub fn run(ctx: &mut Ctx) -> Result<(), VerifyError> {
    let sys = ctx.gl_system(4)?;
    let rings = ctx.rings(&["f2", "z/6"])?;
    let n = sys.rank() + 1;
    let samples = ctx.samples(DEFAULT_SAMPLES);
    for ring in &rings {
        let oracle = ctx.oracle(&sys, ring);
        for mirrored in [false, true] {
            for part in ['a', 'b', 'c', 'd'] {
                let name = format!("{}-lemma-{part}", if mirrored { "y" } else { "x" });
                if !ctx.cfg.wants(&name) {
                    continue;
                }
                let t = match &oracle {
                    Ok(t) => t.clone(),
                    Err(reason) => {
                        let mut check = Check::new(&name, &sys.name(), ring.spec(), "exact", false);
                        check.unavailable(reason.clone());
                        ctx.push(check);
                        continue;
                    }
                };
                let mut check = Check::new(&name, &sys.name(), ring.spec(), tier_name(&t), false);
                for _ in 0..samples {
                    let case = build_case(&sys, ring, n, mirrored, part, &mut ctx.rng);
                    record(&mut check, case, &t);
                }
                ctx.push(check);
            }
        }
    }
    Ok(())
}

fn record(check: &mut Check, case: CoreResult<Case>, t: &Option<Arc<StTable>>) {
    match case {
        Ok((lhs, rhs, witness)) => {
            let outcome = tiered_equal(&lhs, &rhs, as_oracle(t)).map(|v| v.equal);
            check.record(outcome, || {
                let mut w = witness;
                w["lhs"] = json!(lhs.format());
                w["rhs"] = json!(rhs.format());
                w
            });
        }
        Err(e) => check.record(Err(e), || json!({"stage": "instance construction"})),
    }
}

fn datum(mirrored: bool, fixed: &RVector, moving: &RVector, a: &Elem, terms: Vec<RVector>, cert: &RVector) -> CoreResult<TulenbaevDatum> {
    if mirrored {
        TulenbaevDatum::y(moving.clone(), fixed.clone(), a.clone(), terms, cert.clone())
    } else {
        TulenbaevDatum::x(fixed.clone(), moving.clone(), a.clone(), terms, cert.clone())
    }
}

fn element(sys: &Arc<RootDatum>, d: &TulenbaevDatum) -> CoreResult<StWord> {
    if d.mirrored {
        y_tul(sys, d)
    } else {
        x_tul(sys, d)
    }
}

/// Builds both sides of one lemma part. For `X` the fixed vector is `u`; for
/// `Y` it is `v` and the statements are the transposed ones.
fn build_case<R: Rng + ?Sized>(
    sys: &Arc<RootDatum>,
    ring: &Ring,
    n: usize,
    mirrored: bool,
    part: char,
    rng: &mut R,
) -> CoreResult<Case> {
    let inst = instance(ring, n, rng);
    let (f, m, a, cert) = (&inst.fixed, &inst.moving, &inst.a, &inst.cert);
    let c = ring.random_elem(rng);
    let el = |d: CoreResult<TulenbaevDatum>| element(sys, &d?);
    let base = json!({
        "fixed": vec_json(f),
        "moving": vec_json(m),
        "a": ring.format(a),
        "c": ring.format(&c),
    });
    match part {
        // X_{u,vc}(a) = X_{u,v}(ca)
        'a' => {
            let mc = m.scale(&c);
            let lhs = el(datum(mirrored, f, &mc, a, other_decomposition(f, &mc, &scale_all(&inst.terms, &c)), cert))?;
            let rhs = el(datum(mirrored, f, m, &ring.mul(&c, a), inst.terms.clone(), &cert.scale(&c)))?;
            Ok((lhs, rhs, base))
        }
        // X_{uc,v}(ca) = X_{u,vc²}(a)
        'b' => {
            let ca = ring.mul(&c, a);
            let c2 = ring.mul(&c, &c);
            let lhs = el(datum(mirrored, &f.scale(&c), m, &ca, inst.terms.clone(), cert))?;
            let rhs = el(datum(mirrored, f, &m.scale(&c2), a, scale_all(&inst.terms, &c2), cert))?;
            Ok((lhs, rhs, base))
        }
        // X_{u,v}(a) X_{u,v′}(a) = X_{u,v+v′}(a)
        'c' => {
            let terms2 = orthogonal_part(ring, n, f, rng);
            let m2 = sum(ring, n, &terms2);
            let total = m.add(&m2)?;
            let joined: Vec<RVector> = inst.terms.iter().chain(&terms2).cloned().collect();
            let lhs = el(datum(mirrored, f, m, a, inst.terms.clone(), cert))?
                .mul(&el(datum(mirrored, f, &m2, a, terms2, cert))?)?;
            let rhs = el(datum(mirrored, f, &total, a, other_decomposition(f, &total, &joined), cert))?;
            let mut w = base;
            w["second"] = vec_json(&m2);
            Ok((lhs, rhs, w))
        }
        // g X_{u,wb}(a) g⁻¹ = X_{φ(g)u, φ(g)*wb}(a)
        'd' => {
            let w = sum(ring, n, &orthogonal_part(ring, n, f, rng));
            let z = random_vector(ring, n, rng);
            let b = z.dot(f)?;
            let terms = nonzero(orthogonal_terms(&w, f, &z)?);
            let g = random_word(sys, ring, 3, rng);
            let lhs = StWord::conjugate(&g, &el(datum(mirrored, f, &w.scale(&b), a, terms, cert))?)?;
            let (on_fixed, on_moving) = if mirrored {
                (g.phi_contragredient()?, g.phi()?)
            } else {
                (g.phi()?, g.phi_contragredient()?)
            };
            let f2 = on_fixed.mul_vec(f)?;
            let w2 = on_moving.mul_vec(&w)?;
            let z2 = on_moving.mul_vec(&z)?;
            let cert2 = on_moving.mul_vec(cert)?;
            let terms2 = nonzero(orthogonal_terms(&w2, &f2, &z2)?);
            let rhs = el(datum(mirrored, &f2, &w2.scale(&b), a, terms2, &cert2))?;
            let mut wit = base;
            wit["g"] = json!(g.format());
            wit["w"] = vec_json(&w);
            wit["b"] = json!(ring.format(&b));
            Ok((lhs, rhs, wit))
        }
        _ => unreachable!("lemma parts are a to d"),
    }
}
