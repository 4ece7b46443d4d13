//! The lifting map `T : St*(n, B_a, I) → St(n, B)` composed with `λ_a ∘ φ_B`
//! agrees with `t(u, v)` on generators.

use rand::Rng;
use serde_json::json;
use steinberg_core::chevalley::{elementary_orbit_witness, random_word, DEFAULT_SEARCH_CAP};
use steinberg_core::ring::IdealKind;
use steinberg_core::tulenbaev::{LocalizedGen, TMapContext, DEFAULT_LIFT_CAP};
use steinberg_core::{Elem, Ideal, RVector, Result as CoreResult, Ring};
use steinberg_fp::star::{frame_orbit, Frame};

use super::common::all_vectors;
use crate::context::{Check, Ctx};
use crate::VerifyError;

pub const DEFAULT_SAMPLES: usize = 50;

/// Built-in cases: `(B, a, I)`.
const DEFAULT_CASES: &[(&str, &str, &str)] = &[("semi(z,2)", "(2,[])", "kernel"), ("prod(f2,f3)", "(0,1)", "(0,1)")];

fn random_ideal_elem<R: Rng + ?Sized>(ideal: &Ideal, rng: &mut R) -> Elem {
    let ring = ideal.ring();
    if let Some(els) = ideal.elements() {
        return els[rng.gen_range(0..els.len())].clone();
    }
    match ideal.kind() {
        IdealKind::Generated(gens) => gens
            .iter()
            .fold(ring.zero(), |acc, g| ring.add(&acc, &ring.mul(g, &ring.random_elem(rng)))),
        IdealKind::SemidirectKernel => match ring.random_elem(rng) {
            Elem::Pair(_, f) => {
                let zero = match ring.zero() {
                    Elem::Pair(z, _) => *z,
                    other => other,
                };
                Elem::pair(zero, *f)
            }
            other => other,
        },
        IdealKind::Augmentation => {
            let base = ring.coefficient_ring().expect("polynomial ring");
            ring.mul(&Elem::Poly(vec![base.zero(), base.one()]), &ring.random_elem(rng))
        }
    }
}

/// `Σ_{k≥2} M*e_k c_k` pulled back to `Iⁿ`: orthogonal to `Me_1` over `B_a`.
fn ideal_part<R: Rng + ?Sized>(t: &TMapContext, orbit: &steinberg_core::StWord, rng: &mut R) -> CoreResult<RVector> {
    let n = t.n();
    let dual = orbit.phi_contragredient()?;
    let mut acc = RVector::zero(&t.loc, n);
    for k in 1..n {
        let c = t.lambda.apply(&random_ideal_elem(&t.ideal, rng));
        acc = acc.add(&dual.column(k).scale(&c))?;
    }
    let entries = acc
        .entries
        .iter()
        .map(|y| t.unlocalize_ideal(y))
        .collect::<CoreResult<Vec<_>>>()?;
    Ok(RVector::new(&t.ring, entries))
}

fn sampled_generators<R: Rng + ?Sized>(t: &TMapContext, count: usize, rng: &mut R) -> CoreResult<Vec<LocalizedGen>> {
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let orbit = random_word(&t.local_system, &t.loc, 3, rng);
        let nice = orbit.phi()?.column(0);
        out.push(LocalizedGen {
            is_f: k % 2 == 0,
            ideal_part: ideal_part(t, &orbit, rng)?,
            nice,
            orbit,
        });
    }
    Ok(out)
}

/// Every nice vector over a finite `B_a` with every orthogonal vector of `λ(I)ⁿ`.
fn all_generators<R: Rng + ?Sized>(t: &TMapContext, cap: usize, rng: &mut R) -> CoreResult<Option<Vec<LocalizedGen>>> {
    let n = t.n();
    if t.loc.elements().is_none() {
        return Ok(None);
    }
    let dom = frame_orbit(n, &t.loc, &[Frame::Col(0)], cap, 0, rng)?;
    if !dom.exhaustive {
        return Ok(None);
    }
    let Some(ideal_els) = t.ideal.elements() else { return Ok(None) };
    let mut image: Vec<Elem> = ideal_els.iter().map(|x| t.lambda.apply(x)).collect();
    image.sort_by_key(|x| t.loc.index_of(x));
    image.dedup();
    let Some(loc_vectors) = t.loc.elements().map(|_| all_vectors(&t.loc, n)) else {
        return Ok(None);
    };
    let ideal_vectors: Vec<RVector> = loc_vectors
        .into_iter()
        .filter(|v| v.entries.iter().all(|x| image.contains(x)))
        .collect();
    let mut out = Vec::new();
    for tuple in dom.tuples {
        let nice = tuple[0].clone();
        let Some(orbit) = elementary_orbit_witness(&t.local_system, &nice, DEFAULT_SEARCH_CAP)? else {
            continue;
        };
        for y in &ideal_vectors {
            if !t.loc.is_zero(&nice.dot(y)?) {
                continue;
            }
            let part = RVector::new(
                &t.ring,
                y.entries.iter().map(|e| t.unlocalize_ideal(e)).collect::<CoreResult<Vec<_>>>()?,
            );
            for is_f in [true, false] {
                out.push(LocalizedGen {
                    is_f,
                    nice: nice.clone(),
                    ideal_part: part.clone(),
                    orbit: orbit.clone(),
                });
            }
        }
    }
    Ok(Some(out))
}

pub fn run(ctx: &mut Ctx) -> Result<(), VerifyError> {
    let n = ctx.cfg.n.unwrap_or(4);
    let cases: Vec<(Ring, Elem, Ideal)> = if ctx.cfg.rings.is_empty() {
        DEFAULT_CASES
            .iter()
            .map(|(r, a, i)| {
                let ring = Ring::parse(r)?;
                let a = ring.parse_elem(a)?;
                let ideal = Ideal::parse(&ring, i)?;
                Ok((ring, a, ideal))
            })
            .collect::<CoreResult<_>>()?
    } else {
        let a_spec = ctx
            .cfg
            .localize_at
            .clone()
            .ok_or_else(|| VerifyError::Config("tmap-diagram needs localize_at".into()))?;
        let mut out = Vec::new();
        for ring in ctx.rings(&[])? {
            let a = ring
                .parse_elem(&a_spec)
                .map_err(|e| VerifyError::Config(format!("localize_at {a_spec}: {e}")))?;
            let ideal = ctx.ideal(&ring)?;
            out.push((ring, a, ideal));
        }
        out
    };
    for (ring, a, ideal) in &cases {
        let t = TMapContext::new(ring, a, ideal, n, DEFAULT_LIFT_CAP)
            .map_err(|e| VerifyError::Config(e.to_string()))?;
        let spec = format!("{} at {} mod {}", ring.spec(), ring.format(a), ideal.label());
        let name = t.system.name();
        let samples = ctx.samples(DEFAULT_SAMPLES);
        let (gens, exhaustive) = match all_generators(&t, ctx.domain_cap(), &mut ctx.rng)? {
            Some(g) if g.len() <= ctx.domain_cap() => (g, true),
            _ => (sampled_generators(&t, samples, &mut ctx.rng)?, false),
        };
        if !ctx.cfg.wants("tmap-diagram") {
            continue;
        }
        let mut check = Check::new("tmap-diagram", &name, &spec, "matrix", exhaustive);
        for g in &gens {
            check.record(t.diagram_commutes(g), || json!({"generator": g.label(), "orbit": g.orbit.format()}));
        }
        ctx.push(check);
    }
    Ok(())
}
