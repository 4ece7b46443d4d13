//! `x(u, v)`, `X(u, v)`, `Y(u, v)`: matrix contracts, pivot and certificate
//! independence, the canonical decomposition and the `X = Y` lemma.

use std::sync::Arc;

use rand::Rng;
use serde_json::json;
use steinberg_core::vdk::{canonical_decomposition, pivots, x_gen, x_small_at, y_gen};
use steinberg_core::word::tiered_equal;
use steinberg_core::{Elem, RMatrix, RVector, Result as CoreResult, Ring, RootDatum, StWord};
use steinberg_fp::star::{frame_orbit, Frame};

use super::common::{all_vectors, enumerable, membership, random_vector, vec_json};
use crate::context::{as_oracle, tier_name, Check, Ctx};
use crate::VerifyError;

pub const DEFAULT_SAMPLES: usize = 500;

/// `1 + u vᵗ`, entry by entry.
fn rank_one_update(u: &RVector, v: &RVector) -> RMatrix {
    let r = &u.ring;
    let n = u.len();
    let mut m = RMatrix::identity(r, n);
    for i in 0..n {
        for j in 0..n {
            let x = r.add(m.get(i, j), &r.mul(&u.entries[i], &v.entries[j]));
            m.set(i, j, x);
        }
    }
    m
}

fn is_zero_dot(u: &RVector, v: &RVector) -> bool {
    u.ring.is_zero(&u.dot(v).expect("same length"))
}

pub fn run(ctx: &mut Ctx) -> Result<(), VerifyError> {
    let sys = ctx.gl_system(4)?;
    let rings = ctx.rings(&["f2", "z/6"])?;
    for ring in &rings {
        let oracle = ctx.oracle(&sys, ring);
        let n = sys.rank() + 1;
        if ctx.cfg.wants("x_small-contract") || ctx.cfg.wants("x_small-pivot-independence") {
            x_small_checks(ctx, &sys, ring, n, &oracle)?;
        }
        if ctx.cfg.wants("canonical-decomposition") {
            canonical(ctx, &sys, ring, n);
        }
        if ["x_gen-transvection", "x_gen-certificate-independence"]
            .iter()
            .any(|c| ctx.cfg.wants(c))
        {
            generator_checks(ctx, &sys, ring, n, &oracle, false)?;
        }
        if ["y_gen-transvection", "y_gen-certificate-independence"]
            .iter()
            .any(|c| ctx.cfg.wants(c))
        {
            generator_checks(ctx, &sys, ring, n, &oracle, true)?;
        }
        if ctx.cfg.wants("xy-lemma") {
            xy_lemma(ctx, &sys, ring, n, &oracle)?;
        }
        if ctx.cfg.wants("xy-lemma-commutators") {
            xy_commutators(ctx, &sys, ring, n, &oracle)?;
        }
    }
    Ok(())
}

fn x_small_domain(ctx: &mut Ctx, ring: &Ring, n: usize) -> (Vec<(RVector, RVector)>, bool) {
    let valid = |u: &RVector, v: &RVector| is_zero_dot(u, v) && !pivots(u, v).is_empty();
    if enumerable(ring, 2 * n, ctx.domain_cap()) {
        let all = all_vectors(ring, n);
        let mut out = Vec::new();
        for u in &all {
            for v in &all {
                if valid(u, v) {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
        return (out, true);
    }
    let want = ctx.samples(DEFAULT_SAMPLES);
    let mut out = Vec::with_capacity(want);
    let mut attempts = 0usize;
    while out.len() < want && attempts < 1000 * want.max(1) {
        attempts += 1;
        let u = random_vector(ring, n, &mut ctx.rng);
        let mut v = random_vector(ring, n, &mut ctx.rng);
        // force a zero coordinate, then solve for orthogonality on a unit entry of u
        let z = ctx.rng.gen_range(0..n);
        v.entries[z] = ring.zero();
        let Some(k) = (0..n).find(|&k| k != z && ring.is_unit(&u.entries[k])) else {
            continue;
        };
        v.entries[k] = ring.zero();
        let d = u.dot(&v).expect("same length");
        let inv = ring.unit_inverse(&u.entries[k]).expect("unit");
        v.entries[k] = ring.neg(&ring.mul(&d, &inv));
        if valid(&u, &v) {
            out.push((u, v));
        }
    }
    (out, false)
}

fn x_small_checks(
    ctx: &mut Ctx,
    sys: &Arc<RootDatum>,
    ring: &Ring,
    n: usize,
    oracle: &Result<Option<Arc<steinberg_fp::StTable>>, String>,
) -> Result<(), VerifyError> {
    let (domain, exhaustive) = x_small_domain(ctx, ring, n);
    let name = sys.name();
    let spec = ring.spec().to_string();
    if ctx.cfg.wants("x_small-contract") {
        let mut check = Check::new("x_small-contract", &name, &spec, "matrix", exhaustive);
        for (u, v) in &domain {
            let outcome = pivots(u, v)
                .into_iter()
                .map(|p| Ok(x_small_at(sys, u, v, p)?.phi()? == rank_one_update(u, v)))
                .collect::<CoreResult<Vec<bool>>>()
                .map(|oks| oks.into_iter().all(|b| b));
            check.record(outcome, || json!({"u": vec_json(u), "v": vec_json(v)}));
        }
        ctx.push(check);
    }
    if ctx.cfg.wants("x_small-pivot-independence") {
        match oracle {
            Err(reason) => {
                let mut check =
                    Check::new("x_small-pivot-independence", &name, &spec, "exact", exhaustive);
                check.unavailable(reason.clone());
                ctx.push(check);
            }
            Ok(t) => {
                let mut check =
                    Check::new("x_small-pivot-independence", &name, &spec, tier_name(t), exhaustive);
                for (u, v) in &domain {
                    let ps = pivots(u, v);
                    let outcome = (|| {
                        let first = x_small_at(sys, u, v, ps[0])?;
                        for &p in &ps[1..] {
                            let w = x_small_at(sys, u, v, p)?;
                            if !tiered_equal(&first, &w, as_oracle(t))?.equal {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    })();
                    check.record(outcome, || {
                        json!({"u": vec_json(u), "v": vec_json(v), "pivots": format!("{ps:?}")})
                    });
                }
                ctx.push(check);
            }
        }
    }
    Ok(())
}

fn canonical(ctx: &mut Ctx, sys: &RootDatum, ring: &Ring, n: usize) {
    let mut instances: Vec<(RVector, RVector, RVector)> = Vec::new();
    let exhaustive = enumerable(ring, 3 * n, ctx.domain_cap());
    if exhaustive {
        let all = all_vectors(ring, n);
        for v in &all {
            for w in &all {
                if !ring.is_one(&w.dot(v).expect("same length")) {
                    continue;
                }
                for u in all.iter().filter(|u| is_zero_dot(u, v)) {
                    instances.push((u.clone(), v.clone(), w.clone()));
                }
            }
        }
    } else {
        let want = ctx.samples(DEFAULT_SAMPLES);
        // (x, v, w) with wᵗv = 1 and x ⊥ v
        instances = unimodular_samples(ctx, ring, n, want);
    }
    let mut check = Check::new("canonical-decomposition", &sys.name(), ring.spec(), "arithmetic", exhaustive);
    for (u, v, w) in &instances {
        let outcome = canonical_decomposition(u, v, w).map(|terms| {
            let mut sum = RVector::zero(ring, n);
            for t in &terms {
                sum = sum.add(t).expect("same length");
            }
            let wv = w.dot(v).expect("same length");
            sum == u.scale(&wv) && terms.iter().all(|t| is_zero_dot(t, v) && t.zero_count() >= 2)
        });
        check.record(outcome, || json!({"u": vec_json(u), "v": vec_json(v), "w": vec_json(w)}));
    }
    ctx.push(check);
}

/// Random `(x, u, w)` with `wᵗu = 1` and `xᵗu = 0`.
fn unimodular_samples(ctx: &mut Ctx, ring: &Ring, n: usize, want: usize) -> Vec<(RVector, RVector, RVector)> {
    let mut out = Vec::with_capacity(want);
    let mut attempts = 0usize;
    while out.len() < want && attempts < 1000 * want.max(1) {
        attempts += 1;
        let u = random_vector(ring, n, &mut ctx.rng);
        let Some(w) = membership(&u, &ring.one()) else { continue };
        let x = orthogonal_to(&u, &w, &random_vector(ring, n, &mut ctx.rng));
        out.push((x, u, w));
    }
    out
}

/// `y − (uᵗy) w`, orthogonal to `u` when `wᵗu = 1`.
fn orthogonal_to(u: &RVector, w: &RVector, y: &RVector) -> RVector {
    y.sub(&w.scale(&u.dot(y).expect("same length"))).expect("same length")
}

/// `(u, [certificates], orthogonal vectors)` for unimodular `u`.
type UnimodularDomain = Vec<(RVector, Vec<RVector>, Vec<RVector>)>;

fn unimodular_domain(ctx: &mut Ctx, ring: &Ring, n: usize) -> (UnimodularDomain, bool) {
    if enumerable(ring, 3 * n, ctx.domain_cap()) {
        let all = all_vectors(ring, n);
        let mut out = Vec::new();
        for u in &all {
            let certs: Vec<RVector> = all
                .iter()
                .filter(|w| ring.is_one(&w.dot(u).expect("same length")))
                .cloned()
                .collect();
            if certs.is_empty() {
                continue;
            }
            let orth: Vec<RVector> = all.iter().filter(|v| is_zero_dot(u, v)).cloned().collect();
            out.push((u.clone(), certs, orth));
        }
        return (out, true);
    }
    let want = ctx.samples(DEFAULT_SAMPLES);
    let mut out = Vec::with_capacity(want);
    for (x, u, w) in unimodular_samples(ctx, ring, n, want) {
        let mut certs = vec![w.clone()];
        for _ in 0..2 {
            let z = orthogonal_to(&u, &w, &random_vector(ring, n, &mut ctx.rng));
            certs.push(w.add(&z).expect("same length"));
        }
        out.push((u, certs, vec![x]));
    }
    (out, false)
}

fn generator_checks(
    ctx: &mut Ctx,
    sys: &Arc<RootDatum>,
    ring: &Ring,
    n: usize,
    oracle: &Result<Option<Arc<steinberg_fp::StTable>>, String>,
    transposed: bool,
) -> Result<(), VerifyError> {
    let (domain, exhaustive) = unimodular_domain(ctx, ring, n);
    let (prefix, build): (&str, fn(&Arc<RootDatum>, &RVector, &RVector, &RVector) -> CoreResult<StWord>) =
        if transposed {
            // Y(x, u) with u unimodular, cert wᵗu = 1
            ("y_gen", |s, u, x, w| y_gen(s, x, u, w))
        } else {
            ("x_gen", |s, u, x, w| x_gen(s, u, x, w))
        };
    let name = sys.name();
    let spec = ring.spec().to_string();
    let contract = format!("{prefix}-transvection");
    let independence = format!("{prefix}-certificate-independence");
    if ctx.cfg.wants(&contract) {
        let mut check = Check::new(&contract, &name, &spec, "matrix", exhaustive);
        for (u, certs, orth) in &domain {
            for x in orth {
                for w in certs {
                    let expected = if transposed { rank_one_update(x, u) } else { rank_one_update(u, x) };
                    let outcome = build(sys, u, x, w).and_then(|g| Ok(g.phi()? == expected));
                    check.record(outcome, || {
                        json!({"unimodular": vec_json(u), "other": vec_json(x), "certificate": vec_json(w)})
                    });
                }
            }
        }
        ctx.push(check);
    }
    if ctx.cfg.wants(&independence) {
        let t = match oracle {
            Ok(t) => t,
            Err(reason) => {
                let mut check = Check::new(&independence, &name, &spec, "exact", exhaustive);
                check.unavailable(reason.clone());
                ctx.push(check);
                return Ok(());
            }
        };
        let mut check = Check::new(&independence, &name, &spec, tier_name(t), exhaustive);
        for (u, certs, orth) in &domain {
            for x in orth {
                let outcome = (|| {
                    let first = build(sys, u, x, &certs[0])?;
                    for w in &certs[1..] {
                        if !tiered_equal(&first, &build(sys, u, x, w)?, as_oracle(t))?.equal {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                })();
                check.record(outcome, || {
                    json!({"unimodular": vec_json(u), "other": vec_json(x), "certificates": certs.len()})
                });
            }
        }
        ctx.push(check);
    }
    Ok(())
}

fn ideal_elements(ctx: &mut Ctx, ring: &Ring) -> Result<Vec<Elem>, VerifyError> {
    let ideal = ctx.ideal(ring)?;
    Ok(match ideal.elements() {
        Some(els) => els.to_vec(),
        None => {
            let gens = match ideal.kind() {
                steinberg_core::ring::IdealKind::Generated(g) => g.clone(),
                _ => vec![ring.one()],
            };
            (0..ctx.samples(DEFAULT_SAMPLES))
                .map(|k| ring.mul(&gens[k % gens.len()], &ring.random_elem(&mut ctx.rng)))
                .collect()
        }
    })
}

/// `X(Me_1, M*e_2 a) = Y(Me_1 a, M*e_2)` over the frame orbit.
fn xy_lemma(
    ctx: &mut Ctx,
    sys: &Arc<RootDatum>,
    ring: &Ring,
    n: usize,
    oracle: &Result<Option<Arc<steinberg_fp::StTable>>, String>,
) -> Result<(), VerifyError> {
    let name = sys.name();
    let spec = ring.spec().to_string();
    let t = match oracle {
        Ok(t) => t.clone(),
        Err(reason) => {
            let mut check = Check::new("xy-lemma", &name, &spec, "exact", false);
            check.unavailable(reason.clone());
            ctx.push(check);
            return Ok(());
        }
    };
    let scalars = ideal_elements(ctx, ring)?;
    let frames = [Frame::Col(0), Frame::Dual(1), Frame::Dual(0), Frame::Col(1)];
    let samples = ctx.samples(DEFAULT_SAMPLES);
    let dom = frame_orbit(n, ring, &frames, ctx.domain_cap(), samples, &mut ctx.rng)?;
    let mut check = Check::new("xy-lemma", &name, &spec, tier_name(&t), dom.exhaustive);
    for tuple in &dom.tuples {
        let (u, v, x_cert, y_cert) = (&tuple[0], &tuple[1], &tuple[2], &tuple[3]);
        for a in &scalars {
            let outcome = (|| {
                let lhs = x_gen(sys, u, &v.scale(a), x_cert)?;
                let rhs = y_gen(sys, &u.scale(a), v, y_cert)?;
                Ok(tiered_equal(&lhs, &rhs, as_oracle(&t))?.equal)
            })();
            check.record(outcome, || {
                json!({"u": vec_json(u), "v": vec_json(v), "a": ring.format(a)})
            });
        }
    }
    ctx.push(check);
    Ok(())
}

/// The two commutator evaluations behind the `X = Y` lemma, in basis vectors.
fn xy_commutators(
    ctx: &mut Ctx,
    sys: &Arc<RootDatum>,
    ring: &Ring,
    n: usize,
    oracle: &Result<Option<Arc<steinberg_fp::StTable>>, String>,
) -> Result<(), VerifyError> {
    let name = sys.name();
    let spec = ring.spec().to_string();
    let t = match oracle {
        Ok(t) => t.clone(),
        Err(reason) => {
            let mut check = Check::new("xy-lemma-commutators", &name, &spec, "exact", false);
            check.unavailable(reason.clone());
            ctx.push(check);
            return Ok(());
        }
    };
    let scalars = ideal_elements(ctx, ring)?;
    let exhaustive = ctx.ideal(ring)?.elements().is_some();
    let e = |i: usize| RVector::basis(ring, n, i);
    let mut check = Check::new("xy-lemma-commutators", &name, &spec, tier_name(&t), exhaustive);
    for a in &scalars {
        let outcome = (|| {
            let y_minus = y_gen(sys, &e(2).neg(), &e(1), &e(1))?;
            let y_plus = y_gen(sys, &e(2), &e(1), &e(1))?;
            let x13 = x_gen(sys, &e(0), &e(2).scale(a), &e(0))?;
            let x13_neg = x_gen(sys, &e(0), &e(2).scale(&ring.neg(a)), &e(0))?;
            let first = StWord::conjugate(&y_minus, &x13)?.mul(&x13_neg)?;
            let first_rhs = x_gen(sys, &e(0), &e(1).scale(a), &e(0))?;
            let second = y_minus.mul(&StWord::conjugate(&x13, &y_plus)?)?;
            let second_rhs = y_gen(sys, &e(0).scale(a), &e(1), &e(1))?;
            let ok1 = tiered_equal(&first, &first_rhs, as_oracle(&t))?.equal;
            let ok2 = tiered_equal(&second, &second_rhs, as_oracle(&t))?.equal;
            if !(ok1 && ok2) {
                return Err(steinberg_core::Error::Mismatch(format!(
                    "first {}, second {}",
                    if ok1 { "holds" } else { "fails" },
                    if ok2 { "holds" } else { "fails" }
                )));
            }
            Ok(true)
        })();
        check.record(outcome, || json!({"a": ring.format(a)}));
    }
    ctx.push(check);
    Ok(())
}
