//! `X_{u,vb⁴r}(b) = Y_{ub⁴r,v}(b)` and the two commutator evaluations behind it.

use std::sync::Arc;

use serde_json::json;
use steinberg_core::tulenbaev::{xeqy_check, XeqYInstance};
use steinberg_core::{RVector, Ring, RootDatum};

use super::common::{all_vectors, enumerable, membership, random_vector, vec_json};
use crate::context::{as_oracle, tier_name, Check, Ctx};
use crate::VerifyError;

pub const DEFAULT_SAMPLES: usize = 200;

fn admissible(x: &RVector, y: &RVector, u: &RVector, v: &RVector, r: &steinberg_core::Elem) -> Option<XeqYInstance> {
    let b = x.dot(y).ok()?;
    let inst = XeqYInstance {
        x: x.clone(),
        y: y.clone(),
        u: u.clone(),
        v: v.clone(),
        b: b.clone(),
        r: r.clone(),
    };
    inst.check_hypotheses().ok()?;
    membership(u, &b)?;
    membership(v, &b)?;
    Some(inst)
}

fn domain(ctx: &mut Ctx, ring: &Ring, n: usize) -> (Vec<XeqYInstance>, bool) {
    let mut out = Vec::new();
    if enumerable(ring, 4 * n, ctx.domain_cap()) {
        let all = all_vectors(ring, n);
        let els = ring.elements().expect("finite");
        let dot0 = |a: &RVector, b: &RVector| ring.is_zero(&a.dot(b).expect("same length"));
        for u in &all {
            for v in all.iter().filter(|v| dot0(u, v)) {
                for x in all.iter().filter(|x| dot0(x, v) && dot0(x, u)) {
                    for y in all.iter().filter(|y| dot0(u, y) && dot0(y, v)) {
                        for r in els.iter() {
                            if let Some(inst) = admissible(x, y, u, v, r) {
                                out.push(inst);
                            }
                        }
                    }
                }
            }
        }
        return (out, true);
    }
    let want = ctx.samples(DEFAULT_SAMPLES);
    let mut attempts = 0usize;
    while out.len() < want && attempts < 10_000 * want.max(1) {
        attempts += 1;
        let mut vs: Vec<RVector> = (0..4).map(|_| random_vector(ring, n, &mut ctx.rng)).collect();
        let r = ring.random_elem(&mut ctx.rng);
        let y = vs.pop().expect("four");
        let x = vs.pop().expect("four");
        let v = vs.pop().expect("four");
        let u = vs.pop().expect("four");
        if let Some(inst) = admissible(&x, &y, &u, &v, &r) {
            out.push(inst);
        }
    }
    (out, false)
}

pub fn run(ctx: &mut Ctx) -> Result<(), VerifyError> {
    let sys = ctx.gl_system(4)?;
    let rings = ctx.rings(&["f2"])?;
    let n = sys.rank() + 1;
    for ring in &rings {
        let oracle = ctx.oracle(&sys, ring);
        let (instances, exhaustive) = domain(ctx, ring, n);
        run_ring(ctx, &sys, ring, &instances, exhaustive, oracle);
    }
    Ok(())
}

fn run_ring(
    ctx: &mut Ctx,
    sys: &Arc<RootDatum>,
    ring: &Ring,
    instances: &[XeqYInstance],
    exhaustive: bool,
    oracle: Result<Option<Arc<steinberg_fp::StTable>>, String>,
) {
    let name = sys.name();
    let t = match oracle {
        Ok(t) => t,
        Err(reason) => {
            for check_name in ["xeqy", "xeqy-commutator-evaluations"] {
                if ctx.cfg.wants(check_name) {
                    let mut check = Check::new(check_name, &name, ring.spec(), "exact", exhaustive);
                    check.unavailable(reason.clone());
                    ctx.push(check);
                }
            }
            return;
        }
    };
    let mut sides = Check::new("xeqy", &name, ring.spec(), tier_name(&t), exhaustive);
    let mut paths = Check::new("xeqy-commutator-evaluations", &name, ring.spec(), tier_name(&t), exhaustive);
    for inst in instances {
        let witness = || {
            json!({
                "x": vec_json(&inst.x),
                "y": vec_json(&inst.y),
                "u": vec_json(&inst.u),
                "v": vec_json(&inst.v),
                "b": ring.format(&inst.b),
                "r": ring.format(&inst.r),
            })
        };
        match xeqy_check(sys, inst, as_oracle(&t)) {
            Ok(verdict) => {
                sides.record(Ok(verdict.sides.equal), witness);
                let failed: Vec<&str> = [
                    ("commutator = path via X", verdict.commutator_path_x.equal),
                    ("commutator = path via Y", verdict.commutator_path_y.equal),
                    ("path via X = lhs", verdict.path_x_lhs.equal),
                    ("path via Y = rhs", verdict.path_y_rhs.equal),
                ]
                .iter()
                .filter(|(_, ok)| !ok)
                .map(|(n, _)| *n)
                .collect();
                paths.record(Ok(failed.is_empty()), || {
                    let mut w = witness();
                    w["failed"] = json!(failed);
                    w
                });
            }
            Err(e) => {
                let e2 = steinberg_core::Error::Mismatch(e.to_string());
                let inconclusive = e.is_inconclusive();
                sides.record(Err(e), witness);
                if inconclusive {
                    paths.inconclusive(e2.to_string());
                } else {
                    paths.record(Err(e2), witness);
                }
            }
        }
    }
    if ctx.cfg.wants("xeqy") {
        ctx.push(sides);
    }
    if ctx.cfg.wants("xeqy-commutator-evaluations") {
        ctx.push(paths);
    }
}
