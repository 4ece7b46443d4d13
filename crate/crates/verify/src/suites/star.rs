//! The two-sided relative presentation: relator families under `ι` and under
//! the natural map to transvections.

use serde_json::json;
use steinberg_core::vdk::iota;
use steinberg_core::transvection;
use steinberg_fp::star::{check_matrix_map, check_word_map, iota_map, transvection_map, RelatorCheck, RelatorFamily, StarData};

use crate::context::{as_oracle, tier_name, Check, Ctx};
use crate::VerifyError;

pub const DEFAULT_SAMPLES: usize = 200;

/// Frame orbits beyond this many tuples are sampled.
pub const FRAME_CAP: usize = 50_000;

fn families(ctx: &Ctx) -> Result<Vec<RelatorFamily>, VerifyError> {
    if ctx.cfg.families.is_empty() {
        return Ok(RelatorFamily::ALL.to_vec());
    }
    ctx.cfg
        .families
        .iter()
        .map(|f| RelatorFamily::parse(f).map_err(|e| VerifyError::Config(e.to_string())))
        .collect()
}

fn absorb(check: &mut Check, result: steinberg_core::Result<RelatorCheck>) {
    match result {
        Ok(rc) => {
            let failed = rc.failures.len() as u64;
            for f in rc.failures {
                check.fail(json!({"relator": f.relator, "detail": f.detail}));
            }
            check.rec.instances += rc.checked as u64 - failed;
        }
        Err(e) => check.record(Err(e), || json!({})),
    }
}

pub fn run(ctx: &mut Ctx) -> Result<(), VerifyError> {
    let sys = ctx.gl_system(4)?;
    let n = sys.rank() + 1;
    let rings = ctx.rings(&["quo(poly(f2,X),X^2)"])?;
    let families = families(ctx)?;
    let limit = ctx.cfg.relator_limit;
    for ring in &rings {
        let ideal = ctx.ideal(ring)?;
        let samples = ctx.samples(DEFAULT_SAMPLES);
        let cap = ctx.cfg.domain_cap.unwrap_or(FRAME_CAP);
        let data = StarData::new(n, ring, &ideal, cap, samples, &mut ctx.rng)?;
        let oracle = ctx.oracle(&sys, ring);
        let name = sys.name();
        let spec = format!("{} mod {}", ring.spec(), ideal.label());
        for &family in &families {
            let (relators, exhaustive) = data.relators(family, limit, &mut ctx.rng)?;
            let iota_name = format!("iota-{}", family.name());
            if ctx.cfg.wants(&iota_name) {
                match &oracle {
                    Err(reason) => {
                        let mut check = Check::new(&iota_name, &name, &spec, "exact", exhaustive);
                        check.unavailable(reason.clone());
                        ctx.push(check);
                    }
                    Ok(t) => {
                        let mut check = Check::new(&iota_name, &name, &spec, tier_name(t), exhaustive);
                        let map = iota_map(&sys);
                        absorb(&mut check, check_word_map(&sys, ring, &relators, exhaustive, &map, as_oracle(t)));
                        ctx.push(check);
                    }
                }
            }
            let tv_name = format!("transvection-{}", family.name());
            if ctx.cfg.wants(&tv_name) {
                let mut check = Check::new(&tv_name, &name, &spec, "matrix", exhaustive);
                absorb(&mut check, check_matrix_map(&relators, exhaustive, &transvection_map));
                ctx.push(check);
            }
        }
        if ctx.cfg.wants("kappa-iota") {
            let mut gens = data.f_generators()?;
            gens.extend(data.s_generators()?);
            let exhaustive = data.exhaustive && gens.len() <= limit;
            if gens.len() > limit {
                let mut keep = rand::seq::index::sample(&mut ctx.rng, gens.len(), limit).into_vec();
                keep.sort_unstable();
                gens = keep.into_iter().map(|k| gens[k].clone()).collect();
            }
            let mut check = Check::new("kappa-iota", &name, &spec, "matrix", exhaustive);
            for g in &gens {
                let outcome = iota(&sys, g).and_then(|w| Ok(w.phi()? == transvection(g.u(), g.v())?));
                check.record(outcome, || json!({"generator": g.label()}));
            }
            ctx.push(check);
        }
    }
    Ok(())
}
