//! The relative Steinberg group as an amalgam of its `A_3` pieces.

use serde_json::json;
use steinberg_fp::amalgam::AmalgamPresentation;

use crate::context::{as_oracle, tier_name, Check, Ctx};
use crate::VerifyError;

pub fn run(ctx: &mut Ctx) -> Result<(), VerifyError> {
    let systems = ctx.systems(&["D4"])?;
    let rings = ctx.rings(&["quo(poly(f2,X),X^2)"])?;
    for sys in &systems {
        for ring in &rings {
            let ideal = ctx.ideal(ring)?;
            let spec = format!("{} mod {}", ring.spec(), ideal.label());
            let name = sys.name();
            let am = AmalgamPresentation::new(sys, ring, &ideal)?;
            let key = format!("{name}/{spec}");
            ctx.metrics.insert(format!("{key}/subsystems"), json!(am.subsystems.len()));
            ctx.metrics.insert(format!("{key}/generators"), json!(am.generators.len()));
            ctx.metrics.insert(format!("{key}/gluing_relators"), json!(am.gluing.len()));
            if ctx.cfg.wants("amalgam-relators") {
                let oracle = ctx.oracle(sys, ring);
                match oracle {
                    Err(reason) => {
                        let mut check = Check::new("amalgam-relators", &name, &spec, "exact", true);
                        check.unavailable(reason);
                        ctx.push(check);
                    }
                    Ok(t) => {
                        let mut check = Check::new("amalgam-relators", &name, &spec, tier_name(&t), true);
                        match am.check_canonical_map(as_oracle(&t)) {
                            Ok(res) => {
                                let total = (res.gluing_relators + res.component_relators) as u64;
                                let failed = res.failures.len() as u64;
                                for f in res.failures {
                                    check.fail(json!({"relator": f}));
                                }
                                check.rec.instances += total - failed;
                            }
                            Err(e) => check.record(Err(e), || json!({})),
                        }
                        ctx.push(check);
                    }
                }
            }
            if ctx.cfg.wants("amalgam-coverage") {
                let mut check = Check::new("amalgam-coverage", &name, &spec, "syntactic", true);
                let missing = am.uncovered();
                let roots_times_params = sys.num_roots() as u64
                    * (ideal.elements().map_or(0, |e| e.len() as u64 - 1))
                    * ring.size().unwrap_or(0);
                for (alpha, s, r) in &missing {
                    check.fail(json!({"root": sys.root(*alpha), "s": ring.format(s), "r": ring.format(r)}));
                }
                check.rec.instances += roots_times_params - missing.len() as u64;
                ctx.push(check);
            }
        }
    }
    Ok(())
}
