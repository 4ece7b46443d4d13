//! The `z_α(s, r)` generate a subgroup of index `|St(Φ, R/I)|`.

use serde_json::json;
use steinberg_fp::relative_subgroup_index;

use crate::context::{Check, Ctx};
use crate::VerifyError;

pub fn run(ctx: &mut Ctx) -> Result<(), VerifyError> {
    let systems = ctx.systems(&["A2"])?;
    let rings = ctx.rings(&["quo(poly(f2,X),X^2)"])?;
    for sys in &systems {
        for ring in &rings {
            let ideal = ctx.ideal(ring)?;
            let spec = format!("{} mod {}", ring.spec(), ideal.label());
            let mut check = Check::new("relative-index", &sys.name(), &spec, "exact", true);
            match relative_subgroup_index(sys, ring, &ideal, ctx.caps()) {
                Ok(report) => {
                    let key = format!("{}/{}", sys.name(), spec);
                    ctx.metrics.insert(format!("{key}/index"), json!(report.index));
                    ctx.metrics.insert(format!("{key}/quotient_order"), json!(report.quotient_order));
                    check.record(Ok(report.matches()), || json!(report));
                }
                Err(e) => check.record(Err(e), || json!({})),
            }
            ctx.push(check);
        }
    }
    Ok(())
}
