//! `ψ : St(n, R) → St(n, R, I) ⋊ St(n, R/I)` respects the Steinberg relations,
//! and the commutator of two `ψ`-images matches the four-factor expression.


use serde_json::json;
use steinberg_core::ring::split;
use steinberg_core::semidirect::{SemidirectElement, SplitContext};
use steinberg_core::word::{tiered_equal, ExactOracle};
use steinberg_core::{Elem, Result as CoreResult};

use crate::context::{as_oracle, Check, Ctx};
use crate::VerifyError;

struct Oracles<'a> {
    kernel: Option<&'a dyn ExactOracle>,
    quotient: Option<&'a dyn ExactOracle>,
}

fn same(x: &SemidirectElement, y: &SemidirectElement, o: &Oracles) -> CoreResult<bool> {
    Ok(tiered_equal(&x.kernel, &y.kernel, o.kernel)?.equal
        && tiered_equal(&x.quotient, &y.quotient, o.quotient)?.equal)
}

pub fn run(ctx: &mut Ctx) -> Result<(), VerifyError> {
    let sys = ctx.gl_system(4)?;
    let n = sys.rank() + 1;
    let rings = ctx.rings(&["quo(poly(f2,X),X^2)"])?;
    for ring in &rings {
        let ideal = ctx.ideal(ring)?;
        let data = split(ring, &ideal)?.ok_or_else(|| {
            VerifyError::Config(format!("{} has no split quotient by {}", ring, ideal.label()))
        })?;
        let els: Vec<Elem> = ring
            .elements()
            .ok_or_else(|| VerifyError::Config(format!("{ring} is not finite")))?
            .to_vec();
        let kernel_table = ctx.oracle(&sys, ring);
        let quotient_table = ctx.oracle(&sys, &data.quotient);
        let (kt, qt) = match (kernel_table, quotient_table) {
            (Ok(k), Ok(q)) => (k, q),
            (Err(reason), _) | (_, Err(reason)) => {
                let mut check = Check::new("psi-S1", &sys.name(), ring.spec(), "exact", true);
                check.unavailable(reason);
                ctx.push(check);
                continue;
            }
        };
        // kernel words are compared through φ unless St(n, R) itself is tabulated
        let tier = if kt.is_some() { "exact" } else { "matrix" };
        let oracles = Oracles {
            kernel: as_oracle(&kt),
            quotient: as_oracle(&qt),
        };
        let ctxs = SplitContext::new(&sys, data);
        let spec = format!("{} mod {}", ring.spec(), ideal.label());
        let name = sys.name();
        let psi = |i: usize, j: usize, x: &Elem| ctxs.psi(i, j, x);
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();

        if ctx.cfg.wants("psi-S1") {
            let mut check = Check::new("psi-S1", &name, &spec, tier, true);
            for &(i, j) in &pairs {
                for x in &els {
                    for y in &els {
                        let outcome = (|| {
                            let lhs = ctxs.mul(&psi(i, j, x)?, &psi(i, j, y)?)?;
                            same(&lhs, &psi(i, j, &ring.add(x, y))?, &oracles)
                        })();
                        check.record(outcome, || {
                            json!({"i": i + 1, "j": j + 1, "xi": ring.format(x), "zeta": ring.format(y)})
                        });
                    }
                }
            }
            ctx.push(check);
        }

        if ctx.cfg.wants("psi-S2") {
            let mut check = Check::new("psi-S2", &name, &spec, tier, true);
            for &(i, j) in &pairs {
                for &(k, l) in pairs.iter().filter(|&&(k, l)| k != j && l != i) {
                    for x in &els {
                        for y in &els {
                            let outcome = (|| {
                                let c = ctxs.commutator(&psi(i, j, x)?, &psi(k, l, y)?)?;
                                same(&c, &ctxs.identity(), &oracles)
                            })();
                            check.record(outcome, || {
                                json!({"ij": [i + 1, j + 1], "kl": [k + 1, l + 1], "xi": ring.format(x), "zeta": ring.format(y)})
                            });
                        }
                    }
                }
            }
            ctx.push(check);
        }

        let triples: Vec<(usize, usize, usize)> = pairs
            .iter()
            .flat_map(|&(i, j)| (0..n).filter(move |&k| k != i && k != j).map(move |k| (i, j, k)))
            .collect();
        let wants = ["psi-S3", "psi-commutator-formula", "psi-S3-chain"].map(|c| ctx.cfg.wants(c));
        let mut checks = ["psi-S3", "psi-commutator-formula", "psi-S3-chain"]
            .map(|c| Check::new(c, &name, &spec, tier, true));
        for &(i, j, k) in &triples {
            for x in &els {
                for y in &els {
                    let witness = || {
                        json!({"i": i + 1, "j": j + 1, "k": k + 1, "xi": ring.format(x), "eta": ring.format(y)})
                    };
                    let a = psi(i, j, x);
                    let b = psi(j, k, y);
                    let (a, b) = match (a, b) {
                        (Ok(a), Ok(b)) => (a, b),
                        (Err(e), _) | (_, Err(e)) => {
                            checks[0].record(Err(e), witness);
                            continue;
                        }
                    };
                    let direct = ctxs.commutator(&a, &b);
                    let formula = ctxs.commutator_formula(&a, &b);
                    if wants[0] {
                        let outcome = direct
                            .as_ref()
                            .map_err(Clone::clone)
                            .and_then(|c| same(c, &psi(i, k, &ring.mul(x, y))?, &oracles));
                        checks[0].record(outcome, witness);
                    }
                    if wants[1] {
                        let outcome = match (&direct, &formula) {
                            (Ok(d), Ok(f)) => same(d, f, &oracles),
                            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                        };
                        checks[1].record(outcome, witness);
                    }
                    if wants[2] {
                        let outcome = formula.clone().and_then(|f| {
                            let chain = ctxs.psi_commutator_expression(i, j, k, x, y)?;
                            Ok(same(&f, &chain, &oracles)? && same(&chain, &psi(i, k, &ring.mul(x, y))?, &oracles)?)
                        });
                        checks[2].record(outcome, witness);
                    }
                }
            }
        }
        for (check, want) in checks.into_iter().zip(wants) {
            if want {
                ctx.push(check);
            }
        }
    }
    Ok(())
}
