//! Steinberg relations for the matrices `t_α(ξ)`, exhaustively over finite rings.

use serde_json::json;
use steinberg_core::chevalley::unipotent;
use steinberg_core::{RMatrix, Ring, RootDatum};

use crate::context::{Check, Ctx};
use crate::VerifyError;

fn right_mul(m: &RMatrix, sys: &RootDatum, root: usize, c: &steinberg_core::Elem) -> RMatrix {
    let mut out = m.clone();
    for &(p, q, s) in sys.pattern(root).expect("matrix system") {
        let k = if s > 0 { c.clone() } else { m.ring.neg(c) };
        out.add_col_multiple(p, q, &k);
    }
    out
}

fn left_mul(m: &RMatrix, sys: &RootDatum, root: usize, c: &steinberg_core::Elem) -> RMatrix {
    let mut out = m.clone();
    for &(p, q, s) in sys.pattern(root).expect("matrix system") {
        let k = if s > 0 { c.clone() } else { m.ring.neg(c) };
        out.add_row_multiple(p, q, &k);
    }
    out
}

pub fn run(ctx: &mut Ctx) -> Result<(), VerifyError> {
    let systems = ctx.systems(&["A3"])?;
    let rings = ctx.rings(&["z/6"])?;
    for sys in &systems {
        if sys.matrix_size().is_none() {
            return Err(VerifyError::Config(format!("{} has no matrix realization", sys.name())));
        }
        for ring in &rings {
            relations(ctx, sys, ring)?;
        }
    }
    Ok(())
}

fn relations(ctx: &mut Ctx, sys: &RootDatum, ring: &Ring) -> Result<(), VerifyError> {
    let els = ring
        .elements()
        .ok_or_else(|| VerifyError::Config(format!("{ring} is not finite")))?;
    let name = sys.name();
    let spec = ring.spec().to_string();
    let mut tables = Vec::with_capacity(sys.num_roots());
    for root in 0..sys.num_roots() {
        let row: Vec<RMatrix> = els
            .iter()
            .map(|x| unipotent(sys, ring, root, x))
            .collect::<Result<_, _>>()?;
        tables.push(row);
    }
    let idx = |x: &steinberg_core::Elem| ring.index_of(x).expect("element of a finite ring");
    let fmt_root = |a: usize| json!(sys.root(a));

    if ctx.cfg.wants("S1-additivity") {
        let mut check = Check::new("S1-additivity", &name, &spec, "matrix", true);
        for a in 0..sys.num_roots() {
            for (i, r) in els.iter().enumerate() {
                for s in els.iter() {
                    let lhs = right_mul(&tables[a][i], sys, a, s);
                    let ok = lhs == tables[a][idx(&ring.add(r, s))];
                    check.record(Ok(ok), || {
                        json!({"alpha": fmt_root(a), "r": ring.format(r), "s": ring.format(s)})
                    });
                }
            }
        }
        ctx.push(check);
    }

    let want_s2 = ctx.cfg.wants("S2-commuting");
    let want_s3 = ctx.cfg.wants("S3-commutator");
    if !(want_s2 || want_s3) {
        return Ok(());
    }
    let mut s2 = Check::new("S2-commuting", &name, &spec, "matrix", true);
    let mut s3 = Check::new("S3-commutator", &name, &spec, "matrix", true);
    for a in 0..sys.num_roots() {
        for b in 0..sys.num_roots() {
            if b == sys.neg(a) {
                continue;
            }
            let sum = sys.sum(a, b);
            if (sum.is_none() && !want_s2) || (sum.is_some() && !want_s3) {
                continue;
            }
            let n = match sum {
                Some(_) => sys.structure_constant(a, b)?,
                None => 0,
            };
            for (i, r) in els.iter().enumerate() {
                for (j, s) in els.iter().enumerate() {
                    // x_α(r) x_β(s) = x_{α+β}(N rs) x_β(s) x_α(r)
                    let ab = right_mul(&tables[a][i], sys, b, s);
                    let mut ba = right_mul(&tables[b][j], sys, a, r);
                    if let Some(c) = sum {
                        let mut rs = ring.mul(r, s);
                        if n < 0 {
                            rs = ring.neg(&rs);
                        }
                        ba = left_mul(&ba, sys, c, &rs);
                    }
                    let witness = || {
                        json!({
                            "alpha": fmt_root(a),
                            "beta": fmt_root(b),
                            "r": ring.format(r),
                            "s": ring.format(s),
                        })
                    };
                    match sum {
                        Some(_) => s3.record(Ok(ab == ba), witness),
                        None => s2.record(Ok(ab == ba), witness),
                    }
                }
            }
        }
    }
    if want_s2 {
        ctx.push(s2);
    }
    if want_s3 {
        ctx.push(s3);
    }
    Ok(())
}
