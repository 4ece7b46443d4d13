//! The `F/S` presentation (R1–R4) and the `X` presentation (T1, T2, T3′) of
//! the relative Steinberg group, with generator domains enumerated as orbits
//! of frames `(Me_k, M*e_l, …)` under `E(n, R)`, and a checker for maps out of
//! these presentations.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;
use steinberg_core::matrix::RVector;
use steinberg_core::roots::RootDatum;
use steinberg_core::vdk::{iota, StarGen};
use steinberg_core::word::{tiered_equal, ExactOracle, Tier};
use steinberg_core::{transvection, Elem, Error, Ideal, RMatrix, Result, Ring, StWord};

/// A column of `M` or of its contragredient `M* = (Mᵗ)⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Frame {
    Col(usize),
    Dual(usize),
}

/// All (or sampled) tuples `(M f_1, …, M f_k)` for `M ∈ E(n, R)`.
#[derive(Clone, Debug)]
pub struct FrameDomain {
    pub frames: Vec<Frame>,
    pub tuples: Vec<Vec<RVector>>,
    pub exhaustive: bool,
}

fn apply_elementary(frames: &[Frame], tuple: &mut [Vec<Elem>], ring: &Ring, i: usize, j: usize, r: &Elem) {
    for (f, v) in frames.iter().zip(tuple.iter_mut()) {
        match f {
            Frame::Col(_) => v[i] = ring.add(&v[i], &ring.mul(r, &v[j])),
            Frame::Dual(_) => v[j] = ring.sub(&v[j], &ring.mul(r, &v[i])),
        }
    }
}

fn base_tuple(frames: &[Frame], ring: &Ring, n: usize) -> Vec<Vec<Elem>> {
    frames
        .iter()
        .map(|f| match f {
            Frame::Col(k) | Frame::Dual(k) => RVector::basis(ring, n, *k).entries,
        })
        .collect()
}

/// Breadth-first orbit of the standard frame. Beyond `cap` tuples the domain
/// is replaced by `samples` tuples obtained from random elementary words.
pub fn frame_orbit<R: Rng + ?Sized>(
    n: usize,
    ring: &Ring,
    frames: &[Frame],
    cap: usize,
    samples: usize,
    rng: &mut R,
) -> Result<FrameDomain> {
    if let Some(&Frame::Col(k) | &Frame::Dual(k)) = frames.iter().find(|f| match f {
        Frame::Col(k) | Frame::Dual(k) => *k >= n,
    }) {
        return Err(Error::Precondition(format!("frame index {k} out of range for n = {n}")));
    }
    let nonzero = ring
        .nonzero_elements()
        .ok_or_else(|| Error::Unsupported(format!("{ring} is not finite")))?;
    let wrap = |t: Vec<Vec<Elem>>| t.into_iter().map(|e| RVector::new(ring, e)).collect::<Vec<_>>();
    let start = base_tuple(frames, ring, n);
    let mut seen: HashSet<Vec<Vec<Elem>>> = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    let mut overflow = false;
    'bfs: while let Some(t) = queue.pop_front() {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for r in &nonzero {
                    let mut next = t.clone();
                    apply_elementary(frames, &mut next, ring, i, j, r);
                    if seen.contains(&next) {
                        continue;
                    }
                    if seen.len() >= cap {
                        overflow = true;
                        break 'bfs;
                    }
                    seen.insert(next.clone());
                    order.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    if !overflow {
        return Ok(FrameDomain {
            frames: frames.to_vec(),
            tuples: order.into_iter().map(wrap).collect(),
            exhaustive: true,
        });
    }
    let len = 4 * n * n;
    let mut tuples = Vec::with_capacity(samples);
    for _ in 0..samples {
        let mut t = base_tuple(frames, ring, n);
        for _ in 0..len {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let r = &nonzero[rng.gen_range(0..nonzero.len())];
            apply_elementary(frames, &mut t, ring, i, j, r);
        }
        tuples.push(wrap(t));
    }
    Ok(FrameDomain {
        frames: frames.to_vec(),
        tuples,
        exhaustive: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelatorFamily {
    R1,
    R2,
    R3,
    R4,
    T1,
    T2,
    T3Prime,
}

impl RelatorFamily {
    pub fn name(self) -> &'static str {
        match self {
            RelatorFamily::R1 => "R1",
            RelatorFamily::R2 => "R2",
            RelatorFamily::R3 => "R3",
            RelatorFamily::R4 => "R4",
            RelatorFamily::T1 => "T1",
            RelatorFamily::T2 => "T2",
            RelatorFamily::T3Prime => "T3'",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "R1" => RelatorFamily::R1,
            "R2" => RelatorFamily::R2,
            "R3" => RelatorFamily::R3,
            "R4" => RelatorFamily::R4,
            "T1" => RelatorFamily::T1,
            "T2" => RelatorFamily::T2,
            "T3'" | "T3p" => RelatorFamily::T3Prime,
            _ => return Err(Error::Precondition(format!("unknown relator family {s}"))),
        })
    }

    pub const ALL: [RelatorFamily; 7] = [
        RelatorFamily::R1,
        RelatorFamily::R2,
        RelatorFamily::R3,
        RelatorFamily::R4,
        RelatorFamily::T1,
        RelatorFamily::T2,
        RelatorFamily::T3Prime,
    ];
}

/// A generator occurrence, possibly inverted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub gen: StarGen,
    pub inverse: bool,
}

impl Factor {
    fn new(gen: StarGen) -> Self {
        Factor { gen, inverse: false }
    }

    fn inv(gen: StarGen) -> Self {
        Factor { gen, inverse: true }
    }
}

/// `lhs = rhs` as products of generators. The `X(u, v)` of the T family are
/// written as `F(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarRelator {
    pub family: RelatorFamily,
    pub lhs: Vec<Factor>,
    pub rhs: Vec<Factor>,
}

fn side_label(side: &[Factor], family: RelatorFamily) -> String {
    if side.is_empty() {
        return "1".into();
    }
    let t_family = matches!(
        family,
        RelatorFamily::T1 | RelatorFamily::T2 | RelatorFamily::T3Prime
    );
    side.iter()
        .map(|f| {
            let mut s = f.gen.label();
            if t_family && f.gen.is_f() {
                s.replace_range(0..1, "X");
            }
            if f.inverse {
                s.push_str("^-1");
            }
            s
        })
        .collect::<Vec<_>>()
        .join("·")
}

impl StarRelator {
    pub fn label(&self) -> String {
        format!(
            "{}: {} = {}",
            self.family.name(),
            side_label(&self.lhs, self.family),
            side_label(&self.rhs, self.family)
        )
    }

    pub fn generators(&self) -> impl Iterator<Item = &StarGen> {
        self.lhs.iter().chain(&self.rhs).map(|f| &f.gen)
    }
}

fn f_gen(u: &RVector, v: RVector, cert: &RVector) -> StarGen {
    StarGen::F {
        u: u.clone(),
        v,
        cert: cert.clone(),
    }
}

fn s_gen(u: RVector, v: &RVector, cert: &RVector) -> StarGen {
    StarGen::S {
        u,
        v: v.clone(),
        cert: cert.clone(),
    }
}

/// Generator domains of the two presentations for `(n, R, I)`.
#[derive(Clone, Debug)]
pub struct StarData {
    pub n: usize,
    pub ring: Ring,
    pub ideal: Ideal,
    /// `Iⁿ`.
    pub ideal_vectors: Vec<RVector>,
    /// `(Me_1, M*e_1)`, one per distinct `Me_1`.
    pub nice: Vec<(RVector, RVector)>,
    pub cap: usize,
    pub samples: usize,
    pub exhaustive: bool,
}

impl StarData {
    pub fn new<R: Rng + ?Sized>(
        n: usize,
        ring: &Ring,
        ideal: &Ideal,
        cap: usize,
        samples: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if n < 4 {
            return Err(Error::Precondition(format!("n = {n} < 4")));
        }
        if ideal.ring() != ring {
            return Err(Error::Mismatch("ideal belongs to another ring".into()));
        }
        let ideal_els = ideal
            .elements()
            .ok_or_else(|| Error::Unsupported(format!("ideal {} is not enumerable", ideal.label())))?;
        let count = (ideal_els.len() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if count > cap as u64 {
            return Err(Error::CapExceeded(format!("|I^{n}| = {count} exceeds {cap}")));
        }
        let mut ideal_vectors = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(ideal_vectors.len() * ideal_els.len());
            for v in &ideal_vectors {
                for x in ideal_els.iter() {
                    let mut w: Vec<Elem> = v.clone();
                    w.push(x.clone());
                    next.push(w);
                }
            }
            ideal_vectors = next;
        }
        let ideal_vectors = ideal_vectors
            .into_iter()
            .map(|e| RVector::new(ring, e))
            .collect();
        let dom = frame_orbit(n, ring, &[Frame::Col(0), Frame::Dual(0)], cap, samples, rng)?;
        let mut firsts = HashSet::new();
        let nice = dom
            .tuples
            .into_iter()
            .filter(|t| firsts.insert(t[0].clone()))
            .map(|t| (t[0].clone(), t[1].clone()))
            .collect();
        Ok(StarData {
            n,
            ring: ring.clone(),
            ideal: ideal.clone(),
            ideal_vectors,
            nice,
            cap,
            samples,
            exhaustive: dom.exhaustive,
        })
    }

    fn orthogonal(&self, u: &RVector) -> Result<Vec<RVector>> {
        let mut out = Vec::new();
        for v in &self.ideal_vectors {
            if self.ring.is_zero(&u.dot(v)?) {
                out.push(v.clone());
            }
        }
        Ok(out)
    }

    /// All `F(u, v)`.
    pub fn f_generators(&self) -> Result<Vec<StarGen>> {
        let mut out = Vec::new();
        for (u, cert) in &self.nice {
            for v in self.orthogonal(u)? {
                out.push(f_gen(u, v, cert));
            }
        }
        Ok(out)
    }

    /// All `S(u, v)`.
    pub fn s_generators(&self) -> Result<Vec<StarGen>> {
        let mut out = Vec::new();
        for (v, cert) in &self.nice {
            for u in self.orthogonal(v)? {
                out.push(s_gen(u, v, cert));
            }
        }
        Ok(out)
    }

    fn frames<R: Rng + ?Sized>(&self, frames: &[Frame], rng: &mut R) -> Result<FrameDomain> {
        frame_orbit(self.n, &self.ring, frames, self.cap, self.samples, rng)
    }

    /// The relators of `family`; when there are more than `limit`, a seeded
    /// sample of `limit` of them. The flag reports exhaustiveness.
    pub fn relators<R: Rng + ?Sized>(
        &self,
        family: RelatorFamily,
        limit: usize,
        rng: &mut R,
    ) -> Result<(Vec<StarRelator>, bool)> {
        let mut exhaustive = self.exhaustive;
        let mut out = Vec::new();
        match family {
            RelatorFamily::R1 | RelatorFamily::T1 => {
                for (u, cert) in &self.nice {
                    let orth = self.orthogonal(u)?;
                    for v in &orth {
                        for w in &orth {
                            out.push(StarRelator {
                                family,
                                lhs: vec![
                                    Factor::new(f_gen(u, v.clone(), cert)),
                                    Factor::new(f_gen(u, w.clone(), cert)),
                                ],
                                rhs: vec![Factor::new(f_gen(u, v.add(w)?, cert))],
                            });
                        }
                    }
                }
            }
            RelatorFamily::R2 => {
                for (v, cert) in &self.nice {
                    let orth = self.orthogonal(v)?;
                    for u in &orth {
                        for w in &orth {
                            out.push(StarRelator {
                                family,
                                lhs: vec![
                                    Factor::new(s_gen(u.clone(), v, cert)),
                                    Factor::new(s_gen(w.clone(), v, cert)),
                                ],
                                rhs: vec![Factor::new(s_gen(u.add(w)?, v, cert))],
                            });
                        }
                    }
                }
            }
            RelatorFamily::R3 | RelatorFamily::T2 => {
                let gens = self.f_generators()?;
                let total = gens.len() * gens.len();
                let picks: Vec<usize> = if total > limit {
                    exhaustive = false;
                    let mut p = sample(rng, total, limit).into_vec();
                    p.sort_unstable();
                    p
                } else {
                    (0..total).collect()
                };
                for k in picks {
                    let (a, b) = (&gens[k / gens.len()], &gens[k % gens.len()]);
                    out.push(conjugation_relator(family, a, b)?);
                }
                return Ok((out, exhaustive));
            }
            RelatorFamily::R4 => {
                let dom = self.frames(
                    &[Frame::Col(0), Frame::Dual(1), Frame::Dual(0), Frame::Col(1)],
                    rng,
                )?;
                exhaustive &= dom.exhaustive;
                let ideal_els = self.ideal.elements().expect("checked in new");
                for t in &dom.tuples {
                    let (u, v, ucert, vcert) = (&t[0], &t[1], &t[2], &t[3]);
                    for a in ideal_els.iter().filter(|a| !self.ring.is_zero(a)) {
                        out.push(StarRelator {
                            family,
                            lhs: vec![Factor::new(f_gen(u, v.scale(a), ucert))],
                            rhs: vec![Factor::new(s_gen(u.scale(a), v, vcert))],
                        });
                    }
                }
            }
            RelatorFamily::T3Prime => {
                let dom = self.frames(
                    &[
                        Frame::Col(0),
                        Frame::Col(1),
                        Frame::Dual(0),
                        Frame::Dual(1),
                        Frame::Dual(2),
                    ],
                    rng,
                )?;
                exhaustive &= dom.exhaustive;
                let ideal_els = self.ideal.elements().expect("checked in new");
                let ring_els = self
                    .ring
                    .elements()
                    .ok_or_else(|| Error::Unsupported(format!("{} is not finite", self.ring)))?;
                for t in &dom.tuples {
                    let (m1, m2, d1, d2, d3) = (&t[0], &t[1], &t[2], &t[3], &t[4]);
                    for a in ideal_els.iter().filter(|a| !self.ring.is_zero(a)) {
                        let va = d3.scale(a);
                        for r in ring_els.iter() {
                            let u = m1.scale(r).add(m2)?;
                            out.push(StarRelator {
                                family,
                                lhs: vec![Factor::new(f_gen(&u, va.clone(), d2))],
                                rhs: vec![
                                    Factor::new(f_gen(m1, va.scale(r), d1)),
                                    Factor::new(f_gen(m2, va.clone(), d2)),
                                ],
                            });
                        }
                    }
                }
            }
        }
        if out.len() > limit {
            exhaustive = false;
            let mut p = sample(rng, out.len(), limit).into_vec();
            p.sort_unstable();
            out = p.into_iter().map(|k| out[k].clone()).collect();
        }
        Ok((out, exhaustive))
    }
}

/// `F(u, v) F(u′, v′) F(u, v)⁻¹ = F(t(u, v)u′, t(u, v)* v′)`.
fn conjugation_relator(family: RelatorFamily, a: &StarGen, b: &StarGen) -> Result<StarRelator> {
    let (u, v) = (a.u(), a.v());
    let StarGen::F {
        u: u2,
        v: v2,
        cert: c2,
    } = b
    else {
        return Err(Error::Precondition("conjugation relators act on F generators".into()));
    };
    let r = &u.ring;
    // t(u, v)x = x + u(vᵗx), t(u, v)*y = y − v(uᵗy)
    let tu = u2.add(&u.scale(&v.dot(u2)?))?;
    let tv = v2.sub(&v.scale(&u.dot(v2)?))?;
    let tc = c2.sub(&v.scale(&u.dot(c2)?))?;
    debug_assert!(r.is_one(&tc.dot(&tu)?));
    Ok(StarRelator {
        family,
        lhs: vec![
            Factor::new(a.clone()),
            Factor::new(b.clone()),
            Factor::inv(a.clone()),
        ],
        rhs: vec![Factor::new(StarGen::F {
            u: tu,
            v: tv,
            cert: tc,
        })],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorFailure {
    pub relator: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorCheck {
    pub family: RelatorFamily,
    pub checked: usize,
    pub tier: &'static str,
    pub exhaustive: bool,
    pub failures: Vec<RelatorFailure>,
}

fn side_word(
    system: &Arc<RootDatum>,
    ring: &Ring,
    side: &[Factor],
    map: &dyn Fn(&StarGen) -> Result<StWord>,
) -> Result<StWord> {
    let mut w = StWord::identity(system, ring);
    for f in side {
        let g = map(&f.gen)?;
        w = w.mul(&if f.inverse { g.inverse() } else { g })?;
    }
    Ok(w)
}

/// Checks `map(lhs) = map(rhs)` for every relator, at the exact tier when an
/// oracle is given and through `φ` otherwise.
pub fn check_word_map(
    system: &Arc<RootDatum>,
    ring: &Ring,
    relators: &[StarRelator],
    exhaustive: bool,
    map: &dyn Fn(&StarGen) -> Result<StWord>,
    oracle: Option<&dyn ExactOracle>,
) -> Result<RelatorCheck> {
    let family = relators.first().map(|r| r.family).unwrap_or(RelatorFamily::R1);
    let mut failures = Vec::new();
    for rel in relators {
        let lhs = side_word(system, ring, &rel.lhs, map)?;
        let rhs = side_word(system, ring, &rel.rhs, map)?;
        let verdict = tiered_equal(&lhs, &rhs, oracle)?;
        if !verdict.equal {
            failures.push(RelatorFailure {
                relator: rel.label(),
                detail: format!("lhs = {}, rhs = {}", lhs.format(), rhs.format()),
            });
        }
    }
    Ok(RelatorCheck {
        family,
        checked: relators.len(),
        tier: if oracle.is_some() { Tier::Exact } else { Tier::Matrix }.as_str(),
        exhaustive,
        failures,
    })
}

/// Checks the relators for a map into matrices.
pub fn check_matrix_map(
    relators: &[StarRelator],
    exhaustive: bool,
    map: &dyn Fn(&StarGen) -> Result<RMatrix>,
) -> Result<RelatorCheck> {
    let family = relators.first().map(|r| r.family).unwrap_or(RelatorFamily::R1);
    let side = |s: &[Factor]| -> Result<Option<RMatrix>> {
        let mut acc: Option<RMatrix> = None;
        for f in s {
            let mut m = map(&f.gen)?;
            if f.inverse {
                m = m.inverse()?;
            }
            acc = Some(match acc {
                None => m,
                Some(a) => a.mul(&m)?,
            });
        }
        Ok(acc)
    };
    let mut failures = Vec::new();
    for rel in relators {
        let (l, r) = (side(&rel.lhs)?, side(&rel.rhs)?);
        let equal = match (&l, &r) {
            (Some(a), Some(b)) => a == b,
            (Some(a), None) | (None, Some(a)) => a.is_identity(),
            (None, None) => true,
        };
        if !equal {
            failures.push(RelatorFailure {
                relator: rel.label(),
                detail: "matrix images differ".into(),
            });
        }
    }
    Ok(RelatorCheck {
        family,
        checked: relators.len(),
        tier: Tier::Matrix.as_str(),
        exhaustive,
        failures,
    })
}

/// `ι`: `F ↦ X(u, v)`, `S ↦ Y(u, v)` in `St(A_{n−1}, R)`.
pub fn iota_map(system: &Arc<RootDatum>) -> impl Fn(&StarGen) -> Result<StWord> + '_ {
    move |g| iota(system, g)
}

/// The natural map to `E(n, R)`: both generator types go to `t(u, v)`.
pub fn transvection_map(g: &StarGen) -> Result<RMatrix> {
    transvection(g.u(), g.v())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn nice_columns_over_f2() {
        let r = Ring::parse("f2").unwrap();
        let i = Ideal::parse(&r, "1").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let d = StarData::new(4, &r, &i, 100_000, 10, &mut rng).unwrap();
        assert_eq!(d.nice.len(), 15);
        assert!(d.exhaustive);
        for (u, c) in &d.nice {
            assert!(r.is_one(&c.dot(u).unwrap()));
        }
    }

    #[test]
    fn frame_orbit_falls_back_to_samples() {
        let r = Ring::parse("f3").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = frame_orbit(4, &r, &[Frame::Col(0), Frame::Col(1)], 10, 7, &mut rng).unwrap();
        assert!(!d.exhaustive);
        assert_eq!(d.tuples.len(), 7);
    }

    #[test]
    fn transvections_satisfy_the_relators() {
        let r = Ring::parse("f2").unwrap();
        let i = Ideal::parse(&r, "1").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d = StarData::new(4, &r, &i, 100_000, 10, &mut rng).unwrap();
        for fam in RelatorFamily::ALL {
            let (rels, _) = d.relators(fam, 300, &mut rng).unwrap();
            assert!(!rels.is_empty(), "{fam:?}");
            let c = check_matrix_map(&rels, false, &transvection_map).unwrap();
            assert!(c.failures.is_empty(), "{fam:?}: {:?}", c.failures.first());
        }
    }
}
