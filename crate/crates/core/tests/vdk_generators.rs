use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use steinberg_core::chevalley::random_word;
use steinberg_core::ring::{split, Ideal};
use steinberg_core::semidirect::{SemidirectElement, SplitContext};
use steinberg_core::vdk::{canonical_decomposition, pivots, vector_sum, x_gen, x_small, x_small_at, y_gen};
use steinberg_core::{RMatrix, RVector, Ring, RootDatum, StWord};

/// `1 + u vᵗ`, entry by entry.
fn rank_one_update(ring: &Ring, u: &RVector, v: &RVector) -> RMatrix {
    let n = u.len();
    let mut m = RMatrix::zero(ring, n);
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { ring.one() } else { ring.zero() };
            m.set(i, j, ring.add(&delta, &ring.mul(&u.entries[i], &v.entries[j])));
        }
    }
    m
}

fn random_vector(ring: &Ring, n: usize, rng: &mut ChaCha8Rng) -> RVector {
    RVector::new(ring, (0..n).map(|_| ring.random_elem(rng)).collect())
}

/// Orthogonal `(u, v)` with at least one zero coordinate in `v`, by rejection.
fn orthogonal_pair(ring: &Ring, n: usize, rng: &mut ChaCha8Rng) -> (RVector, RVector) {
    loop {
        let u = random_vector(ring, n, rng);
        let mut v = random_vector(ring, n, rng);
        v.entries[rng.gen_range(0..n)] = ring.zero();
        if ring.is_zero(&u.dot(&v).unwrap()) {
            return (u, v);
        }
    }
}

/// Unimodular `u` with certificate `w` and `v ⟂ u`.
fn certified_triple(ring: &Ring, n: usize, rng: &mut ChaCha8Rng) -> (RVector, RVector, RVector) {
    let (u, w) = loop {
        let u = random_vector(ring, n, rng);
        let w = random_vector(ring, n, rng);
        if ring.is_one(&w.dot(&u).unwrap()) {
            break (u, w);
        }
    };
    let v = loop {
        let v = random_vector(ring, n, rng);
        if ring.is_zero(&u.dot(&v).unwrap()) {
            break v;
        }
    };
    (u, v, w)
}

fn setup(n: usize) -> (Arc<RootDatum>, Ring) {
    (RootDatum::parse(&format!("A{}", n - 1)).unwrap(), Ring::parse("z/6").unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn x_small_lifts_the_rank_one_update(seed in any::<u64>(), n in 3usize..6) {
        let (sys, ring) = setup(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v) = orthogonal_pair(&ring, n, &mut rng);
        let target = rank_one_update(&ring, &u, &v);
        prop_assert_eq!(x_small(&sys, &u, &v).unwrap().phi().unwrap(), target.clone());
        for p in pivots(&u, &v) {
            prop_assert_eq!(x_small_at(&sys, &u, &v, p).unwrap().phi().unwrap(), target.clone());
        }
    }

    #[test]
    fn canonical_terms_are_orthogonal_and_sum_to_v(seed in any::<u64>(), n in 4usize..7) {
        let (_, ring) = setup(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (v, u, w) = certified_triple(&ring, n, &mut rng);
        let terms = canonical_decomposition(&u, &v, &w).unwrap();
        prop_assert_eq!(terms.len(), n * (n - 1) / 2);
        for t in &terms {
            prop_assert!(ring.is_zero(&t.dot(&v).unwrap()));
            prop_assert!(t.zero_count() >= n - 2);
        }
        prop_assert_eq!(vector_sum(&ring, n, &terms).unwrap(), u);
    }

    #[test]
    fn x_gen_and_y_gen_lift_transvections(seed in any::<u64>(), n in 4usize..6) {
        let (sys, ring) = setup(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v, w) = certified_triple(&ring, n, &mut rng);
        prop_assert_eq!(x_gen(&sys, &u, &v, &w).unwrap().phi().unwrap(), rank_one_update(&ring, &u, &v));
        prop_assert_eq!(y_gen(&sys, &v, &u, &w).unwrap().phi().unwrap(), rank_one_update(&ring, &v, &u));
    }

    /// `X(u, v) X(u, v′)` and `X(u, v + v′)` have the same image.
    #[test]
    fn x_gen_is_additive_in_v(seed in any::<u64>()) {
        let (sys, ring) = setup(4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v, w) = certified_triple(&ring, 4, &mut rng);
        let v2 = loop {
            let c = random_vector(&ring, 4, &mut rng);
            if ring.is_zero(&u.dot(&c).unwrap()) {
                break c;
            }
        };
        let lhs = x_gen(&sys, &u, &v, &w).unwrap().mul(&x_gen(&sys, &u, &v2, &w).unwrap()).unwrap();
        let rhs = x_gen(&sys, &u, &v.add(&v2).unwrap(), &w).unwrap();
        prop_assert_eq!(lhs.phi().unwrap(), rhs.phi().unwrap());
    }
}

#[test]
fn x_gen_over_the_integers() {
    let (sys, _) = setup(4);
    let z = Ring::parse("z").unwrap();
    let u = RVector::from_ints(&z, &[3, 2, 0, 5]);
    let w = RVector::from_ints(&z, &[1, -1, 0, 0]);
    let v = RVector::from_ints(&z, &[2, -3, 7, 0]);
    assert_eq!(x_gen(&sys, &u, &v, &w).unwrap().phi().unwrap(), rank_one_update(&z, &u, &v));
}

#[test]
fn x_small_needs_a_zero_coordinate() {
    let (sys, ring) = setup(3);
    let u = RVector::from_ints(&ring, &[1, 1, 1]);
    let v = RVector::from_ints(&ring, &[1, 1, 4]);
    assert!(x_small(&sys, &u, &v).is_err());
}

fn split_context() -> SplitContext {
    let sys = RootDatum::parse("A3").unwrap();
    let ring = Ring::parse("quo(poly(f3,X),X^2)").unwrap();
    let ideal = Ideal::parse(&ring, "X").unwrap();
    SplitContext::new(&sys, split(&ring, &ideal).unwrap().expect("splits"))
}

fn random_element(ctx: &SplitContext, rng: &mut ChaCha8Rng) -> SemidirectElement {
    let ring = &ctx.split.ring;
    let mut kernel = StWord::identity(&ctx.system, ring);
    for _ in 0..2 {
        let i = rng.gen_range(0..4);
        let j = (i + rng.gen_range(1..4)) % 4;
        kernel = kernel.mul(&ctx.kernel_generator(i, j, &ring.random_elem(rng)).unwrap()).unwrap();
    }
    SemidirectElement {
        kernel,
        quotient: random_word(&ctx.system, &ctx.split.quotient, 3, rng),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn semidirect_commutator_matches_the_closed_form(seed in any::<u64>()) {
        let ctx = split_context();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&ctx, &mut rng);
        let y = random_element(&ctx, &mut rng);
        let direct = ctx.to_word(&ctx.commutator(&x, &y).unwrap()).unwrap();
        let formula = ctx.to_word(&ctx.commutator_formula(&x, &y).unwrap()).unwrap();
        prop_assert_eq!(direct.phi().unwrap(), formula.phi().unwrap());
        let flat = StWord::commutator(&ctx.to_word(&x).unwrap(), &ctx.to_word(&y).unwrap()).unwrap();
        prop_assert_eq!(direct.phi().unwrap(), flat.phi().unwrap());
    }

    #[test]
    fn psi_lifts_elementary_matrices(seed in any::<u64>()) {
        let ctx = split_context();
        let ring = ctx.split.ring.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = rng.gen_range(0..4);
        let j = (i + rng.gen_range(1..4)) % 4;
        let xi = ring.random_elem(&mut rng);
        let image = ctx.to_word(&ctx.psi(i, j, &xi).unwrap()).unwrap().phi().unwrap();
        prop_assert_eq!(image, RMatrix::elementary(&ring, 4, i, j, &xi));
    }
}
