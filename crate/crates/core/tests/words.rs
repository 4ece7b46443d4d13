use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steinberg_core::chevalley::{random_word, unipotent};
use steinberg_core::{RMatrix, Ring, RootDatum, StWord};

const CASES: &[(&str, &str)] = &[
    ("A2", "z"),
    ("A3", "z/6"),
    ("A3", "quo(poly(f2,X),X^2)"),
    ("A4", "poly(z,X)"),
    ("D4", "z/4"),
    ("D5", "f3"),
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn phi_is_a_homomorphism(case in 0..CASES.len(), seed in any::<u64>(), l1 in 0usize..8, l2 in 0usize..8) {
        let (s, r) = CASES[case];
        let sys = RootDatum::parse(s).unwrap();
        let ring = Ring::parse(r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_word(&sys, &ring, l1, &mut rng);
        let b = random_word(&sys, &ring, l2, &mut rng);
        prop_assert_eq!(a.mul(&b).unwrap().phi().unwrap(), a.phi().unwrap().mul(&b.phi().unwrap()).unwrap());
        prop_assert!(a.mul(&a.inverse()).unwrap().phi().unwrap().is_identity());
        prop_assert_eq!(a.simplify().phi().unwrap(), a.phi().unwrap());
    }

    #[test]
    fn transpose_is_an_anti_homomorphism(seed in any::<u64>(), len in 0usize..10) {
        let sys = RootDatum::parse("A3").unwrap();
        let ring = Ring::parse("z/6").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&sys, &ring, len, &mut rng);
        prop_assert_eq!(w.transpose_anti().unwrap().phi().unwrap(), w.phi().unwrap().transpose());
    }

    #[test]
    fn contragredient_inverts_the_transpose(seed in any::<u64>(), len in 0usize..8) {
        let sys = RootDatum::parse("A3").unwrap();
        let ring = Ring::parse("z").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&sys, &ring, len, &mut rng);
        let m = w.phi().unwrap();
        prop_assert!(w.phi_contragredient().unwrap().transpose().mul(&m).unwrap().is_identity());
    }
}

/// In type A, `t_{e_i − e_j}(r)` is the elementary matrix `1 + r e_{ij}`.
#[test]
fn type_a_unipotents_are_elementary() {
    let ring = Ring::parse("z/7").unwrap();
    for n in 2..6 {
        let sys = RootDatum::parse(&format!("A{}", n - 1)).unwrap();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let root = sys.a_index(i, j).unwrap();
                for x in ring.elements().unwrap().iter() {
                    assert_eq!(
                        unipotent(&sys, &ring, root, x).unwrap(),
                        RMatrix::elementary(&ring, n, i, j, x)
                    );
                }
            }
        }
    }
}

/// The matrices of type D preserve the split quadratic form `Σ x_i x_{2l−1−i}`:
/// `Mᵗ J M = J` for the Gram matrix `J` of its polarization, and the diagonal
/// of `Mᵗ Q M` stays zero for the upper-triangular form `Q`.
#[test]
fn type_d_unipotents_preserve_the_split_form() {
    let ring = Ring::parse("z").unwrap();
    for rank in 4..6 {
        let sys = RootDatum::parse(&format!("D{rank}")).unwrap();
        let n = sys.matrix_size().unwrap();
        assert_eq!(n, 2 * rank);
        let mut j = RMatrix::zero(&ring, n);
        let mut q = RMatrix::zero(&ring, n);
        for i in 0..rank {
            j.set(i, n - 1 - i, ring.one());
            j.set(n - 1 - i, i, ring.one());
            q.set(i, n - 1 - i, ring.one());
        }
        for root in 0..sys.num_roots() {
            let m = unipotent(&sys, &ring, root, &ring.from_int(3)).unwrap();
            assert_eq!(m.transpose().mul(&j).unwrap().mul(&m).unwrap(), j, "root {root}");
            let qm = m.transpose().mul(&q).unwrap().mul(&m).unwrap();
            for i in 0..n {
                assert!(ring.is_zero(qm.get(i, i)), "root {root}");
            }
        }
    }
}

#[test]
fn z_generator_is_conjugated_letter() {
    let sys = RootDatum::parse("A2").unwrap();
    let ring = Ring::parse("z/5").unwrap();
    let (s, r) = (ring.from_int(2), ring.from_int(3));
    let alpha = sys.a_index(0, 1).unwrap();
    let z = steinberg_core::word::z_generator(&sys, &ring, alpha, &s, &r);
    let g = StWord::letter(&sys, &ring, sys.neg(alpha), r.clone());
    let expected = StWord::conjugate(&g, &StWord::letter(&sys, &ring, alpha, s)).unwrap();
    assert_eq!(z.phi().unwrap(), expected.phi().unwrap());
}
