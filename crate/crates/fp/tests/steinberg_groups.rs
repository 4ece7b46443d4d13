use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steinberg_core::chevalley::random_word;
use steinberg_core::{Ideal, Ring, RootDatum};
use steinberg_fp::amalgam::AmalgamPresentation;
use steinberg_fp::{k2_compute, relative_subgroup_index, steinberg_presentation, EnumerationCaps, StTable};

/// Relator count over a field of `q` elements: one commutator relator per
/// `(α, β ≠ −α, r, s)` and one additivity relator per `(α, r, s)` with
/// `r, s, r + s ≠ 0`.
fn field_relator_count(roots: usize, q: usize) -> usize {
    roots * (roots - 1) * (q - 1) * (q - 1) + roots * (q - 1) * (q - 2)
}

#[test]
fn relator_counts_over_fields() {
    for (sys, ring, q) in [("A2", "f2", 2), ("A2", "f3", 3), ("A3", "f2", 2), ("A2", "f5", 5), ("D4", "f2", 2)] {
        let s = RootDatum::parse(sys).unwrap();
        let p = steinberg_presentation(&s, &Ring::parse(ring).unwrap()).unwrap();
        assert_eq!(p.generators.len(), s.num_roots() * (q - 1), "{sys}/{ring}");
        assert_eq!(p.presentation.relators.len(), field_relator_count(s.num_roots(), q), "{sys}/{ring}");
    }
}

#[test]
fn small_steinberg_groups_are_special_linear() {
    let caps = EnumerationCaps::default();
    let a2 = RootDatum::parse("A2").unwrap();
    for (ring, order) in [("f2", 168), ("f3", 5616)] {
        let k = k2_compute(&a2, &Ring::parse(ring).unwrap(), caps).unwrap();
        assert_eq!(k.st_order, order, "{ring}");
        assert_eq!(k.image_order, order, "{ring}");
        assert_eq!(k.kernel_order, 1, "{ring}");
        assert!(k.central && k.factorizes());
    }
}

/// `|St(A_2, Z/4) / ⟨z_α(2, r)⟩| = |St(A_2, F_2)|`.
#[test]
fn relative_subgroup_has_quotient_index() {
    let a2 = RootDatum::parse("A2").unwrap();
    let ring = Ring::parse("z/4").unwrap();
    let ideal = Ideal::parse(&ring, "2").unwrap();
    let rep = relative_subgroup_index(&a2, &ring, &ideal, EnumerationCaps::default()).unwrap();
    assert_eq!(rep.index, 168);
    assert!(rep.matches());
}

#[test]
fn d4_amalgam_covers_every_generator() {
    let d4 = RootDatum::parse("D4").unwrap();
    let ring = Ring::parse("f2").unwrap();
    let ideal = Ideal::parse(&ring, "1").unwrap();
    let a = AmalgamPresentation::new(&d4, &ring, &ideal).unwrap();
    assert!(a.subsystems.len() > 1);
    assert!(!a.gluing.is_empty());
    assert!(a.uncovered().is_empty());
    assert!(a.check_canonical_map(None).unwrap().failures.is_empty());
}

#[test]
fn amalgam_rejects_small_rank() {
    let a2 = RootDatum::parse("A2").unwrap();
    let ring = Ring::parse("f2").unwrap();
    let ideal = Ideal::parse(&ring, "1").unwrap();
    assert!(AmalgamPresentation::new(&a2, &ring, &ideal).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// With `K_2(3, F_2)` trivial, a word is the identity exactly when its
    /// matrix is, and the regular representation composes as words do.
    #[test]
    fn exact_table_agrees_with_matrices(seed in any::<u64>(), l1 in 0usize..12, l2 in 0usize..12) {
        thread_local! {
            static TABLE: StTable = StTable::enumerate(
                &RootDatum::parse("A2").unwrap(),
                &Ring::parse("f2").unwrap(),
                EnumerationCaps::default(),
            ).unwrap();
        }
        TABLE.with(|st| {
            let sys = st.presentation.system.clone();
            let ring = st.presentation.ring.clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_word(&sys, &ring, l1, &mut rng);
            let b = random_word(&sys, &ring, l2, &mut rng);
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(st.element(&ab).unwrap() == 0, ab.phi().unwrap().is_identity());
            let (pa, pb, pab) = (st.eval_word(&a).unwrap(), st.eval_word(&b).unwrap(), st.eval_word(&ab).unwrap());
            for c in 0..pa.len() {
                prop_assert_eq!(pab[c], pb[pa[c] as usize]);
            }
            prop_assert_eq!(st.element(&a).unwrap(), pa[0] as usize);
            Ok(())
        })?;
    }
}
