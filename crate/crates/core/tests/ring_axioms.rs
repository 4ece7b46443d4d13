use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steinberg_core::Ring;

const RINGS: &[&str] = &[
    "z",
    "z/6",
    "z/9",
    "f7",
    "quo(poly(f3,X),X^2+1)",
    "prod(f2,f3)",
    "poly(z,X)",
    "quo(poly(f2,X),X^2)",
    "quo(poly(z,i),i^2+1)",
    "loc(z,2)",
    "loc(prod(f2,f3),(0,1))",
    "semi(z,2)",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn commutative_ring_axioms(ring_idx in 0..RINGS.len(), seed in any::<u64>()) {
        let r = Ring::parse(RINGS[ring_idx]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (r.random_elem(&mut rng), r.random_elem(&mut rng), r.random_elem(&mut rng));
        prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.add(&a, &r.zero()), a.clone());
        prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
        prop_assert!(r.is_zero(&r.add(&a, &r.neg(&a))));
        prop_assert!(r.contains(&r.mul(&a, &b)));
        if let Some(inv) = r.unit_inverse(&a) {
            prop_assert!(r.is_one(&r.mul(&a, &inv)));
        }
    }

    #[test]
    fn literals_round_trip(ring_idx in 0..RINGS.len(), seed in any::<u64>()) {
        let r = Ring::parse(RINGS[ring_idx]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = r.random_elem(&mut rng);
        prop_assert_eq!(r.parse_elem(&r.format(&a)).unwrap(), a);
    }

    /// `z/n` against machine arithmetic.
    #[test]
    fn modular_matches_u64(n in 2u64..50, x in 0u64..1000, y in 0u64..1000) {
        let r = Ring::modular(n).unwrap();
        let (a, b) = (r.from_int(x as i64), r.from_int(y as i64));
        prop_assert_eq!(r.as_i64(&r.add(&a, &b)), Some(((x + y) % n) as i64));
        prop_assert_eq!(r.as_i64(&r.mul(&a, &b)), Some(((x * y) % n) as i64));
        prop_assert_eq!(r.as_i64(&r.sub(&a, &b)), Some(((x % n + n - y % n) % n) as i64));
    }
}

#[test]
fn finite_rings_have_expected_sizes() {
    for (spec, size) in [("z/6", 6), ("f5", 5), ("quo(poly(f3,X),X^2+1)", 9), ("prod(f2,f3)", 6), ("quo(poly(f2,X),X^2)", 4)] {
        let r = Ring::parse(spec).unwrap();
        assert_eq!(r.size(), Some(size), "{spec}");
        assert_eq!(r.elements().unwrap().len() as u64, size, "{spec}");
    }
    assert_eq!(Ring::parse("z").unwrap().size(), None);
}

/// In a field every nonzero element is a unit; in `z/6` exactly 1 and 5 are.
#[test]
fn units_by_exhaustion() {
    for spec in ["f2", "f3", "f5", "f7", "quo(poly(f3,X),X^2+1)"] {
        let r = Ring::parse(spec).unwrap();
        for x in r.nonzero_elements().unwrap() {
            assert!(r.is_unit(&x), "{spec}: {}", r.format(&x));
        }
    }
    let r = Ring::parse("z/6").unwrap();
    let units: Vec<i64> = r
        .elements()
        .unwrap()
        .iter()
        .filter(|x| r.is_unit(x))
        .map(|x| r.as_i64(x).unwrap())
        .collect();
    assert_eq!(units, vec![1, 5]);
}
