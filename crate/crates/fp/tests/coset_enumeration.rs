use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;
use steinberg_fp::{enumerate_cosets, EnumerationCaps, Presentation};

/// Order of the permutation group generated by `gens`, by breadth-first closure.
fn closure_order(gens: &[Vec<usize>]) -> usize {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

fn power(p: &Presentation, g: &str, k: usize) -> Vec<usize> {
    p.word(&vec![g; k].join(" ")).unwrap()
}

/// `⟨r, s | rⁿ, s², (rs)²⟩`, acting faithfully on `n` points for `n ≥ 3`.
fn dihedral(n: usize) -> Presentation {
    let mut p = Presentation::free(&["r", "s"]);
    p.add_relator(power(&p, "r", n)).unwrap();
    p.add_relator(power(&p, "s", 2)).unwrap();
    p.add_relator(p.word("r s r s").unwrap()).unwrap();
    p
}

fn dihedral_permutations(n: usize) -> Vec<Vec<usize>> {
    vec![(0..n).map(|i| (i + 1) % n).collect(), (0..n).map(|i| (n - i) % n).collect()]
}

#[test]
fn symmetric_group_on_three_letters() {
    let mut p = Presentation::free(&["a", "b"]);
    p.add_relator(power(&p, "a", 2)).unwrap();
    p.add_relator(power(&p, "b", 3)).unwrap();
    p.add_relator(p.word("a b a b").unwrap()).unwrap();
    let t = enumerate_cosets(&p, &[], EnumerationCaps::default()).unwrap();
    assert_eq!(t.len(), closure_order(&[vec![1, 0, 2], vec![1, 2, 0]]));
    t.verify(&p.relators).unwrap();
    let h = enumerate_cosets(&p, &[p.word("a").unwrap()], EnumerationCaps::default()).unwrap();
    assert_eq!(h.len(), 3);
    assert_eq!(h.trace(0, &p.word("a").unwrap()), 0);
}

#[test]
fn cap_is_reported() {
    let p = dihedral(40);
    let err = enumerate_cosets(&p, &[], EnumerationCaps { max_cosets: 10 }).unwrap_err();
    assert!(matches!(err, steinberg_core::Error::CapExceeded(_)), "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dihedral_orders_match_permutation_closure(n in 3usize..30) {
        let p = dihedral(n);
        let t = enumerate_cosets(&p, &[], EnumerationCaps::default()).unwrap();
        prop_assert_eq!(t.len(), closure_order(&dihedral_permutations(n)));
        prop_assert!(t.verify(&p.relators).is_ok());
    }

    #[test]
    fn abelian_products(m in 1usize..12, n in 1usize..12) {
        let mut p = Presentation::free(&["a", "b"]);
        p.add_relator(power(&p, "a", m)).unwrap();
        p.add_relator(power(&p, "b", n)).unwrap();
        p.add_relator(p.word("a b a^-1 b^-1").unwrap()).unwrap();
        let t = enumerate_cosets(&p, &[], EnumerationCaps::default()).unwrap();
        prop_assert_eq!(t.len(), m * n);
        let h = enumerate_cosets(&p, &[p.word("a").unwrap()], EnumerationCaps::default()).unwrap();
        prop_assert_eq!(h.len(), n);
    }

    #[test]
    fn serialization_round_trips(n in 2usize..20) {
        let t = enumerate_cosets(&dihedral(n), &[], EnumerationCaps::default()).unwrap();
        let back = steinberg_fp::CosetTable::from_bytes(&t.to_bytes()).unwrap();
        prop_assert_eq!(back, t);
    }
}
