mod common;

use std::sync::Arc;

use common::{brute_rank, random_matroid, subsets, Kind};
use mgame_core::matroid::{validate_matroid, ExplicitMatroid, MinorView, TransversalMatroid};
use mgame_core::{ElementSet, Matroid, MatroidExt};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![
        Just(Kind::Uniform),
        Just(Kind::Graphic),
        Just(Kind::Transversal),
        Just(Kind::Explicit),
    ]
}

fn instance() -> impl Strategy<Value = (Arc<dyn Matroid>, u64)> {
    (kind(), 1usize..=8, any::<u64>()).prop_map(|(k, n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (random_matroid(&mut rng, k, n), seed)
    })
}

/// Bipartite matching by trying every injective assignment.
fn brute_matchable(family: &[Vec<usize>], set: &[usize], used: &mut Vec<bool>) -> bool {
    let Some((&e, rest)) = set.split_first() else {
        return true;
    };
    for (slot, members) in family.iter().enumerate() {
        if !used[slot] && members.contains(&e) {
            used[slot] = true;
            let ok = brute_matchable(family, rest, used);
            used[slot] = false;
            if ok {
                return true;
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_agrees_with_exhaustive_search((m, _) in instance()) {
        for s in subsets(m.ground_size()) {
            prop_assert_eq!(m.rank(&s), brute_rank(m.as_ref(), &s));
        }
    }

    #[test]
    fn rank_is_monotone_and_submodular((m, seed) in instance()) {
        let n = m.ground_size();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        use rand::Rng;
        for _ in 0..64 {
            let a = ElementSet::from_mask(rng.gen_range(0..1u64 << n));
            let b = ElementSet::from_mask(rng.gen_range(0..1u64 << n));
            let (ra, rb) = (m.rank(&a), m.rank(&b));
            prop_assert!(ra <= a.len());
            prop_assert!(m.rank(&a.union(&b)) >= ra.max(rb));
            prop_assert!(m.rank(&a.union(&b)) + m.rank(&a.intersection(&b)) <= ra + rb);
        }
    }

    #[test]
    fn views_agree_with_the_oracle((m, _) in instance()) {
        let n = m.ground_size();
        for i in subsets(n).filter(|s| m.is_independent(s)) {
            let view = m.view(&i);
            let addable: ElementSet = (0..n).filter(|&e| !i.contains(e) && m.is_independent(&i.with(e))).collect();
            prop_assert_eq!(view.addable(n), addable.clone());
            for e in 0..n {
                match view.circuit(e) {
                    None => prop_assert!(i.contains(e) || addable.contains(e)),
                    Some(c) => {
                        prop_assert!(c.contains(e) && c.without(e).is_subset(&i));
                        prop_assert!(!m.is_independent(&c));
                        for x in &c {
                            prop_assert!(m.is_independent(&c.without(x)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tabulated_families_satisfy_the_axioms((m, _) in instance()) {
        let t = ExplicitMatroid::tabulate(m.as_ref());
        prop_assert!(validate_matroid(&t.independent_sets()).is_ok());
        for s in subsets(m.ground_size()) {
            prop_assert_eq!(t.is_independent(&s), m.is_independent(&s));
        }
    }

    #[test]
    fn minor_rank_follows_the_contraction_formula((m, _) in instance(), keep in any::<u64>(), con in any::<u64>()) {
        let n = m.ground_size();
        let full = (1u64 << n) - 1;
        let contracted = ElementSet::from_mask(con & full);
        let keep = ElementSet::from_mask(keep & full);
        let minor = MinorView::new(m.clone(), &keep, &contracted).unwrap();
        let rc = brute_rank(m.as_ref(), &contracted);
        for x in subsets(minor.ground_size()) {
            let base = minor.to_base(&x);
            prop_assert_eq!(minor.rank(&x), brute_rank(m.as_ref(), &base.union(&contracted)) - rc);
            prop_assert_eq!(minor.is_independent(&x), minor.rank(&x) == x.len());
            prop_assert_eq!(minor.from_base(&base), x);
        }
    }

    #[test]
    fn transversal_independence_is_a_matching(n in 1usize..=7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t: TransversalMatroid = common::random_transversal(&mut rng, n);
        let family = t.family().to_vec();
        for s in subsets(n) {
            let mut used = vec![false; family.len()];
            prop_assert_eq!(t.is_independent(&s), brute_matchable(&family, &s.to_vec(), &mut used));
        }
    }
}

#[test]
fn enumeration_finds_every_small_matroid() {
    // loopless matroids on n elements up to isomorphism
    let counts: Vec<usize> = (1..=5).map(|n| common::all_loopless_matroids(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 4, 9, 21]);
    for m in common::all_loopless_matroids(4) {
        assert!(m.find_loop().is_none());
        let t = ExplicitMatroid::tabulate(m.as_ref());
        assert!(validate_matroid(&t.independent_sets()).is_ok());
    }
}

#[test]
fn extension_catalog_matches_direct_enumeration() {
    let catalog = common::catalog::loopless_catalog(7);
    let counts: Vec<usize> = catalog.iter().map(Vec::len).collect();
    // loopless matroids up to isomorphism: differences of the totals 1, 2, 4, 8, 17, 38, 98, 306
    assert_eq!(counts, vec![1, 1, 2, 4, 9, 21, 60, 208]);
    for (n, &count) in counts.iter().enumerate().take(7).skip(1) {
        assert_eq!(common::all_loopless_matroids(n).len(), count);
    }
    for layer in &catalog[1..] {
        for m in layer {
            let family: Vec<ElementSet> = (0u64..1 << m.n)
                .filter(|&s| m.is_independent(s as u16))
                .map(ElementSet::from_mask)
                .collect();
            assert!(validate_matroid(&family).is_ok());
        }
    }
}
