mod common;

use std::sync::Arc;

use common::{brute_cover_exists, brute_rank, random_matroid, subsets, Kind};
use mgame_core::union::{
    brute_force_condition2, chromatic_number, fractional_chromatic, rank_sum, w_covering, w_covering_restricted,
    CoverOutcome, WeightFunction,
};
use mgame_core::{ColorSet, ElementSet, Matroid};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![
        Just(Kind::Uniform),
        Just(Kind::Graphic),
        Just(Kind::Transversal),
        Just(Kind::Explicit),
    ]
}

/// Up to three matroids on a common ground set, weights and optional lists.
#[derive(Debug)]
struct Instance {
    matroids: Vec<Arc<dyn Matroid>>,
    weights: WeightFunction,
    allowed: Option<Vec<ColorSet>>,
}

fn instance() -> impl Strategy<Value = Instance> {
    (
        prop::collection::vec(kind(), 1..=3),
        1usize..=6,
        any::<u64>(),
        any::<bool>(),
    )
        .prop_map(|(kinds, n, seed, restricted)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let matroids: Vec<_> = kinds.iter().map(|&k| random_matroid(&mut rng, k, n)).collect();
            let d = matroids.len();
            let weights = WeightFunction((0..n).map(|_| rng.gen_range(0..=d.min(2))).collect());
            let allowed = restricted.then(|| (0..n).map(|_| (0..d).filter(|_| rng.gen_bool(0.7)).collect()).collect());
            Instance {
                matroids,
                weights,
                allowed,
            }
        })
}

fn max_density(m: &dyn Matroid) -> Ratio<usize> {
    subsets(m.ground_size())
        .filter(|s| !s.is_empty())
        .map(|s| Ratio::new(s.len(), brute_rank(m, &s)))
        .max()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn covering_exists_exactly_when_backtracking_finds_one(inst in instance()) {
        let refs: Vec<&dyn Matroid> = inst.matroids.iter().map(|m| m.as_ref() as &dyn Matroid).collect();
        let allowed = inst.allowed.as_deref();
        let expected = brute_cover_exists(&refs, &inst.weights.0, allowed);
        match w_covering_restricted(&refs, &inst.weights, allowed).unwrap() {
            CoverOutcome::Covered(c) => {
                prop_assert!(expected);
                prop_assert!(c.verify(&refs, &inst.weights, allowed).is_ok());
            }
            CoverOutcome::Infeasible(cert) => {
                prop_assert!(!expected);
                let rs = rank_sum(&refs, allowed, &cert.set);
                prop_assert_eq!(rs, cert.rank_sum);
                prop_assert_eq!(inst.weights.total(&cert.set), cert.demand);
                prop_assert!(rs < cert.demand);
            }
        }
        let report = brute_force_condition2(&refs, &inst.weights, allowed, 20).unwrap();
        prop_assert_eq!(report.holds, expected);
    }

    #[test]
    fn chromatic_number_is_least_partition((k, n, seed) in (kind(), 1usize..=7, any::<u64>())) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matroid(&mut rng, k, n);
        let chi = chromatic_number(m.as_ref()).unwrap();
        let copies = |d: usize| vec![m.as_ref() as &dyn Matroid; d];
        prop_assert!(brute_cover_exists(&copies(chi.value), &vec![1; n], None));
        prop_assert!(!brute_cover_exists(&copies(chi.value - 1), &vec![1; n], None));
        prop_assert_eq!(chi.partition.len(), chi.value);
        let unit = WeightFunction::constant(n, 1);
        let family = mgame_core::union::CoveringFamily::new(chi.partition.clone());
        prop_assert!(family.verify(&copies(chi.value), &unit, None).is_ok());
        // χ = ⌈max |A| / r(A)⌉
        prop_assert_eq!(chi.value, max_density(m.as_ref()).ceil().to_integer());
    }

    #[test]
    fn fractional_value_is_the_maximum_density((k, n, seed) in (kind(), 1usize..=7, any::<u64>())) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matroid(&mut rng, k, n);
        let f = fractional_chromatic(m.as_ref()).unwrap();
        prop_assert_eq!(f.value, max_density(m.as_ref()));
        let b = (f.value * f.a).to_integer();
        let copies = vec![m.as_ref() as &dyn Matroid; b];
        prop_assert!(f.covering.verify(&copies, &WeightFunction::constant(n, f.a), None).is_ok());
        let densest = f.densest.unwrap();
        prop_assert_eq!(Ratio::new(densest.len(), brute_rank(m.as_ref(), &densest)), f.value);
    }
}

#[test]
fn unrestricted_covering_matches_restricted_with_full_lists() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let n = rng.gen_range(1..=8);
        let m = random_matroid(&mut rng, Kind::Graphic, n);
        let refs = vec![m.as_ref() as &dyn Matroid; 3];
        let weights = WeightFunction((0..n).map(|_| rng.gen_range(0..=2)).collect());
        let full: Vec<ColorSet> = vec![ElementSet::full(3); n];
        let a = w_covering(&refs, &weights).unwrap().is_covered();
        let b = w_covering_restricted(&refs, &weights, Some(&full))
            .unwrap()
            .is_covered();
        assert_eq!(a, b);
    }
}
