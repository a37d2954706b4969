mod common;

use common::{brute_cross, brute_full, random_table};
use proptest::prelude::*;
use subdist_core::constraints::{
    enumerate_pairs, estimate_epsilon, exact_epsilon, pair_count, verify_submodular, ConstraintClass,
};
use subdist_core::function::Cardinality;
use subdist_core::generators::gen_er;
use subdist_core::graph::{CutFunction, WeightedGraph};
use subdist_core::noise::{noisy_function, NoiseKind, NoiseModel};
use subdist_core::ExplicitFunction;

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn pair_counts_closed_form() {
    for n in 2..=6usize {
        let cross = binom(n as u64, 2) << (n - 2);
        assert_eq!(pair_count(n, ConstraintClass::Cross).unwrap(), cross);
        assert_eq!(enumerate_pairs(n, ConstraintClass::Cross).unwrap().count() as u64, cross);
        let full = (4u64.pow(n as u32) + 2u64.pow(n as u32) - 2 * 3u64.pow(n as u32)) / 2;
        assert_eq!(pair_count(n, ConstraintClass::Full).unwrap(), full);
    }
}

#[test]
fn families_nest() {
    for n in 2..=6 {
        let full: std::collections::HashSet<_> =
            enumerate_pairs(n, ConstraintClass::Full).unwrap().collect();
        let dimin: std::collections::HashSet<_> =
            enumerate_pairs(n, ConstraintClass::Dimin).unwrap().collect();
        let cross: std::collections::HashSet<_> =
            enumerate_pairs(n, ConstraintClass::Cross).unwrap().collect();
        assert!(cross.is_subset(&dimin));
        assert!(dimin.is_subset(&full));
    }
}

#[test]
fn quadratic_epsilons() {
    for n in 3..=8 {
        let f = Cardinality::new(n, |k| (k * k) as f64);
        let cross = exact_epsilon(&f, ConstraintClass::Cross).unwrap();
        let dimin = exact_epsilon(&f, ConstraintClass::Dimin).unwrap();
        assert!((cross.epsilon - 2.0).abs() < 1e-9);
        assert!((dimin.epsilon - (2 * n - 2) as f64).abs() < 1e-9);
    }
}

#[test]
fn cuts_are_submodular() {
    let g = WeightedGraph::from_triples(5, &[(0, 1, 1.0), (1, 2, 2.5), (3, 4, 0.5), (0, 4, 1.0)]).unwrap();
    assert!(verify_submodular(&CutFunction::new(g), 1e-9).unwrap().is_none());
}

#[test]
fn rademacher_cut_within_four_c() {
    let g = WeightedGraph::from_triples(6, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 2.0), (3, 4, 1.0), (4, 5, 1.0), (0, 5, 3.0)])
        .unwrap();
    for seed in 0..5 {
        let c = 0.7;
        let noise = NoiseModel::new(NoiseKind::Rademacher { c }, seed).unwrap();
        let f = noisy_function(CutFunction::new(g.clone()), noise);
        let e = exact_epsilon(&f, ConstraintClass::Full).unwrap().epsilon;
        assert!(e <= 4.0 * c + 1e-9, "seed {seed}: {e}");
    }
}

#[test]
fn estimate_is_zero_on_submodular_input() {
    for seed in 0..10 {
        let f = CutFunction::new(gen_er(9, 0.5, seed).unwrap());
        assert_eq!(estimate_epsilon(&f, 500, seed).unwrap(), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classes_match_brute_force_and_nest(n in 2usize..=6, seed: u64) {
        let f = random_table(n, seed);
        let full = exact_epsilon(&f, ConstraintClass::Full).unwrap();
        let dimin = exact_epsilon(&f, ConstraintClass::Dimin).unwrap();
        let cross = exact_epsilon(&f, ConstraintClass::Cross).unwrap();
        prop_assert!((full.epsilon - brute_full(f.table(), n)).abs() < 1e-12);
        prop_assert!((cross.epsilon - brute_cross(f.table(), n)).abs() < 1e-12);
        prop_assert!(full.epsilon >= dimin.epsilon && dimin.epsilon >= cross.epsilon);
        if let Some(w) = full.witness {
            prop_assert!((w.gap(&f) - full.epsilon).abs() < 1e-12);
        }
    }

    #[test]
    fn scale_and_shift(n in 2usize..=6, seed: u64, c in 0.1f64..10.0, s in -5.0f64..5.0) {
        let f = random_table(n, seed);
        for class in ConstraintClass::ALL {
            let e = exact_epsilon(&f, class).unwrap().epsilon;
            let scaled = exact_epsilon(&f.scaled(c), class).unwrap().epsilon;
            let shifted = exact_epsilon(&f.shifted(s), class).unwrap().epsilon;
            prop_assert!((scaled - c * e).abs() < 1e-9 * (1.0 + c * e));
            prop_assert!((shifted - e).abs() < 1e-9);
        }
    }

    #[test]
    fn estimator_never_exceeds_full(n in 2usize..=8, seed: u64, pairs in 1usize..400) {
        let f: ExplicitFunction = random_table(n, seed);
        let est = estimate_epsilon(&f, pairs, seed).unwrap();
        let full = exact_epsilon(&f, ConstraintClass::Full).unwrap().epsilon;
        prop_assert!(est <= full + 1e-12);
        prop_assert!(est >= 0.0);
    }
}
