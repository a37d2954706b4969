mod common;

use proptest::prelude::*;
use subdist_core::constraints::{exact_epsilon, verify_submodular, ConstraintClass};
use subdist_core::distance::exact_distance;
use subdist_core::filter::distance_bound;
use subdist_core::lowerbounds::{block_views, make_lbcross, make_lbdimin, nu, shift_nonneg};

#[test]
fn lbcross_is_tight() {
    for n in 2..=6 {
        let r = exact_distance(&make_lbcross(n).unwrap(), 1e-6).unwrap();
        let expected = ((n * n / 2) as f64) / 8.0;
        assert!((r.t_star - expected).abs() < 1e-4, "n={n}: {}", r.t_star);
    }
}

#[test]
fn lbdimin_lower_bound() {
    for n in [5, 7] {
        let r = exact_distance(&make_lbdimin(n).unwrap(), 1e-6).unwrap();
        assert!(r.t_star >= (n - 1) as f64 / 8.0 - 1e-4, "n={n}: {}", r.t_star);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sandwich(n in 1usize..=5, seed: u64, amp in 0.0f64..2.0) {
        let f = common::perturbed(n, seed, amp);
        let r = exact_distance(&f, 1e-6).unwrap();
        let e = exact_epsilon(&f, ConstraintClass::Cross).unwrap().epsilon;
        prop_assert!(r.t_star <= distance_bound(n, e) + 1e-6);
        prop_assert!(r.lower_bound <= r.t_star + 1e-9);
        let lower = block_views(&f).iter().map(nu).fold(0.0, f64::max);
        prop_assert!(lower <= r.t_star + 1e-6);
        prop_assert!(verify_submodular(&r.nearest, 1e-7).unwrap().is_none());
        prop_assert!((r.nearest.linf_distance(&f) - r.t_star).abs() < 1e-6);
        prop_assert!((r.certificate.evaluate(&f) - r.lower_bound).abs() < 1e-6);
    }

    #[test]
    fn shift_and_scale(n in 2usize..=4, seed: u64, c in 0.2f64..5.0, s in -3.0f64..3.0) {
        let f = common::random_table(n, seed);
        let d = exact_distance(&f, 1e-7).unwrap().t_star;
        let scaled = exact_distance(&f.scaled(c), 1e-7).unwrap().t_star;
        let shifted = exact_distance(&f.shifted(s), 1e-7).unwrap().t_star;
        let nonneg = exact_distance(&shift_nonneg(&f).unwrap(), 1e-7).unwrap().t_star;
        prop_assert!((scaled - c * d).abs() < 1e-5 * (1.0 + c));
        prop_assert!((shifted - d).abs() < 1e-5);
        prop_assert!((nonneg - d).abs() < 1e-5);
    }
}
