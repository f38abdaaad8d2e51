mod common;

use std::collections::BTreeMap;

use common::*;
use holosos::bounds::{
    best_lower, check_gap, check_named, check_nonhomogeneous_product, check_one_modification,
    check_rational_modification, gap_intervals, nonhomogeneous_lower, power_sum, prime_substitution, verify_injective,
    BoundKind,
};
use holosos::{solve_h, span_rank};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn random_maps_obey_sandwich_and_gaps(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=3) {
        let mut r = rng(seed);
        let degree = if n == 3 { 2 } else { 3 };
        let f = random_minimal(&mut r, n, d, degree);
        let m = solve_h(f.clone(), 1, 1).unwrap().len() as u64;
        let (n, p) = (n as u64, f.len() as u64);
        prop_assert!(check_nonhomogeneous_product(n, p, m).unwrap().satisfied);
        prop_assert!(check_one_modification(n, p, m).unwrap().satisfied);
        prop_assert!(check_gap(n, m).unwrap().satisfied);
    }

    #[test]
    fn substitution_keeps_independence(seed in any::<u64>(), n in 1usize..=3, t in 1u32..=3, d in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_minimal(&mut r, n, d, t);
        let a = prime_substitution(n, t as u64).unwrap();
        let a: Vec<u32> = a.iter().map(|&x| x as u32).collect();
        prop_assert_eq!(span_rank(&f.substitute_powers(&a).unwrap()), f.len());
    }
}

#[test]
fn lower_bound_strictly_increasing_in_dimension() {
    for n in 1..=50u64 {
        for d in 1..n {
            assert!(nonhomogeneous_lower(n, d) < nonhomogeneous_lower(n, d + 1), "n={n} d={d}");
        }
    }
}

#[test]
fn best_lower_is_n() {
    for n in 1..=200u64 {
        assert_eq!(best_lower(n), n);
        for m in 1..=200u64 {
            assert_eq!(n * (n + 3) / 2 <= power_sum(m, 2), m >= n, "n={n} m={m}");
        }
    }
}

#[test]
fn gap_intervals_are_disjoint_and_ordered() {
    for n in 1..=60u64 {
        let gaps = gap_intervals(n);
        assert!(gaps.windows(2).all(|w| w[0].hi <= w[1].lo), "n={n}");
        // realizable ranges [lower, upper] for d <= n sit between consecutive gaps
        for d in 1..=n.min(gaps.len() as u64 - 1) {
            let g = &gaps[d as usize - 1];
            let next = &gaps[d as usize];
            assert_eq!(g.hi, nonhomogeneous_lower(n, d));
            assert_eq!(next.lo, n * (d + 1) + d);
        }
    }
}

#[test]
fn single_component_target_needs_large_power() {
    for n in 1..=20u64 {
        for c in 1..=n {
            for a in 1..nonhomogeneous_lower(n, c) {
                let rep = check_rational_modification(n, c, 1, a, 1).unwrap();
                assert!(!rep.satisfied, "n={n} c={c} a={a}");
            }
        }
    }
}

#[test]
fn primes_injective_for_small_cases() {
    for n in 1..=4usize {
        for t in 1..=4u64 {
            let a = prime_substitution(n, t).unwrap();
            assert!(verify_injective(&a, n, t as u32), "n={n} t={t} a={a:?}");
        }
    }
}

#[test]
fn named_dispatch_matches_direct_calls() {
    let args: BTreeMap<String, u64> =
        [("n", 2), ("p", 1), ("r", 4)].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    let named = check_named(BoundKind::NonhomogeneousProduct, &args).unwrap();
    assert_eq!(named, check_nonhomogeneous_product(2, 1, 4).unwrap());
    assert!(check_named(BoundKind::Gap, &args).is_err());
    for kind in BoundKind::ALL {
        assert_eq!(kind.id().parse::<BoundKind>().unwrap(), kind);
    }
}
