mod common;

use common::*;
use holosos::isometry::{identity_difference, multiset_count, one_plus};
use holosos::rankdecomp::extract_sos_ordered;
use holosos::{
    affine_split, divide_by_norm, extract_sos, grams_equal, modification_form, solve_h, span_rank, tensor_rank_e,
    verify_identity, Error, HermitianForm, HoloMap, HoloPoly, ModificationSpec, ScaledMap, SquaredNorm,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 16, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn solved_h_satisfies_identity(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=3, b in 1u32..=2, c in 1u32..=2) {
        let mut r = rng(seed);
        let degree = if n == 3 { 1 } else { 2 };
        let f = random_minimal(&mut r, n, d, degree);
        let h = solve_h(f.clone(), b, c).unwrap();
        prop_assert!(h.is_minimal());
        prop_assert!(h.vanishes_at_origin());
        prop_assert!(verify_identity(&f, &h, 1, b, c).unwrap());
    }

    #[test]
    fn solution_is_unique_up_to_unitary(seed in any::<u64>(), n in 1usize..=2, d in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_minimal(&mut r, n, d, 2);
        let h = solve_h(f.clone(), 1, 1).unwrap();

        // a different extraction order
        let split = affine_split(&modification_form(&ModificationSpec::new(f.clone(), 1, 1, 1).unwrap()));
        let mut order: Vec<usize> = (0..split.remainder.basis().len()).collect();
        order.shuffle(&mut r);
        let h2 = extract_sos_ordered(&split.remainder, &order).unwrap();
        prop_assert!(grams_equal(&h, &h2));
        prop_assert_eq!(h.len(), h2.len());

        // the expanded, non-minimal map (z, f, z ⊗ f)
        let z = HoloMap::identity(n);
        let expanded = z.oplus(&f).unwrap().oplus(&z.tensor(&f).unwrap()).unwrap();
        prop_assert!(grams_equal(&h, &expanded));
        prop_assert_eq!(h.len(), span_rank(&expanded));
    }

    #[test]
    fn tensor_rank_within_bounds(seed in any::<u64>(), n in 1usize..=2, d in 1usize..=3, c in 1u32..=3) {
        let mut r = rng(seed);
        let f = random_minimal(&mut r, n, d, 2);
        let e = tensor_rank_e(&f, c).unwrap() as u64;
        let d = f.len() as u64;
        prop_assert!(c as u64 * d <= e && e <= multiset_count(d, c as u64));
        // second route: rank of (1, f)^{⊗c} minus the constant
        prop_assert_eq!(e as usize, span_rank(&f.with_one().tensor_pow(c)) - 1);
    }

    #[test]
    fn division_by_norm_round_trip(seed in any::<u64>(), n in 1usize..=3, k in 0u32..=2) {
        prop_assume!(n + k as usize <= 4);
        let mut r = rng(seed);
        let a = random_hermitian(&mut r, n, k, k);
        let s = HermitianForm::norm_z(n).mul(&a).unwrap();
        prop_assert_eq!(divide_by_norm(&s).unwrap(), Some(a));
    }

    #[test]
    fn powered_factor_equals_reduced_factor(seed in any::<u64>(), n in 1usize..=2, d in 1usize..=2, b in 1u32..=2, c in 2u32..=3) {
        let mut r = rng(seed);
        let f = random_minimal(&mut r, n, d, if c == 3 { 1 } else { 2 });
        let split = affine_split(&one_plus(&f).pow(c).unwrap());
        prop_assert!(split.ok);
        let g = extract_sos(&split.remainder).unwrap();
        let direct = modification_form(&ModificationSpec::new(f.clone(), 1, b, c).unwrap());
        let reduced = modification_form(&ModificationSpec::new(g.clone(), 1, b, 1).unwrap());
        prop_assert_eq!(direct, reduced);
        prop_assert_eq!(g.len(), tensor_rank_e(&f, c).unwrap());
    }
}

#[test]
fn non_divisible_forms() {
    // |z_1|^2 is not a multiple of |z_1|^2 + |z_2|^2
    let s = HermitianForm::norm_form(&HoloMap::new(2, vec![HoloPoly::var(2, 0)]).unwrap());
    assert_eq!(divide_by_norm(&s).unwrap(), None);
    // not bihomogeneous
    let s = one_plus(&HoloMap::identity(2));
    assert_eq!(divide_by_norm(&s), Err(Error::NotBihomogeneous));
}

#[test]
fn rejected_modifiers() {
    let shifted =
        HoloMap::new(1, vec![HoloPoly::from_terms(1, [(vec![0], 1.into()), (vec![1], 1.into())]).unwrap()]).unwrap();
    assert_eq!(solve_h(shifted, 1, 1).unwrap_err(), Error::NonzeroAtOrigin);
    let doubled = HoloMap::new(1, vec![HoloPoly::var(1, 0), HoloPoly::var(1, 0)]).unwrap();
    assert_eq!(solve_h(doubled, 1, 1).unwrap_err(), Error::NotMinimal { rank: 1, components: 2 });
    assert_eq!(
        verify_identity(&HoloMap::identity(1), &HoloMap::identity(1), 2, 2, 2),
        Err(Error::CommonFactor(2, 2, 2))
    );
}

#[test]
fn wrong_h_leaves_nonzero_difference() {
    let f = HoloMap::identity(2);
    let h = solve_h(f.clone(), 1, 1).unwrap();
    let mut comps = h.components().to_vec();
    comps.pop();
    let truncated = ScaledMap::new(2, comps).unwrap();
    let diff = identity_difference(&f, &truncated, 1, 1, 1).unwrap();
    assert!(!diff.is_zero());
    assert_eq!(diff, h.squared_norm().sub(&truncated.squared_norm()).unwrap());
}
