mod common;

use common::*;
use hasse_family::cubicgeom::{
    classify_degeneration, count_points, singular_points, splits_into_lines, tangent_cone, CubicError,
    DegenerationKind, PlaneCubic,
};
use hasse_family::family::fiber_over;
use hasse_family::galoisfield::PrimeField;
use proptest::prelude::*;

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn routed_split_test_matches_oracle_on_every_cubic_over_f2() {
    let f = field(2);
    let r = split_agreement(&f, all_cubics(&f));
    assert_eq!(r.checked, 1023);
    assert_eq!(r.routed_mismatches, 0);
    // The bare Hessian criterion is meaningless in characteristic 2.
    assert_eq!(r.raw_hessian_mismatches, 868);
}

#[test]
fn hessian_matches_oracle_on_random_cubics_over_f5() {
    let f = field(5);
    let r = split_agreement(&f, random_cubics(&f, RANDOM_CUBICS, 1).into_iter());
    assert_eq!((r.routed_mismatches, r.raw_hessian_mismatches), (0, 0));
}

#[test]
fn characteristic_three_is_rejected_by_the_routed_test() {
    let f = field(3);
    let c = PlaneCubic::new(&f, vec![1, 0, 0, 0, 0, 0, 1, 0, 0, 1]).unwrap();
    assert!(matches!(splits_into_lines(&f, &c), Err(CubicError::CharacteristicThree)));
}

#[test]
fn oracle_over_f3_agrees_with_singularity_structure() {
    // A cubic that splits into lines has a singular point or is a triple line.
    let f = field(3);
    for c in random_cubics(&f, 2000, 2) {
        if splits(&f, &c) {
            assert!(!is_smooth(&f, &c), "{c:?}");
        }
    }
}

#[test]
fn smooth_point_exists_unless_split_exhaustive_f2_f3() {
    for p in [2, 3] {
        let f = field(p);
        let (checked, bad) = smooth_point_counterexamples(&f, all_cubics(&f));
        assert_eq!(checked as u64, p.pow(10) - 1);
        assert!(bad.is_empty(), "p = {p}: {:?}", &bad[..bad.len().min(3)]);
    }
}

#[test]
fn smooth_point_exists_unless_split_random() {
    for p in [5, 7, 11, 13] {
        let f = field(p);
        let (checked, bad) = smooth_point_counterexamples(&f, random_cubics(&f, RANDOM_CUBICS, 3).into_iter());
        assert_eq!(checked, RANDOM_CUBICS);
        assert!(bad.is_empty(), "p = {p}: {:?}", &bad[..bad.len().min(3)]);
    }
}

#[test]
fn hasse_bound_for_smooth_cubics() {
    for p in [2, 3, 5, 7, 11, 13] {
        let f = field(p);
        let (smooth, bad) = hasse_violations(&f, random_cubics(&f, 2000, 4).into_iter());
        assert!(smooth > 0);
        assert_eq!(bad, 0, "p = {p}");
    }
}

#[test]
fn fiber_at_one_mod_7_point_count() {
    let f = field(7);
    let c = fiber_over(&f, &1).unwrap();
    assert_eq!(count_points(&f, &c), W1_MOD_7_POINTS);
    assert_eq!(classify_degeneration(&f, &c).unwrap().kind, DegenerationKind::Smooth);
}

const W1_MOD_7_POINTS: u64 = 5;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// `z (y - a x)(y - b x) + x^3 + c y^3` has a singular point at the origin whose
    /// tangent cone has rank 2 exactly when the slopes differ.
    #[test]
    fn node_rank_matches_tangent_slopes(a in 0u64..11, b in 0u64..11, c in 1u64..11) {
        let f = field(11);
        // z (y^2 - (a + b) x y + a b x^2) + x^3 + c y^3, monomials x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3
        let coeffs = vec![1, 0, (a * b) % 11, 0, (22 - a - b) % 11, 0, c, 1, 0, 0];
        let cubic = PlaneCubic::new(&f, coeffs).unwrap();
        let s = singular_points(&f, &cubic).unwrap();
        let origin = s.iter().find(|p| p.point.coords() == &[0, 0, 1]).expect("origin is singular");
        prop_assert_eq!(origin.tangent_rank, if a == b { 1 } else { 2 });
        let cone = tangent_cone(&f, &cubic, &origin.point);
        prop_assert_eq!(cone.rank(&f), origin.tangent_rank);
    }

    #[test]
    fn point_count_obeys_hasse_when_smooth(seed in any::<u64>(), pi in 0usize..4) {
        let p = [5u64, 7, 11, 13][pi];
        let f = field(p);
        let (_, bad) = hasse_violations(&f, random_cubics(&f, 5, seed).into_iter());
        prop_assert_eq!(bad, 0);
    }
}
