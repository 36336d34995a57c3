//! Property runs shared by the integration and acceptance targets.
#![allow(dead_code)]

use hasse_family::cubicgeom::{
    classify_degeneration, count_points, find_smooth_point, hessian_splitting_test, splits_into_lines,
    DegenerationKind,
    splits_into_lines_oracle, PlaneCubic,
};
use hasse_family::family::FamilyConstants;
use hasse_family::galoisfield::PrimeField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RANDOM_CUBICS: usize = 10_000;

/// Every nonzero cubic over `F_p`, in lexicographic coefficient order.
pub fn all_cubics(field: &PrimeField) -> impl Iterator<Item = PlaneCubic<u64>> + '_ {
    let p = field.p();
    let total = p.pow(10);
    (1..total).map(move |mut n| {
        let mut c = Vec::with_capacity(10);
        for _ in 0..10 {
            c.push(n % p);
            n /= p;
        }
        PlaneCubic::new(field, c).expect("nonzero")
    })
}

pub fn random_cubics(field: &PrimeField, count: usize, seed: u64) -> Vec<PlaneCubic<u64>> {
    let p = field.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c: Vec<u64> = (0..10).map(|_| rng.gen_range(0..p)).collect();
        if let Ok(c) = PlaneCubic::new(field, c) {
            out.push(c);
        }
    }
    out
}

/// The routed splitting test, with characteristic 3 sent to the oracle.
pub fn splits(field: &PrimeField, c: &PlaneCubic<u64>) -> bool {
    if field.p() == 3 {
        splits_into_lines_oracle(field, c).expect("oracle")
    } else {
        splits_into_lines(field, c).expect("routed test")
    }
}

#[derive(Debug, Default)]
pub struct SplitAgreement {
    pub checked: usize,
    pub routed_mismatches: usize,
    pub raw_hessian_mismatches: usize,
}

pub fn split_agreement(field: &PrimeField, cubics: impl Iterator<Item = PlaneCubic<u64>>) -> SplitAgreement {
    let mut r = SplitAgreement::default();
    for c in cubics {
        let oracle = splits_into_lines_oracle(field, &c).expect("oracle");
        r.checked += 1;
        if field.p() != 3 && splits_into_lines(field, &c).expect("routed") != oracle {
            r.routed_mismatches += 1;
        }
        if hessian_splitting_test(field, &c) != oracle {
            r.raw_hessian_mismatches += 1;
        }
    }
    r
}

/// Counterexamples to: a cubic that does not split into lines has a smooth `F_p`-point.
pub fn smooth_point_counterexamples(field: &PrimeField, cubics: impl Iterator<Item = PlaneCubic<u64>>) -> (usize, Vec<PlaneCubic<u64>>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for c in cubics {
        checked += 1;
        if !splits(field, &c) && find_smooth_point(field, &c).is_none() {
            bad.push(c);
        }
    }
    (checked, bad)
}

/// Smooth cubics violating `|#C(F_p) - (p + 1)| <= 2 sqrt(p)`, and how many smooth cubics were seen.
pub fn hasse_violations(field: &PrimeField, cubics: impl Iterator<Item = PlaneCubic<u64>>) -> (usize, usize) {
    let p = field.p() as i64;
    let (mut smooth, mut bad) = (0, 0);
    for c in cubics {
        if !is_smooth(field, &c) {
            continue;
        }
        smooth += 1;
        let d = count_points(field, &c) as i64 - (p + 1);
        if d * d > 4 * p {
            bad += 1;
        }
    }
    (smooth, bad)
}

/// Smooth over the algebraic closure.
pub fn is_smooth(field: &PrimeField, c: &PlaneCubic<u64>) -> bool {
    classify_degeneration(field, c).expect("classifiable").kind == DegenerationKind::Smooth
}

/// Every single-constant mutation used as a negative control.
pub fn constant_mutations() -> Vec<(String, FamilyConstants)> {
    let base = FamilyConstants::default();
    let mut cases: Vec<(String, FamilyConstants)> = Vec::new();
    let mut push = |name: String, f: &dyn Fn(&mut FamilyConstants)| {
        let mut k = base.clone();
        f(&mut k);
        cases.push((name, k));
    };
    push("intersection discriminant".into(), &|k| k.intersection_discriminant -= 1);
    for i in 0..base.intersection_factors.len() {
        push(format!("intersection exponent {i}"), &|k| k.intersection_factors[i].1 += 1);
    }
    push("eliminant constant term 50624".into(), &|k| k.singular12[0] = 50624);
    for i in 0..5 {
        push(format!("eliminant coefficient {i}"), &|k| k.singular12[i] += 1);
    }
    for i in 0..base.singular12_disc_factors.len() {
        push(format!("eliminant discriminant exponent {i}"), &|k| k.singular12_disc_factors[i].1 -= 1);
    }
    push("eliminant discriminant sign".into(), &|k| k.singular12_disc_sign = -1);
    push("A scalar".into(), &|k| k.a_scalar += 1);
    push("A exponents".into(), &|k| k.a_exponents = (1, 3));
    for i in 0..base.b_terms.len() {
        push(format!("B coefficient {i}"), &|k| k.b_terms[i].1 += 1);
    }
    cases
}
