//! Aronhold invariants `S` (degree 4) and `T` (degree 6) of a ternary cubic
//! and the Weierstrass model `y^2 = x^3 + A x + B` of its Jacobian with
//! `A = -S/48`, `B = T/864`.
//!
//! The invariants are stored as term tables in `data/`. Each line holds the
//! exponents of the ten cubic coefficients followed by an integer coefficient.

use std::sync::OnceLock;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cubicgeom::PlaneCubic;
use crate::polyring::ring::{Field, Ring};

const S_TABLE: &str = include_str!("../../data/aronhold_s.txt");
const T_TABLE: &str = include_str!("../../data/aronhold_t.txt");
pub const S_TABLE_SHA256: &str = "e4c9c74c83da0bff8eee854503fc68647b8a46fe65129d2987efb4fc141ac3a4";
pub const T_TABLE_SHA256: &str = "1c14864c0d082851d371b627f7e204d56b596336c9c547c57699313153b573dc";

/// `A = S / A_DIVISOR`.
pub const A_DIVISOR: i64 = -48;
/// `B = T / B_DIVISOR`.
pub const B_DIVISOR: i64 = 864;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacError {
    #[error("characteristic {0} is not supported; need 0 or at least 5")]
    BadCharacteristic(u64),
    #[error("the Jacobian model is singular")]
    SingularCubic,
    #[error("4A^3 + 27B^2 = 0")]
    SingularCurve,
    #[error("invariant table: {0}")]
    Table(String),
    #[error("twist does not divide the invariants")]
    InexactTwist,
}

/// One monomial in the cubic's coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantTerm {
    pub exponents: [u8; 10],
    pub coefficient: i64,
}

fn parse_table(text: &str, degree: u32) -> Result<Vec<InvariantTerm>, JacError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 11 {
            return Err(JacError::Table(format!("line {}: expected 11 fields", lineno + 1)));
        }
        let mut exponents = [0u8; 10];
        for (e, f) in exponents.iter_mut().zip(&fields[..10]) {
            *e = f.parse().map_err(|_| JacError::Table(format!("line {}: bad exponent", lineno + 1)))?;
        }
        if exponents.iter().map(|&e| e as u32).sum::<u32>() != degree {
            return Err(JacError::Table(format!("line {}: term is not of degree {degree}", lineno + 1)));
        }
        let coefficient = fields[10].parse().map_err(|_| JacError::Table(format!("line {}: bad coefficient", lineno + 1)))?;
        out.push(InvariantTerm { exponents, coefficient });
    }
    Ok(out)
}

fn checked_table(text: &str, sha: &str, degree: u32) -> Result<Vec<InvariantTerm>, JacError> {
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    if digest != sha {
        return Err(JacError::Table(format!("checksum mismatch: {digest}")));
    }
    parse_table(text, degree)
}

/// Terms of `S`, checksum-verified on first use.
pub fn s_terms() -> &'static [InvariantTerm] {
    static S: OnceLock<Vec<InvariantTerm>> = OnceLock::new();
    S.get_or_init(|| checked_table(S_TABLE, S_TABLE_SHA256, 4).expect("bundled S table"))
}

/// Terms of `T`, checksum-verified on first use.
pub fn t_terms() -> &'static [InvariantTerm] {
    static T: OnceLock<Vec<InvariantTerm>> = OnceLock::new();
    T.get_or_init(|| checked_table(T_TABLE, T_TABLE_SHA256, 6).expect("bundled T table"))
}

fn evaluate<R: Ring>(ring: &R, terms: &[InvariantTerm], coeffs: &[R::Elem]) -> R::Elem {
    let max_e = terms.iter().flat_map(|t| t.exponents).max().unwrap_or(0) as usize;
    let powers: Vec<Vec<R::Elem>> = coeffs
        .iter()
        .map(|c| {
            let mut v = vec![ring.one()];
            for k in 0..max_e {
                v.push(ring.mul(&v[k], c));
            }
            v
        })
        .collect();
    let mut acc = ring.zero();
    for term in terms {
        let mut m = ring.from_i64(term.coefficient);
        for (i, &e) in term.exponents.iter().enumerate() {
            if e > 0 {
                m = ring.mul(&m, &powers[i][e as usize]);
            }
        }
        acc = ring.add(&acc, &m);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AronholdInvariants<E> {
    pub s: E,
    pub t: E,
}

/// `S` and `T` over any commutative ring; no characteristic restriction.
pub fn invariants_over<R: Ring>(ring: &R, c: &PlaneCubic<R::Elem>) -> AronholdInvariants<R::Elem> {
    AronholdInvariants { s: evaluate(ring, s_terms(), c.coeffs()), t: evaluate(ring, t_terms(), c.coeffs()) }
}

pub fn aronhold_invariants<F: Field>(field: &F, c: &PlaneCubic<F::Elem>) -> Result<AronholdInvariants<F::Elem>, JacError> {
    match field.characteristic() {
        2 | 3 => Err(JacError::BadCharacteristic(field.characteristic())),
        _ => Ok(invariants_over(field, c)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeierstrassCurve<E> {
    pub a: E,
    pub b: E,
}

/// `-16 (4A^3 + 27B^2)`.
pub fn weierstrass_discriminant<R: Ring>(ring: &R, w: &WeierstrassCurve<R::Elem>) -> R::Elem {
    let a3 = ring.mul(&w.a, &ring.mul(&w.a, &w.a));
    let b2 = ring.mul(&w.b, &w.b);
    let inner = ring.add(&ring.mul(&ring.from_i64(4), &a3), &ring.mul(&ring.from_i64(27), &b2));
    ring.mul(&ring.from_i64(-16), &inner)
}

/// `1728 * 4A^3 / (4A^3 + 27B^2)`.
pub fn j_invariant<F: Field>(field: &F, w: &WeierstrassCurve<F::Elem>) -> Result<F::Elem, JacError> {
    let four_a3 = field.mul(&field.from_i64(4), &field.pow(&w.a, 3));
    let den = field.add(&four_a3, &field.mul(&field.from_i64(27), &field.mul(&w.b, &w.b)));
    let num = field.mul(&field.from_i64(1728), &four_a3);
    field.div(&num, &den).ok_or(JacError::SingularCurve)
}

/// `(A / lambda^4, B / lambda^6)`, the model twisted by `lambda`, with exact division in `R`.
pub fn jacobian_weierstrass_twisted<R: Ring>(
    ring: &R,
    c: &PlaneCubic<R::Elem>,
    lambda: &R::Elem,
) -> Result<WeierstrassCurve<R::Elem>, JacError> {
    let inv = invariants_over(ring, c);
    let l2 = ring.mul(lambda, lambda);
    let l4 = ring.mul(&l2, &l2);
    let l6 = ring.mul(&l4, &l2);
    let a = ring.div_exact(&inv.s, &ring.mul(&ring.from_i64(A_DIVISOR), &l4)).ok_or(JacError::InexactTwist)?;
    let b = ring.div_exact(&inv.t, &ring.mul(&ring.from_i64(B_DIVISOR), &l6)).ok_or(JacError::InexactTwist)?;
    Ok(WeierstrassCurve { a, b })
}

/// Weierstrass model of the Jacobian of a smooth cubic.
pub fn jacobian_weierstrass<F: Field>(field: &F, c: &PlaneCubic<F::Elem>) -> Result<WeierstrassCurve<F::Elem>, JacError> {
    aronhold_invariants(field, c)?;
    let w = jacobian_weierstrass_twisted(field, c, &field.one())?;
    if field.is_zero(&weierstrass_discriminant(field, &w)) {
        return Err(JacError::SingularCubic);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int, BigRational};
    use crate::galoisfield::PrimeField;
    use crate::polyring::ring::{FiniteField, RationalField};
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn q_cubic(c: [i64; 10]) -> PlaneCubic<BigRational> {
        PlaneCubic::from_i64s(c).unwrap()
    }

    #[test]
    fn tables_load_with_expected_sizes() {
        assert_eq!(s_terms().len(), 25);
        assert_eq!(t_terms().len(), 103);
        assert!(checked_table("1 0 0 0 0 0 0 0 0 3 1\n", S_TABLE_SHA256, 4).is_err());
        assert!(parse_table("1 0 0 0 0 0 0 0 0 0 1\n", 4).is_err());
    }

    #[test]
    fn diagonal_cubics_have_vanishing_s() {
        let inv = aronhold_invariants(&RationalField, &q_cubic([3, 0, 0, 0, 0, 0, 4, 0, 0, 5])).unwrap();
        assert_eq!(inv.s, rat_int(0));
        let w = jacobian_weierstrass(&RationalField, &q_cubic([3, 0, 0, 0, 0, 0, 4, 0, 0, 5])).unwrap();
        assert_eq!(w.a, rat_int(0));
        assert_eq!(j_invariant(&RationalField, &w).unwrap(), rat_int(0));
    }

    #[test]
    fn j_and_discriminant_examples() {
        let q = RationalField;
        let w = |a: i64, b: i64| WeierstrassCurve { a: rat_int(a), b: rat_int(b) };
        assert_eq!(j_invariant(&q, &w(1, 0)).unwrap(), rat_int(1728));
        assert_eq!(j_invariant(&q, &w(0, 1)).unwrap(), rat_int(0));
        assert_eq!(weierstrass_discriminant(&q, &w(0, 0)), rat_int(0));
        assert_eq!(weierstrass_discriminant(&q, &w(-3, 2)), rat_int(0));
        assert_eq!(j_invariant(&q, &w(-3, 2)), Err(JacError::SingularCurve));
    }

    #[test]
    fn singular_cubic_is_rejected() {
        // y^2 z - x^3 - x^2 z
        let c = q_cubic([-1, 0, -1, 0, 0, 0, 0, 1, 0, 0]);
        assert_eq!(jacobian_weierstrass(&RationalField, &c), Err(JacError::SingularCubic));
    }

    #[test]
    fn characteristic_three_is_rejected() {
        let f = PrimeField::new(3).unwrap();
        let c = PlaneCubic::new(&f, vec![1, 0, 0, 0, 0, 0, 1, 0, 0, 1]).unwrap();
        assert_eq!(aronhold_invariants(&f, &c), Err(JacError::BadCharacteristic(3)));
    }

    fn random_unimodular<K: FiniteField>(k: &K, rng: &mut impl rand::Rng) -> [[K::Elem; 3]; 3] {
        loop {
            let mut m: [[K::Elem; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| k.random(rng)));
            let det = det3(k, &m);
            if let Some(inv) = k.inv(&det) {
                m[0] = m[0].clone().map(|x| k.mul(&x, &inv));
                return m;
            }
        }
    }

    fn det3<R: Ring>(r: &R, m: &[[R::Elem; 3]; 3]) -> R::Elem {
        let t = |a: usize, b: usize, c: usize| r.mul(&m[0][a], &r.mul(&m[1][b], &m[2][c]));
        let pos = r.add(&r.add(&t(0, 1, 2), &t(1, 2, 0)), &t(2, 0, 1));
        let neg = r.add(&r.add(&t(0, 2, 1), &t(1, 0, 2)), &t(2, 1, 0));
        r.sub(&pos, &neg)
    }

    proptest! {
        #[test]
        fn invariants_are_unimodular_invariants(seed in any::<u64>()) {
            let k = PrimeField::new(10007).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let coeffs: Vec<u64> = (0..10).map(|_| k.random(&mut rng)).collect();
            let Ok(c) = PlaneCubic::new(&k, coeffs) else { return Ok(()) };
            let g = random_unimodular(&k, &mut rng);
            let before = aronhold_invariants(&k, &c).unwrap();
            let after = aronhold_invariants(&k, &c.transform(&k, &g)).unwrap();
            prop_assert_eq!(before, after);
        }

        #[test]
        fn invariants_have_weights_four_and_six(seed in any::<u64>()) {
            let k = PrimeField::new(10007).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let coeffs: Vec<u64> = (0..10).map(|_| k.random(&mut rng)).collect();
            let Ok(c) = PlaneCubic::new(&k, coeffs) else { return Ok(()) };
            let lambda = k.random(&mut rng);
            let base = aronhold_invariants(&k, &c).unwrap();
            let scaled = aronhold_invariants(&k, &c.scale(&k, &lambda)).unwrap();
            prop_assert_eq!(scaled.s, k.mul(&base.s, &k.pow(&lambda, 4)));
            prop_assert_eq!(scaled.t, k.mul(&base.t, &k.pow(&lambda, 6)));
        }

        #[test]
        fn j_is_projectively_invariant(seed in any::<u64>()) {
            let k = PrimeField::new(1009).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let coeffs: Vec<u64> = (0..10).map(|_| k.random(&mut rng)).collect();
            let Ok(c) = PlaneCubic::new(&k, coeffs) else { return Ok(()) };
            let Ok(w) = jacobian_weierstrass(&k, &c) else { return Ok(()) };
            // Any invertible matrix: rescale a unimodular one by a random unit.
            let mut g = random_unimodular(&k, &mut rng);
            let s = 1 + k.random(&mut rng) % 1008;
            g = g.map(|row| row.map(|x| k.mul(&x, &s)));
            let w2 = jacobian_weierstrass(&k, &c.transform(&k, &g)).unwrap();
            prop_assert_eq!(j_invariant(&k, &w).unwrap(), j_invariant(&k, &w2).unwrap());
        }
    }

    #[test]
    fn rational_scaling_example() {
        let c = q_cubic([1, 0, 0, 0, 1, 0, 1, 0, 0, 1]);
        let w = jacobian_weierstrass(&RationalField, &c).unwrap();
        let w2 = jacobian_weierstrass(&RationalField, &c.scale(&RationalField, &rat(1, 2))).unwrap();
        assert_eq!(w2.a, &w.a * rat(1, 16));
        assert_eq!(w2.b, &w.b * rat(1, 64));
    }
}
