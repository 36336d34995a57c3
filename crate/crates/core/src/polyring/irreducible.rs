//! Irreducibility over Q.
//!
//! Two routes: a single prime with an irreducible reduction (cheap, but only
//! available when the Galois group contains an `n`-cycle), and a Hensel-lifted
//! recombination test at one prime which rules out every candidate rational
//! factor explicitly.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::factor::{factor_degrees, factor_mod_p, is_irreducible};
use super::ring::{Field, Ring};
use super::uni::{content, primitive_part, zring, PolyRing, UniPoly, ZPoly};
use crate::exactnum::{is_prime, BigInt};
use crate::galoisfield::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Irreducibility {
    /// The reduction modulo this prime is irreducible of full degree.
    Witness(u64),
    /// No prime up to the bound has an irreducible reduction.
    Inconclusive { bound: u64, patterns: Vec<(u64, Vec<usize>)> },
}

pub fn reduce_mod_p(f: &ZPoly, field: PrimeField) -> UniPoly<u64> {
    PolyRing::new(field).from_coeffs(f.coeffs().iter().map(|c| field.reduce_bigint(c)).collect())
}

/// Searches primes `p <= bound` with `p` not dividing `lc(f)` for an irreducible
/// reduction.
pub fn is_irreducible_over_q(f: &ZPoly, bound: u64) -> Irreducibility {
    let lc = zring().lc(f);
    let mut patterns = Vec::new();
    for p in (2..=bound).filter(|&p| is_prime(p)) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let field = PrimeField::new(p).expect("prime");
        let fp = reduce_mod_p(f, field);
        let ring = PolyRing::new(field);
        if is_irreducible(&ring, &fp) {
            return Irreducibility::Witness(p);
        }
        let (_, factors) = factor_mod_p(&fp, field);
        patterns.push((p, factor_degrees::<PrimeField>(&factors)));
    }
    Irreducibility::Inconclusive { bound, patterns }
}

/// Evidence that a primitive squarefree integer polynomial is irreducible over Q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibilityCertificate {
    pub prime: u64,
    /// Degrees of the monic irreducible factors modulo `prime`.
    pub modular_degrees: Vec<usize>,
    /// Lifting exponent: factors were lifted modulo `prime^precision`.
    pub precision: u32,
    /// Coefficient bound for any integer factor (times the leading coefficient).
    pub coefficient_bound: String,
    /// Number of candidate factor combinations that failed trial division.
    pub candidates_rejected: usize,
}

/// Proves irreducibility over Q by lifting a modular factorization and
/// trial-dividing every recombination. Returns `None` when a proper factor
/// exists (or the input is unsuitable).
pub fn certify_irreducible_over_q(f: &ZPoly, prime_bound: u64, skip: &[u64]) -> Option<IrreducibilityCertificate> {
    let n = f.degree()?;
    if n == 0 || !content(f).is_one() {
        return None;
    }
    if n == 1 {
        return Some(IrreducibilityCertificate {
            prime: 0,
            modular_degrees: vec![1],
            precision: 0,
            coefficient_bound: "0".into(),
            candidates_rejected: 0,
        });
    }
    let lc = zring().lc(f);
    // Pick the admissible prime with the fewest modular factors.
    let mut best: Option<(u64, Vec<UniPoly<u64>>)> = None;
    for p in (3..=prime_bound).filter(|&p| is_prime(p) && !skip.contains(&p)) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let field = PrimeField::new(p).expect("prime");
        let ring = PolyRing::new(field);
        let fp = reduce_mod_p(f, field);
        if !ring.is_squarefree(&fp) {
            continue;
        }
        let (_, factors) = factor_mod_p(&fp, field);
        let gs: Vec<UniPoly<u64>> = factors.into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|(_, b)| gs.len() < b.len()) {
            best = Some((p, gs));
        }
        if best.as_ref().is_some_and(|(_, b)| b.len() <= 2) {
            break;
        }
    }
    let (p, modular) = best?;
    if modular.len() == 1 {
        return Some(IrreducibilityCertificate {
            prime: p,
            modular_degrees: vec![n],
            precision: 1,
            coefficient_bound: "0".into(),
            candidates_rejected: 0,
        });
    }

    // Mignotte-style bound: every coefficient of an integer factor is at most
    // 2^n * ||f||_2 <= 2^n * (n+1) * max|c| in absolute value.
    let max_c = f.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = (BigInt::one() << n) * BigInt::from(n as u64 + 1) * max_c * lc.abs();
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift_factorization(f, p, &modular, k);

    let r = lifted.len();
    let mut rejected = 0usize;
    let zr = zring();
    for size in 1..=r / 2 {
        for subset in combinations(r, size) {
            if size * 2 == r && !subset.contains(&0) {
                // complement already tried
                continue;
            }
            let mut cand = zr.constant(lc.clone());
            for &i in &subset {
                cand = zr.mul(&cand, &lifted[i]);
            }
            let cand = symmetric_mod(&cand, &modulus);
            let cand = primitive_part(&cand);
            if cand.deg0() > 0 && zr.div_exact(f, &cand).is_some() {
                return None;
            }
            rejected += 1;
        }
    }
    Some(IrreducibilityCertificate {
        prime: p,
        modular_degrees: modular.iter().map(|g| g.deg0()).collect(),
        precision: k,
        coefficient_bound: bound.to_string(),
        candidates_rejected: rejected,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn symmetric_mod(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    zring().from_coeffs(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn reduce_coeffs_mod(f: &ZPoly, m: &BigInt) -> ZPoly {
    zring().from_coeffs(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn lift_to_z(g: &UniPoly<u64>) -> ZPoly {
    zring().from_coeffs(g.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// Lifts the monic factorization `lc^{-1} f = prod g_i (mod p)` to `mod p^k`.
/// Returns monic integer polynomials with coefficients in `[0, p^k)`.
pub fn hensel_lift_factorization(f: &ZPoly, p: u64, factors: &[UniPoly<u64>], k: u32) -> Vec<ZPoly> {
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    let lc = zring().lc(f);
    let lc_inv = crate::exactnum::bigint_mod_inverse(&lc.mod_floor(&pk), &pk).expect("lc is a unit");
    let monic_f = reduce_coeffs_mod(&zring().scale(f, &lc_inv), &pk);
    lift_all(&monic_f, p, factors, k)
}

fn lift_all(f: &ZPoly, p: u64, factors: &[UniPoly<u64>], k: u32) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let pk = num_traits::pow(BigInt::from(p), k as usize);
        return vec![reduce_coeffs_mod(f, &pk)];
    }
    let field = PrimeField::new(p).expect("prime");
    let ring = PolyRing::new(field);
    let a = factors[0].clone();
    let b = factors[1..].iter().fold(ring.one(), |acc, g| ring.mul(&acc, g));
    let (big_a, big_b) = lift_pair(f, p, &a, &b, k);
    let mut out = vec![big_a];
    out.extend(lift_all(&big_b, p, &factors[1..], k));
    out
}

/// Linear Hensel lifting of a coprime monic pair `f = a b (mod p)` to `mod p^k`.
fn lift_pair(f: &ZPoly, p: u64, a: &UniPoly<u64>, b: &UniPoly<u64>, k: u32) -> (ZPoly, ZPoly) {
    let field = PrimeField::new(p).expect("prime");
    let ring = PolyRing::new(field);
    let zr = zring();
    let (g, s, t) = ring.ext_gcd(a, b);
    assert_eq!(g.coeffs(), &[1], "modular factors must be coprime");
    let mut big_a = lift_to_z(a);
    let mut big_b = lift_to_z(b);
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let err = zr.sub(f, &zr.mul(&big_a, &big_b));
        let e_int = zr.from_coeffs(
            err.coeffs()
                .iter()
                .map(|c| {
                    let (q, r) = c.div_mod_floor(&pj);
                    debug_assert!(r.is_zero(), "factorization must hold modulo p^j");
                    q
                })
                .collect(),
        );
        let e = reduce_mod_p(&e_int, field);
        let da = ring.rem(&ring.mul(&t, &e), a);
        let db = ring
            .div_exact(&ring.sub(&e, &ring.mul(b, &da)), a)
            .expect("Hensel correction divides");
        let _ = &s;
        big_a = zr.add(&big_a, &zr.scale(&lift_to_z(&da), &pj));
        big_b = zr.add(&big_b, &zr.scale(&lift_to_z(&db), &pj));
        pj *= &pb;
        big_a = reduce_coeffs_mod(&big_a, &pj);
        big_b = reduce_coeffs_mod(&big_b, &pj);
    }
    (big_a, big_b)
}

/// Field inverse helper kept close to the lifting code.
#[allow(dead_code)]
fn inv_mod_p(field: &PrimeField, a: u64) -> u64 {
    field.inv(&a).expect("unit")
}
