//! The pencil `W_u : 5x^3 + 9y^3 + 10z^3 + 12u^3(x + y + z)^3 = 0`, its
//! base change `X_t` along `u = (t^12 - t^4 - 1)/(t^12 - t^8 - 1)`, the
//! registered claims about them and the certificate report.

pub mod claims;
pub mod report;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::cubicgeom::{local_solvability, CubicError, PlaneCubic, SolvabilityCertificate};
use crate::exactnum::{is_prime, p_valuation, parse_rational, primes_in, rat_to_string, BigInt, BigRational, Valuation};
use crate::galoisfield::PrimeField;
use crate::polyring::multi::MultiPoly;
use crate::polyring::ring::{RationalField, Ring};
use crate::polyring::uni::{qring, zring, PolyRing, QPoly, ZPoly};

pub use claims::{ClaimId, ClaimRecord, ClaimResult, Verdict, REGISTRY};
pub use report::{verify_all, verify_all_with, verify_claim, CertificateReport, Verifier};

/// Primes where the reduction of the family is handled separately.
pub const BAD_PRIMES: [u64; 4] = [2, 3, 5, 359];

const B_TABLE: &str = include_str!("../../data/b_coefficients.txt");
pub const B_TABLE_SHA256: &str = "2b84e4f57cd089349454eab04dbd42209297feb1e2c9e10ee2a02d7ba3ea092b";

/// A value in `P^1(Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProjValue {
    Finite(BigRational),
    Infinity,
}

impl fmt::Display for ProjValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjValue::Finite(q) => write!(f, "{}", rat_to_string(q)),
            ProjValue::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for ProjValue {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(ProjValue::Infinity),
            other => parse_rational(other).map(ProjValue::Finite),
        }
    }
}

impl Serialize for ProjValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn serialize_rationals<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rat_to_string))
}

/// Run parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyConfig {
    pub p_min: u64,
    pub p_max: u64,
    #[serde(serialize_with = "serialize_rationals")]
    pub t_samples: Vec<BigRational>,
    pub precision: u32,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for FamilyConfig {
    fn default() -> Self {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        FamilyConfig {
            p_min: 7,
            p_max: 100,
            t_samples: vec![r(0, 1), r(1, 1), r(2, 1), r(-1, 1), r(1, 2), r(3, 1)],
            precision: 8,
            seed: 0x5EED,
            jobs: 1,
        }
    }
}

impl FamilyConfig {
    /// Primes in `[p_min, p_max]` other than the bad primes.
    pub fn sweep_primes(&self) -> Vec<u64> {
        if self.p_min > self.p_max {
            return Vec::new();
        }
        primes_in(self.p_min, self.p_max).into_iter().filter(|p| !BAD_PRIMES.contains(p)).collect()
    }
}

/// Published numerical constants that the claims are checked against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyConstants {
    pub intersection_discriminant: i64,
    pub intersection_factors: Vec<(u64, u32)>,
    /// Ascending coefficients of the eliminant in `s = u^3`.
    pub singular12: [i64; 5],
    pub singular12_disc_sign: i8,
    pub singular12_disc_factors: Vec<(u64, u32)>,
    /// `A = a_scalar * (t^12 - t^4 - 1)^a_exponents.0 * (t^12 - t^8 - 1)^a_exponents.1`.
    pub a_scalar: i64,
    pub a_exponents: (u32, u32),
    /// `(exponent of t, coefficient)` pairs of `B`.
    pub b_terms: Vec<(u32, i64)>,
}

fn parse_b_table(text: &str) -> Vec<(u32, i64)> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            let e = it.next().and_then(|v| v.parse().ok()).expect("exponent");
            let c = it.next().and_then(|v| v.parse().ok()).expect("coefficient");
            (e, c)
        })
        .collect()
}

impl Default for FamilyConstants {
    fn default() -> Self {
        let digest = hex::encode(Sha256::digest(B_TABLE.as_bytes()));
        assert_eq!(digest, B_TABLE_SHA256, "B coefficient table checksum");
        FamilyConstants {
            intersection_discriminant: 242325,
            intersection_factors: vec![(3, 3), (5, 2), (359, 1)],
            singular12: [50625, 999000, 4282200, 6065760, 2062096],
            singular12_disc_sign: 1,
            singular12_disc_factors: vec![(2, 146), (3, 92), (5, 50), (359, 4)],
            a_scalar: 145800,
            a_exponents: (3, 1),
            b_terms: parse_b_table(B_TABLE),
        }
    }
}

impl FamilyConstants {
    /// The degree-12 polynomial in `u` whose roots are the singular fibers.
    pub fn singular12_poly(&self) -> ZPoly {
        let z = zring();
        z.inflate(&z.from_i64s(&self.singular12), 3)
    }

    pub fn a_poly(&self) -> QPoly {
        let q = qring();
        let (en, ed) = self.a_exponents;
        let a = q.mul(&q.pow(&numerator_poly(), en as u64), &q.pow(&denominator_poly(), ed as u64));
        q.scale(&a, &BigRational::from_integer(self.a_scalar.into()))
    }

    pub fn b_poly(&self) -> QPoly {
        let q = qring();
        let deg = self.b_terms.iter().map(|t| t.0).max().unwrap_or(0) as usize;
        let mut c = vec![BigRational::zero(); deg + 1];
        for &(e, v) in &self.b_terms {
            c[e as usize] += BigRational::from_integer(v.into());
        }
        q.from_coeffs(c)
    }
}

/// `t^12 - t^4 - 1`.
pub fn numerator_poly() -> QPoly {
    let mut c = vec![0i64; 13];
    c[12] = 1;
    c[4] = -1;
    c[0] = -1;
    qring().from_i64s(&c)
}

/// `t^12 - t^8 - 1`.
pub fn denominator_poly() -> QPoly {
    let mut c = vec![0i64; 13];
    c[12] = 1;
    c[8] = -1;
    c[0] = -1;
    qring().from_i64s(&c)
}

/// Coefficients of `(x + y + z)^3` in monomial order.
pub const CUBE_OF_SUM: [i64; 10] = [1, 3, 3, 3, 6, 3, 1, 3, 3, 1];

/// `d (5x^3 + 9y^3 + 10z^3) + w (x + y + z)^3` over any ring.
pub fn pencil_member<R: Ring>(ring: &R, d: &R::Elem, w: &R::Elem) -> Vec<R::Elem> {
    CUBE_OF_SUM
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let diag = match i {
                0 => 5,
                6 => 9,
                9 => 10,
                _ => 0,
            };
            ring.add(&ring.mul(d, &ring.from_i64(diag)), &ring.mul(w, &ring.from_i64(m)))
        })
        .collect()
}

/// `W_u` over any ring.
pub fn fiber_over<R: Ring>(ring: &R, u: &R::Elem) -> Result<PlaneCubic<R::Elem>, CubicError> {
    let w = ring.mul(&ring.from_i64(12), &ring.pow(u, 3));
    PlaneCubic::new(ring, pencil_member(ring, &ring.one(), &w))
}

/// `W_u` with exact rational coefficients.
pub fn build_fiber(u: &BigRational) -> PlaneCubic<BigRational> {
    fiber_over(&RationalField, u).expect("the pencil has no zero member")
}

/// The member at `u = infinity` in the coordinates `(x, y, w)` with
/// `w = u (x + y + z)`: `5x^3 + 9y^3 - 10(x + y)^3 + 12w^3`.
pub fn fiber_at_infinity<R: Ring>(ring: &R) -> PlaneCubic<R::Elem> {
    second_chart(ring, &ring.zero())
}

/// `W_u` for `u = 1/v` as `5x^3 + 9y^3 + 10(v w - x - y)^3 + 12 w^3`.
pub fn second_chart<R: Ring>(ring: &R, v: &R::Elem) -> PlaneCubic<R::Elem> {
    let one = ring.one();
    let m1 = ring.neg(&one);
    let lin = crate::cubicgeom::TernaryForm::linear(ring, m1.clone(), m1, v.clone());
    let cube = lin.pow(ring, 3);
    let mut coeffs: Vec<R::Elem> = cube.coeffs().iter().map(|c| ring.mul(c, &ring.from_i64(10))).collect();
    let add = |c: &mut R::Elem, n: i64| *c = ring.add(c, &ring.from_i64(n));
    add(&mut coeffs[0], 5);
    add(&mut coeffs[6], 9);
    add(&mut coeffs[9], 12);
    PlaneCubic::new(ring, coeffs).expect("nonzero")
}

/// `X_t` with denominators cleared, over `Q[t]`: `D^3 (5x^3 + 9y^3 + 10z^3) + 12 N^3 (x + y + z)^3`.
pub fn fiber_over_qt() -> PlaneCubic<QPoly> {
    let q: PolyRing<RationalField> = qring();
    let n = numerator_poly();
    let d = denominator_poly();
    let d3 = q.pow(&d, 3);
    let w = q.scale(&q.pow(&n, 3), &BigRational::from_integer(12.into()));
    PlaneCubic::new(&q, pencil_member(&q, &d3, &w)).expect("nonzero")
}

/// `h(x, y, u)`: the pencil in the affine chart `z = 1`.
pub fn pencil_affine() -> MultiPoly<BigInt> {
    let v = ["x", "y", "u"];
    type P = MultiPoly<BigInt>;
    let (x, y, u) = (P::var(&v, "x"), P::var(&v, "y"), P::var(&v, "u"));
    let c = |n: i64| P::constant(&v, BigInt::from(n));
    let l = &(&x + &y) + &c(1);
    &(&(&(&c(5) * &x.pow(3)) + &(&c(9) * &y.pow(3))) + &c(10)) + &(&(&c(12) * &u.pow(3)) * &l.pow(3))
}

/// `u(t) = (t^12 - t^4 - 1)/(t^12 - t^8 - 1)`; `u(infinity) = 1`.
pub fn u_of_t(t: &ProjValue) -> ProjValue {
    match t {
        ProjValue::Infinity => ProjValue::Finite(BigRational::one()),
        ProjValue::Finite(t) => {
            let q = qring();
            let den = q.eval(&denominator_poly(), t);
            if den.is_zero() {
                ProjValue::Infinity
            } else {
                ProjValue::Finite(q.eval(&numerator_poly(), t) / den)
            }
        }
    }
}

/// Finite `u(t)` for rational `t` (the denominator has no rational root).
pub fn u_of_rational(t: &BigRational) -> BigRational {
    match u_of_t(&ProjValue::Finite(t.clone())) {
        ProjValue::Finite(u) => u,
        ProjValue::Infinity => unreachable!("t^12 - t^8 - 1 has no rational root"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueCheck {
    pub prime: u64,
    /// `v_p(u - 1)` for `p` in {2, 3, 5}, `v_p(u)` for 359.
    pub valuation: Valuation,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueReport {
    pub t: ProjValue,
    pub u: ProjValue,
    pub checks: Vec<ResidueCheck>,
    pub ok: bool,
}

/// `u(t) = 1 mod p` for `p` in {2, 3, 5} and `u(t)` integral at 359.
pub fn verify_residue_conditions(t: &BigRational) -> ResidueReport {
    let u = u_of_rational(t);
    let mut checks = Vec::new();
    for p in [2u64, 3, 5] {
        let v = p_valuation(&(&u - BigRational::one()), p);
        checks.push(ResidueCheck { prime: p, valuation: v, ok: v.at_least(1) });
    }
    let v = p_valuation(&u, 359);
    checks.push(ResidueCheck { prime: 359, valuation: v, ok: v.at_least(0) });
    let ok = checks.iter().all(|c| c.ok);
    ResidueReport { t: ProjValue::Finite(t.clone()), u: ProjValue::Finite(u), checks, ok }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    /// For each of 2, 3, 5: the images of `t -> t^4` on `P^1(F_p)`, as residues or "inf".
    pub fourth_powers: Vec<(u64, Vec<String>)>,
    /// `(v^3 - v - 1)/(v^3 - v^2 - 1)` at `v = 0, 1, inf`.
    pub u_at_special_v: Vec<(String, String)>,
    /// Roots of `t^12 - t^8 - 1` in `F_359`.
    pub denominator_roots_mod_359: Vec<u64>,
    pub u_at_infinity: String,
    pub ok: bool,
}

/// Exhaustive residue checks behind the local conditions on `u(t)`.
pub fn verify_structural_u_map() -> StructuralReport {
    let mut ok = true;
    let mut fourth_powers = Vec::new();
    for p in [2u64, 3, 5] {
        let mut images: Vec<String> = (0..p).map(|t| (t.pow(4) % p).to_string()).collect();
        images.push("inf".into());
        images.sort();
        images.dedup();
        ok &= images.iter().all(|s| s == "0" || s == "1" || s == "inf");
        fourth_powers.push((p, images));
    }
    let ratio = |v: &ProjValue| -> ProjValue {
        match v {
            ProjValue::Infinity => ProjValue::Finite(BigRational::one()),
            ProjValue::Finite(v) => {
                let num = v * v * v - v - BigRational::one();
                let den = v * v * v - v * v - BigRational::one();
                if den.is_zero() {
                    ProjValue::Infinity
                } else {
                    ProjValue::Finite(num / den)
                }
            }
        }
    };
    let one = ProjValue::Finite(BigRational::one());
    let specials = [ProjValue::Finite(BigRational::zero()), one.clone(), ProjValue::Infinity];
    let u_at_special_v: Vec<(String, String)> = specials
        .iter()
        .map(|v| {
            let u = ratio(v);
            ok &= u == one;
            (v.to_string(), u.to_string())
        })
        .collect();
    let f = PrimeField::new(359).expect("prime");
    let roots: Vec<u64> = (0..359u64)
        .filter(|&t| {
            let t4 = f.pow(&t, 4);
            let t8 = f.mul(&t4, &t4);
            let t12 = f.mul(&t8, &t4);
            f.is_zero(&f.sub(&f.sub(&t12, &t8), &1))
        })
        .collect();
    ok &= roots.is_empty();
    let u_inf = u_of_t(&ProjValue::Infinity);
    ok &= u_inf != ProjValue::Infinity;
    StructuralReport {
        fourth_powers,
        u_at_special_v,
        denominator_roots_mod_359: roots,
        u_at_infinity: u_inf.to_string(),
        ok,
    }
}

/// Which model of `W_u` a local certificate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiberChart {
    /// `(x, y, z)` with the cubic cleared of denominators.
    Standard,
    /// `(x, y, w)` with `w = u (x + y + z)`, used when `v_p(u) < 0`.
    Inverted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberSolvability {
    pub prime: u64,
    pub chart: FiberChart,
    /// Integral coefficients of the cubic the certificate refers to.
    #[serde(with = "crate::exactnum::as_string::vec")]
    pub cubic: Vec<BigInt>,
    pub certificate: SolvabilityCertificate,
}

impl FiberSolvability {
    pub fn replay(&self) -> bool {
        PlaneCubic::new(&crate::polyring::ring::IntegerRing, self.cubic.clone())
            .map(|c| self.certificate.replay(&c))
            .unwrap_or(false)
    }
}

/// `Q_p`-point of `W_u` modulo `p^n`, in the chart where the model is `p`-integral.
pub fn fiber_local_solvability(u: &BigRational, p: u64, n: u32) -> Result<FiberSolvability, CubicError> {
    if !is_prime(p) {
        return Err(CubicError::Lift(format!("{p} is not prime")));
    }
    let negative = matches!(p_valuation(u, p), Valuation::Finite(v) if v < 0);
    let (chart, cubic) = if negative {
        let v = u.recip();
        (FiberChart::Inverted, second_chart(&RationalField, &v).primitive_integral())
    } else {
        (FiberChart::Standard, build_fiber(u).primitive_integral())
    };
    let certificate = local_solvability(&cubic, p, n)?;
    Ok(FiberSolvability { prime: p, chart, cubic: cubic.coeffs().to_vec(), certificate })
}

/// Sign of a rational as -1, 0, 1.
pub(crate) fn sign_of(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn fiber_examples() {
        let w0 = build_fiber(&rat(0, 1));
        assert_eq!(w0, PlaneCubic::from_i64s([5, 0, 0, 0, 0, 0, 9, 0, 0, 10]).unwrap());
        let w1 = build_fiber(&rat(1, 1));
        assert_eq!(w1.coeffs()[4], rat(72, 1));
    }

    #[test]
    fn u_of_t_examples() {
        let f = |n, d| ProjValue::Finite(rat(n, d));
        assert_eq!(u_of_t(&f(0, 1)), f(1, 1));
        assert_eq!(u_of_t(&f(1, 1)), f(1, 1));
        assert_eq!(u_of_t(&ProjValue::Infinity), f(1, 1));
        assert_eq!(u_of_t(&f(2, 1)), f(4079, 3839));
    }

    #[test]
    fn residue_conditions_hold_for_examples() {
        for t in [rat(2, 1), rat(0, 1), rat(1, 1), rat(1, 2), rat(-7, 3)] {
            assert!(verify_residue_conditions(&t).ok);
        }
        let r = verify_residue_conditions(&rat(2, 1));
        assert_eq!(r.checks[0].valuation, Valuation::Finite(4));
    }

    #[test]
    fn structural_map_checks_pass() {
        let r = verify_structural_u_map();
        assert!(r.ok);
        assert!(r.denominator_roots_mod_359.is_empty());
    }

    #[test]
    fn second_chart_is_the_same_curve() {
        // Substituting z = v w - x - y into W_{1/v} gives the second chart.
        let v = rat(3, 7);
        let w = build_fiber(&v.recip());
        let m = [
            [rat(1, 1), rat(0, 1), rat(0, 1)],
            [rat(0, 1), rat(1, 1), rat(0, 1)],
            [rat(-1, 1), rat(-1, 1), v.clone()],
        ];
        let moved = w.transform(&RationalField, &m);
        assert_eq!(moved, second_chart(&RationalField, &v));
    }

    #[test]
    fn inverted_chart_is_used_when_u_has_a_pole() {
        // u(2) = 4079/3839 and 3839 = 11 * 349.
        let u = u_of_rational(&rat(2, 1));
        let s = fiber_local_solvability(&u, 11, 6).unwrap();
        assert_eq!(s.chart, FiberChart::Inverted);
        assert!(s.certificate.is_solvable());
        assert!(s.replay());
    }

    #[test]
    fn constants_load() {
        let c = FamilyConstants::default();
        assert_eq!(c.b_terms.len(), 19);
        assert_eq!(c.b_poly().deg0(), 72);
        assert_eq!(c.singular12_poly().deg0(), 12);
    }
}
