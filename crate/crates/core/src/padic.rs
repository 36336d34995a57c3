//! Truncated p-adic integers and Newton–Hensel lifting of simple roots.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{as_string, bigint_mod_inverse, int_valuation, is_prime, BigInt, Valuation};
use crate::polyring::{PolyRing, ZPoly};

/// Working precision used when the caller does not choose one.
pub const DEFAULT_PRECISION: u32 = 8;
/// Largest precision accepted by the lifter.
pub const MAX_PRECISION: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("slope condition fails: v(f(a0)) = {v_f}, v(f'(a0)) = {v_df}")]
    SlopeConditionFailed { v_f: String, v_df: String },
    #[error("precision {0} exceeds the supported bound")]
    PrecisionExhausted(u32),
    #[error("operands live in different rings Z/{0}^{1} and Z/{2}^{3}")]
    Mismatch(u64, u32, u64, u32),
}

/// Valuation of a truncated p-adic integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PadicValuation {
    Exact(u32),
    AtLeastPrecision(u32),
}

impl fmt::Display for PadicValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicValuation::Exact(v) => write!(f, "{v}"),
            PadicValuation::AtLeastPrecision(n) => write!(f, ">={n}"),
        }
    }
}

/// An element of `Z/p^N`, read as a p-adic integer known to precision `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicInt {
    p: u64,
    precision: u32,
    #[serde(with = "as_string")]
    residue: BigInt,
}

pub fn prime_power(p: u64, n: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), n as usize)
}

impl PadicInt {
    pub fn new(p: u64, precision: u32, value: &BigInt) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if precision == 0 || precision > MAX_PRECISION {
            return Err(PadicError::PrecisionExhausted(precision));
        }
        let residue = value.mod_floor(&prime_power(p, precision));
        Ok(PadicInt { p, precision, residue })
    }

    pub fn from_i64(p: u64, precision: u32, value: i64) -> Result<Self, PadicError> {
        Self::new(p, precision, &BigInt::from(value))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Representative in `[0, p^N)`.
    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> BigInt {
        prime_power(self.p, self.precision)
    }

    pub fn valuation(&self) -> PadicValuation {
        match int_valuation(&self.residue, self.p) {
            Valuation::Infinite => PadicValuation::AtLeastPrecision(self.precision),
            Valuation::Finite(v) => PadicValuation::Exact(v as u32),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == PadicValuation::Exact(0)
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = bigint_mod_inverse(&self.residue, &self.modulus())?;
        Some(PadicInt { residue: inv, ..self.clone() })
    }

    /// Reduction to a lower precision.
    pub fn truncate(&self, precision: u32) -> Self {
        let precision = precision.min(self.precision).max(1);
        let residue = self.residue.mod_floor(&prime_power(self.p, precision));
        PadicInt { p: self.p, precision, residue }
    }

    fn check(&self, other: &Self) -> Result<(), PadicError> {
        if self.p != other.p || self.precision != other.precision {
            return Err(PadicError::Mismatch(self.p, self.precision, other.p, other.precision));
        }
        Ok(())
    }

    fn with_residue(&self, r: BigInt) -> Self {
        PadicInt { p: self.p, precision: self.precision, residue: r.mod_floor(&self.modulus()) }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        Ok(self.with_residue(&self.residue + &other.residue))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        Ok(self.with_residue(&self.residue - &other.residue))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        Ok(self.with_residue(&self.residue * &other.residue))
    }
}

macro_rules! padic_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &PadicInt {
            type Output = PadicInt;
            /// Panics when the operands have different primes or precisions.
            fn $m(self, rhs: &PadicInt) -> PadicInt {
                self.$checked(rhs).expect("p-adic operands must share prime and precision")
            }
        }
    };
}
padic_op!(Add, add, checked_add);
padic_op!(Sub, sub, checked_sub);
padic_op!(Mul, mul, checked_mul);

impl Neg for &PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        self.with_residue(-&self.residue)
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.p, self.precision)
    }
}

/// Record of a successful Newton lift, replayable from its inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftCertificate {
    pub prime: u64,
    #[serde(with = "as_string")]
    pub a0: BigInt,
    /// `v(f(a0))`, exceeding `2 v(f'(a0))`.
    pub v_f_a0: Valuation,
    pub v_df_a0: u32,
    /// Root approximation in `[0, p^N)` with `v(f(residue)) >= N`.
    #[serde(with = "as_string")]
    pub residue: BigInt,
    pub precision: u32,
    /// Valuations `v(f(a_k))` along the iteration (capped at the working precision).
    pub trace: Vec<u32>,
    /// Ascending coefficients of `f`.
    #[serde(with = "as_string::vec")]
    pub poly: Vec<BigInt>,
}

impl LiftCertificate {
    pub fn as_padic(&self) -> PadicInt {
        PadicInt { p: self.prime, precision: self.precision, residue: self.residue.clone() }
    }

    /// Recomputes the lift from `a0` and checks every recorded field.
    pub fn replay(&self) -> bool {
        let f = crate::polyring::uni::zring().from_coeffs(self.poly.clone());
        match hensel_lift(&f, self.prime, &self.a0, self.precision) {
            Ok(c) => c == *self,
            Err(_) => false,
        }
    }

    /// Checks the defining inequalities directly, without replaying.
    pub fn verify(&self) -> bool {
        let r = crate::polyring::uni::zring();
        let f = r.from_coeffs(self.poly.clone());
        let vf = int_valuation(&r.eval(&f, &self.a0), self.prime);
        let vd = int_valuation(&r.eval(&r.derivative(&f), &self.a0), self.prime);
        let shift = prime_power(self.prime, (self.v_df_a0 + 1).min(self.precision));
        vf == self.v_f_a0
            && vd == Valuation::Finite(self.v_df_a0 as i64)
            && self.v_f_a0 > Valuation::Finite(2 * self.v_df_a0 as i64)
            && (&self.residue - &self.a0).mod_floor(&shift).is_zero()
            && int_valuation(&r.eval(&f, &self.residue), self.prime).at_least(self.precision as i64)
    }
}

fn val_u32(v: Valuation, cap: u32) -> u32 {
    match v {
        Valuation::Infinite => cap,
        Valuation::Finite(k) => (k as u32).min(cap),
    }
}

/// Newton iteration `a <- a - f(a)/f'(a)` from `a0` until `v_p(f(a)) >= n`.
///
/// Requires `v(f(a0)) > 2 v(f'(a0))`; the result is congruent to `a0`
/// modulo `p^(v(f'(a0)) + 1)`.
pub fn hensel_lift(f: &ZPoly, p: u64, a0: &BigInt, n: u32) -> Result<LiftCertificate, PadicError> {
    if !is_prime(p) {
        return Err(PadicError::NotPrime(p));
    }
    if n == 0 || n > MAX_PRECISION {
        return Err(PadicError::PrecisionExhausted(n));
    }
    let ring: PolyRing<_> = crate::polyring::uni::zring();
    let df = ring.derivative(f);
    let fa0 = ring.eval(f, a0);
    let dfa0 = ring.eval(&df, a0);
    let vf = int_valuation(&fa0, p);
    let vd = int_valuation(&dfa0, p);
    let e = match (vf, vd) {
        (_, Valuation::Infinite) => {
            return Err(PadicError::SlopeConditionFailed { v_f: vf.to_string(), v_df: vd.to_string() })
        }
        (Valuation::Finite(a), Valuation::Finite(b)) if a <= 2 * b => {
            return Err(PadicError::SlopeConditionFailed { v_f: vf.to_string(), v_df: vd.to_string() })
        }
        (_, Valuation::Finite(b)) => b as u32,
    };
    let working = n + e + 1;
    if working > MAX_PRECISION {
        return Err(PadicError::PrecisionExhausted(n));
    }
    let m = prime_power(p, working);
    let pe = prime_power(p, e);
    let mut a = a0.clone();
    let mut v = val_u32(vf, working + e);
    let mut trace = vec![v];
    while v < n {
        let fa = ring.eval(f, &a);
        let dfa = ring.eval(&df, &a);
        // f'(a) = p^e w with w a unit, preserved along the iteration.
        let (w, r) = dfa.div_rem(&pe);
        debug_assert!(r.is_zero());
        let w_inv = bigint_mod_inverse(&w.mod_floor(&m), &m).expect("unit derivative cofactor");
        let (q, r) = fa.div_rem(&pe);
        debug_assert!(r.is_zero());
        a = (&a - q * w_inv).mod_floor(&m);
        let nv = val_u32(int_valuation(&ring.eval(f, &a), p), working + e);
        assert!(
            nv >= (2 * v - 2 * e).min(working + e),
            "Newton step must double the excess valuation"
        );
        assert!(nv > v, "Newton step must make progress");
        v = nv;
        trace.push(v);
    }
    let residue = a.mod_floor(&prime_power(p, n));
    debug_assert!(int_valuation(&ring.eval(f, &residue), p).at_least(n as i64));
    Ok(LiftCertificate {
        prime: p,
        a0: a0.clone(),
        v_f_a0: vf,
        v_df_a0: e,
        residue,
        precision: n,
        trace,
        poly: f.coeffs().to_vec(),
    })
}

/// Smallest `a0` in `[0, p^k)` satisfying the slope condition, if any.
pub fn find_liftable_start(f: &ZPoly, p: u64, k: u32) -> Option<BigInt> {
    let ring = crate::polyring::uni::zring();
    let df = ring.derivative(f);
    let bound = prime_power(p, k);
    let mut a = BigInt::zero();
    while a < bound {
        let vf = int_valuation(&ring.eval(f, &a), p);
        let vd = int_valuation(&ring.eval(&df, &a), p);
        if let Valuation::Finite(d) = vd {
            if vf > Valuation::Finite(2 * d) {
                return Some(a);
            }
        }
        a += BigInt::one();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::uni::{zpoly, zring};
    use proptest::prelude::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(PadicInt::from_i64(3, 5, 18).unwrap().valuation(), PadicValuation::Exact(2));
        assert_eq!(PadicInt::from_i64(3, 5, 0).unwrap().valuation(), PadicValuation::AtLeastPrecision(5));
        assert_eq!(PadicInt::from_i64(5, 4, 375).unwrap().valuation(), PadicValuation::Exact(3));
    }

    #[test]
    fn lift_exact_root() {
        let c = hensel_lift(&zpoly(&[-5, 1]), 7, &BigInt::from(5), 4).unwrap();
        assert_eq!(c.residue, BigInt::from(5));
        assert!(c.replay() && c.verify());
    }

    #[test]
    fn lift_square_root_of_two_matches_search() {
        let c = hensel_lift(&zpoly(&[-2, 0, 1]), 7, &BigInt::from(3), 3).unwrap();
        let hits: Vec<i64> = (0..343).filter(|a| (a * a - 2) % 343 == 0 && a % 7 == 3).collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(c.residue, BigInt::from(hits[0]));
    }

    #[test]
    fn slope_condition_reports_both_valuations() {
        // x^2 - 2 at 0 modulo 2: v(f) = 1, v(f') = inf.
        let err = hensel_lift(&zpoly(&[-2, 0, 1]), 2, &BigInt::from(0), 4).unwrap_err();
        assert!(matches!(err, PadicError::SlopeConditionFailed { .. }));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = PadicInt::from_i64(3, 5, 1).unwrap();
        let b = PadicInt::from_i64(3, 4, 1).unwrap();
        assert!(a.checked_add(&b).is_err());
    }

    proptest! {
        #[test]
        fn reduction_is_a_ring_homomorphism(a in any::<i64>(), b in any::<i64>(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), n in 1u32..10) {
            let (ba, bb) = (BigInt::from(a), BigInt::from(b));
            let pa = PadicInt::new(p, n, &ba).unwrap();
            let pb = PadicInt::new(p, n, &bb).unwrap();
            prop_assert_eq!(&pa + &pb, PadicInt::new(p, n, &(&ba + &bb)).unwrap());
            prop_assert_eq!(&pa * &pb, PadicInt::new(p, n, &(&ba * &bb)).unwrap());
            prop_assert_eq!(&pa - &pb, PadicInt::new(p, n, &(&ba - &bb)).unwrap());
        }

        #[test]
        fn lifts_are_unique_and_replayable(c0 in -50i64..50, c1 in -50i64..50, p in prop::sample::select(vec![3u64, 5, 7]), n in 1u32..12) {
            let f = zpoly(&[c0, c1, 1, 1]);
            if let Some(a0) = find_liftable_start(&f, p, 2) {
                let c = hensel_lift(&f, p, &a0, n).unwrap();
                prop_assert!(c.verify());
                prop_assert!(c.replay());
                // a second start in the same residue class gives the same root mod p^(N - e)
                let shift = prime_power(p, c.v_df_a0 + 1);
                let a1 = &a0 + &shift;
                if let Ok(c2) = hensel_lift(&f, p, &a1, n) {
                    let k = n.saturating_sub(c.v_df_a0).max(1);
                    let m = prime_power(p, k);
                    prop_assert_eq!(c.residue.mod_floor(&m), c2.residue.mod_floor(&m));
                }
                let r = zring();
                prop_assert!(int_valuation(&r.eval(&f, &c.residue), p).at_least(n as i64));
            }
        }
    }
}
