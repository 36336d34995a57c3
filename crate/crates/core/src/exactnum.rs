//! Exact integers and rationals, prime-basis factorization and p-adic valuations.

use std::cmp::Ordering;
use std::fmt;

pub use num_bigint::{BigInt, BigUint, Sign};
pub use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot factor zero")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("residual factor {0} is not supported on the prime basis")]
    NonSmoothRemainder(BigInt),
}

/// Deterministic trial-division primality test, adequate for the small moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Primes in the closed interval `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// An integer written as `sign * prod(p^e)` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredInteger {
    pub sign: i8,
    pub factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn value(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for &(p, e) in &self.factors {
            acc *= num_traits::pow(BigInt::from(p), e as usize);
        }
        acc
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| *q == p)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Divides `n` by every prime of `basis` as often as possible.
///
/// Fails with [`NumError::NonSmoothRemainder`] when something other than a
/// unit is left over. No general factoring is attempted.
pub fn factor_over_basis(n: &BigInt, basis: &[u64]) -> Result<FactoredInteger, NumError> {
    if n.is_zero() {
        return Err(NumError::ZeroInput);
    }
    let mut primes: Vec<u64> = basis.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(NumError::NotPrime(bad));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut factors = Vec::new();
    for p in primes {
        let bp = BigInt::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    if !rest.is_one() {
        return Err(NumError::NonSmoothRemainder(rest * sign));
    }
    Ok(FactoredInteger { sign, factors })
}

/// A p-adic valuation; zero has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn at_least(self, k: i64) -> bool {
        match self {
            Valuation::Infinite => true,
            Valuation::Finite(v) => v >= k,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let bp = BigInt::from(p);
    let mut v = 0i64;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&bp);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        m = q;
        v += 1;
    }
}

pub fn p_valuation(q: &BigRational, p: u64) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinite;
    }
    match (int_valuation(q.numer(), p), int_valuation(q.denom(), p)) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => unreachable!("nonzero rational has finite valuations"),
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn checked_div(a: &BigRational, b: &BigRational) -> Result<BigRational, NumError> {
    if b.is_zero() {
        Err(NumError::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Parses `"n"` or `"n/d"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

/// Reduction of a rational with `v_p >= 0` modulo `p`.
pub fn rational_mod_p(q: &BigRational, p: u64) -> Option<u64> {
    let bp = BigInt::from(p);
    let den = q.denom().mod_floor(&bp);
    if den.is_zero() {
        return None;
    }
    let num = q.numer().mod_floor(&bp);
    let den = u64::try_from(den).ok()?;
    let num = u64::try_from(num).ok()?;
    Some(num * mod_inverse(den, p)? % p)
}

/// Reduction of a rational with `v_p >= 0` modulo `m` (any modulus coprime to its denominator).
pub fn rational_mod(q: &BigRational, m: &BigInt) -> Option<BigInt> {
    let den = q.denom().mod_floor(m);
    let inv = bigint_mod_inverse(&den, m)?;
    Some((q.numer().mod_floor(m) * inv).mod_floor(m))
}

pub fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(p as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(p as i128) as u64)
}

pub fn bigint_mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

/// Renders a rational as `"n"` or `"n/d"`.
pub fn rat_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serializes exact numbers as decimal strings (`"n"` or `"n/d"`).
pub mod as_string {
    use serde::Serializer;
    use std::fmt::Display;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub mod vec {
        use serde::ser::{SerializeSeq, Serializer};
        use std::fmt::Display;

        pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_intersection_discriminant() {
        let f = factor_over_basis(&BigInt::from(242325), &[3, 5, 359]).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(f.factors, vec![(3, 3), (5, 2), (359, 1)]);
        assert_eq!(f.to_string(), "3^3 * 5^2 * 359");
    }

    #[test]
    fn factor_units_and_powers() {
        let one = factor_over_basis(&BigInt::from(1), &[2]).unwrap();
        assert_eq!((one.sign, one.factors.len()), (1, 0));
        let neg = factor_over_basis(&BigInt::from(-1024), &[2]).unwrap();
        assert_eq!(neg.sign, -1);
        assert_eq!(neg.factors, vec![(2, 10)]);
    }

    #[test]
    fn factor_rejects_rough_numbers() {
        assert_eq!(
            factor_over_basis(&BigInt::from(2 * 7 * 7), &[2, 3]),
            Err(NumError::NonSmoothRemainder(BigInt::from(49)))
        );
        assert_eq!(factor_over_basis(&BigInt::from(0), &[2]), Err(NumError::ZeroInput));
        assert_eq!(factor_over_basis(&BigInt::from(8), &[4]), Err(NumError::NotPrime(4)));
    }

    #[test]
    fn rational_examples() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
        assert_eq!(rat(4079, 3839) - rat_int(1), rat(240, 3839));
        assert_eq!(rat(2, 4).cmp(&rat(1, 2)), Ordering::Equal);
        assert_eq!(checked_div(&rat(1, 2), &rat_int(0)), Err(NumError::DivisionByZero));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(p_valuation(&rat(240, 3839), 5), Valuation::Finite(1));
        assert_eq!(p_valuation(&rat_int(0), 7), Valuation::Infinite);
        assert_eq!(p_valuation(&rat(1, 9), 3), Valuation::Finite(-2));
    }

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(rational_mod_p(&rat(1, 2), 7), Some(4));
        assert_eq!(rational_mod_p(&rat(1, 7), 7), None);
    }

    #[test]
    fn small_primes() {
        assert_eq!(primes_in(1, 20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(is_prime(359));
        assert!(!is_prime(361));
    }
}
