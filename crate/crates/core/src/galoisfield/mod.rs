//! Prime fields and their extensions `F_{p^k}`, built directly over `F_p`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

mod table;

pub use table::{table_field, TableField, MAX_TABLE_ORDER};

use crate::exactnum::{is_prime, mod_inverse};
use crate::polyring::factor::{is_irreducible, roots_with_multiplicity};
use crate::polyring::ring::{Field, FiniteField, Ring};
use crate::polyring::uni::{PolyRing, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(usize),
    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u64, u64),
    #[error("field of order {0} is too large for table arithmetic")]
    TooLarge(u128),
}

/// `Z/pZ` with elements stored as reduced `u64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        // Elements are multiplied as u64; keep products below 2^64.
        if !is_prime(p) || p >= (1 << 32) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_bigint(&self, n: &num_bigint::BigInt) -> u64 {
        use num_integer::Integer;
        let r = n.mod_floor(&num_bigint::BigInt::from(self.p));
        u64::try_from(r).expect("reduced residue fits")
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        self.div(a, b)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            mod_inverse(*a, self.p)
        }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl FiniteField for PrimeField {
    fn order(&self) -> u128 {
        self.p as u128
    }
    fn prime(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> u32 {
        1
    }
    fn element(&self, index: u128) -> u64 {
        index as u64
    }
    fn index_of(&self, a: &u64) -> u128 {
        *a as u128
    }
    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn embed_prime(&self, a: u64) -> u64 {
        a % self.p
    }
}

/// Element of an [`ExtField`]: residue coefficients in ascending order, trimmed.
pub type FqElem = Vec<u64>;

struct ExtInner {
    base: PrimeField,
    k: usize,
    /// Monic modulus, ascending, length `k + 1`.
    modulus: Vec<u64>,
}

/// `F_{p^k} = F_p[x] / (m(x))`.
#[derive(Clone)]
pub struct ExtField {
    inner: Arc<ExtInner>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}[{:?}]", self.inner.base.p, self.inner.k, self.inner.modulus)
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus
    }
}

impl ExtField {
    /// Uses the given monic modulus after checking that it is irreducible.
    pub fn with_modulus(base: PrimeField, modulus: &UniPoly<u64>) -> Result<Self, FieldError> {
        let k = modulus.degree().ok_or(FieldError::BadModulus(0))?;
        let ring = PolyRing::new(base);
        if k == 0 || ring.lc(modulus) != 1 || !is_irreducible(&ring, modulus) {
            return Err(FieldError::BadModulus(k));
        }
        Ok(ExtField {
            inner: Arc::new(ExtInner { base, k, modulus: modulus.coeffs().to_vec() }),
        })
    }

    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    pub fn k(&self) -> usize {
        self.inner.k
    }

    pub fn modulus(&self) -> UniPoly<u64> {
        PolyRing::new(self.inner.base).from_coeffs(self.inner.modulus.clone())
    }

    /// The class of `x`, a generator of the extension over `F_p`.
    pub fn generator(&self) -> FqElem {
        self.normalize(vec![0, 1])
    }

    fn normalize(&self, mut v: Vec<u64>) -> FqElem {
        let p = self.inner.base.p;
        let k = self.inner.k;
        let m = &self.inner.modulus;
        for i in (k..v.len()).rev() {
            let c = v[i] % p;
            if c == 0 {
                continue;
            }
            // subtract c * x^(i-k) * m
            for j in 0..=k {
                let t = c * m[j] % p;
                v[i - k + j] = (v[i - k + j] + p - t) % p;
            }
        }
        v.truncate(k);
        for c in v.iter_mut() {
            *c %= p;
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn from_residue(&self, v: Vec<u64>) -> FqElem {
        self.normalize(v)
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.inner.base.p)
    }
}

impl Ring for ExtField {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        Vec::new()
    }
    fn one(&self) -> FqElem {
        vec![1]
    }
    fn from_i64(&self, n: i64) -> FqElem {
        self.normalize(vec![self.inner.base.reduce_i64(n)])
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let f = &self.inner.base;
        let n = a.len().max(b.len());
        let mut v: Vec<u64> = (0..n)
            .map(|i| f.add(a.get(i).unwrap_or(&0), b.get(i).unwrap_or(&0)))
            .collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let f = &self.inner.base;
        let n = a.len().max(b.len());
        let mut v: Vec<u64> = (0..n)
            .map(|i| f.sub(a.get(i).unwrap_or(&0), b.get(i).unwrap_or(&0)))
            .collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        let f = &self.inner.base;
        a.iter().map(|c| f.neg(c)).collect()
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.inner.base.p;
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                v[i + j] = (v[i + j] + x * y) % p;
            }
        }
        self.normalize(v)
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.is_empty()
    }
    fn div_exact(&self, a: &FqElem, b: &FqElem) -> Option<FqElem> {
        self.div(a, b)
    }
}

impl Field for ExtField {
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.is_empty() {
            return None;
        }
        let ring = PolyRing::new(self.inner.base);
        let a_poly = ring.from_coeffs(a.clone());
        let (g, s, _) = ring.ext_gcd(&a_poly, &self.modulus());
        debug_assert_eq!(g.coeffs(), &[1]);
        Some(self.normalize(s.into_coeffs()))
    }
    fn characteristic(&self) -> u64 {
        self.inner.base.p
    }
}

impl FiniteField for ExtField {
    fn order(&self) -> u128 {
        (self.inner.base.p as u128).pow(self.inner.k as u32)
    }
    fn prime(&self) -> u64 {
        self.inner.base.p
    }
    fn degree(&self) -> u32 {
        self.inner.k as u32
    }
    fn element(&self, mut index: u128) -> FqElem {
        let p = self.inner.base.p as u128;
        let mut v = Vec::with_capacity(self.inner.k);
        for _ in 0..self.inner.k {
            v.push((index % p) as u64);
            index /= p;
        }
        self.normalize(v)
    }
    fn index_of(&self, a: &FqElem) -> u128 {
        let p = self.inner.base.p as u128;
        a.iter().rev().fold(0u128, |acc, &c| acc * p + c as u128)
    }
    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> FqElem {
        let v = (0..self.inner.k).map(|_| rng.gen_range(0..self.inner.base.p)).collect();
        self.normalize(v)
    }
    fn embed_prime(&self, a: u64) -> FqElem {
        self.normalize(vec![a % self.inner.base.p])
    }
}

/// `F_{p^k}` with the lexicographically first monic irreducible modulus of degree `k`
/// (coefficient vectors compared from the `x^(k-1)` term down).
pub fn build_extension(p: u64, k: usize) -> Result<ExtField, FieldError> {
    if k == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let base = PrimeField::new(p)?;
    let ring = PolyRing::new(base);
    let mut index: u128 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut i = index;
        for _ in 0..k {
            coeffs.push((i % p as u128) as u64);
            i /= p as u128;
        }
        coeffs.push(1);
        let m = ring.from_coeffs(coeffs);
        if is_irreducible(&ring, &m) {
            return ExtField::with_modulus(base, &m);
        }
        index += 1;
    }
}

/// All roots of `f` (over `F_p`) that lie in `field`, with multiplicities,
/// sorted by the field's element enumeration.
pub fn roots_in_field<K: FiniteField>(
    f: &UniPoly<u64>,
    field: &K,
    seed: u64,
) -> Result<Vec<(K::Elem, usize)>, FieldError> {
    let p = field.prime();
    let lifted = PolyRing::new(field.clone())
        .from_coeffs(f.coeffs().iter().map(|&c| field.embed_prime(c % p)).collect());
    Ok(roots_with_multiplicity(field, &lifted, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn extension_moduli_are_lexicographically_first() {
        let f2 = build_extension(2, 1).unwrap();
        assert_eq!(f2.modulus().coeffs(), &[0, 1]);
        let f8 = build_extension(2, 3).unwrap();
        assert_eq!(f8.modulus().coeffs(), &[1, 1, 0, 1]);
        // Independent scan: first monic quadratic x^2 + a x + b mod 7 without roots.
        let f49 = build_extension(7, 2).unwrap();
        let mut expected = None;
        'outer: for a in 0..7u64 {
            for b in 0..7u64 {
                if (0..7u64).all(|x| (x * x + a * x + b) % 7 != 0) {
                    expected = Some(vec![b, a, 1]);
                    break 'outer;
                }
            }
        }
        assert_eq!(f49.modulus().coeffs(), expected.unwrap().as_slice());
    }

    #[test]
    fn roots_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let r2 = PolyRing::new(f2);
        let roots = roots_in_field(&r2.from_i64s(&[1, 0, 1]), &f2, 1).unwrap();
        assert_eq!(roots, vec![(1, 2)]);

        let f9 = build_extension(3, 2).unwrap();
        let r3 = PolyRing::new(PrimeField::new(3).unwrap());
        let roots = roots_in_field(&r3.from_i64s(&[1, 0, 1]), &f9, 1).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn roots_match_exhaustive_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(2u64, 4usize), (3, 3), (5, 2), (7, 2), (11, 1)] {
            let field = build_extension(p, k).unwrap();
            let base = PolyRing::new(PrimeField::new(p).unwrap());
            for _ in 0..10 {
                let deg = rng.gen_range(1..7);
                let mut c: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
                c[deg] = 1;
                let f = base.from_coeffs(c);
                let lifted = PolyRing::new(field.clone())
                    .from_coeffs(f.coeffs().iter().map(|&a| field.embed_prime(a)).collect());
                let mut brute: Vec<FqElem> = field
                    .elements()
                    .filter(|a| PolyRing::new(field.clone()).eval(&lifted, a).is_empty())
                    .collect();
                let mut found: Vec<FqElem> =
                    roots_in_field(&f, &field, 3).unwrap().into_iter().map(|(a, _)| a).collect();
                brute.sort();
                found.sort();
                assert_eq!(brute, found, "p={p} k={k} f={f:?}");
            }
        }
    }

    #[test]
    fn frobenius_is_an_automorphism_fixing_the_prime_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let k = build_extension(5, 3).unwrap();
        for _ in 0..50 {
            let a = k.random(&mut rng);
            let b = k.random(&mut rng);
            assert_eq!(k.frobenius(&k.mul(&a, &b)), k.mul(&k.frobenius(&a), &k.frobenius(&b)));
            assert_eq!(k.frobenius(&k.add(&a, &b)), k.add(&k.frobenius(&a), &k.frobenius(&b)));
        }
        let fixed: Vec<FqElem> = k.elements().filter(|a| k.frobenius(a) == *a).collect();
        assert_eq!(fixed.len(), 5);
        assert!(fixed.iter().all(|a| a.len() <= 1));
    }

    #[test]
    fn element_orders_divide_group_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, k) in [(2u64, 5usize), (3, 4), (7, 3), (13, 2)] {
            let field = build_extension(p, k).unwrap();
            let n = field.order() as u64 - 1;
            for _ in 0..20 {
                let a = field.random(&mut rng);
                if a.is_empty() {
                    continue;
                }
                assert_eq!(field.pow(&a, n), field.one());
                let inv = field.inv(&a).unwrap();
                assert_eq!(field.mul(&a, &inv), field.one());
            }
        }
    }
}
