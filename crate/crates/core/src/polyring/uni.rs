//! Dense univariate polynomials over a [`Ring`] context.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::{Field, FiniteField, IntegerRing, RationalField, Ring};
use crate::exactnum::{BigInt, BigRational};

/// Coefficients in ascending order of degree with no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E> UniPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

impl<E: fmt::Display> UniPoly<E> {
    pub fn display_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            let c = c.to_string();
            if c == "0" {
                continue;
            }
            parts.push(match i {
                0 => c,
                1 => format!("({c})*{var}"),
                _ => format!("({c})*{var}^{i}"),
            });
        }
        parts.join(" + ")
    }
}

/// Polynomials in one variable over `R`.
#[derive(Clone, Debug, Default)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> UniPoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> UniPoly<R::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.base.from_i64(c)).collect())
    }

    pub fn constant(&self, c: R::Elem) -> UniPoly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn monomial(&self, c: R::Elem, d: usize) -> UniPoly<R::Elem> {
        let mut v = vec![self.base.zero(); d + 1];
        v[d] = c;
        self.from_coeffs(v)
    }

    pub fn x(&self) -> UniPoly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self, f: &UniPoly<R::Elem>) -> R::Elem {
        f.coeffs.last().cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn eval(&self, f: &UniPoly<R::Elem>, a: &R::Elem) -> R::Elem {
        f.coeffs.iter().rev().fold(self.base.zero(), |acc, c| {
            self.base.add(&self.base.mul(&acc, a), c)
        })
    }

    pub fn derivative(&self, f: &UniPoly<R::Elem>) -> UniPoly<R::Elem> {
        let v = f
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.base.mul(&self.base.from_i64(i as i64), c))
            .collect();
        self.from_coeffs(v)
    }

    pub fn scale(&self, f: &UniPoly<R::Elem>, c: &R::Elem) -> UniPoly<R::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    /// `f(x^k)`.
    pub fn inflate(&self, f: &UniPoly<R::Elem>, k: usize) -> UniPoly<R::Elem> {
        if f.is_zero() || k == 1 {
            return f.clone();
        }
        let mut v = vec![self.base.zero(); f.deg0() * k + 1];
        for (i, c) in f.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        self.from_coeffs(v)
    }

    /// Largest `k` with `f = g(x^k)`, together with `g`. Constants give `k = 0`.
    pub fn deflate(&self, f: &UniPoly<R::Elem>) -> (usize, UniPoly<R::Elem>) {
        let k = f
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !self.base.is_zero(c))
            .fold(0usize, |g, (i, _)| g.gcd(&i));
        if k <= 1 {
            return (k, f.clone());
        }
        let v = f.coeffs.iter().step_by(k).cloned().collect();
        (k, self.from_coeffs(v))
    }

    pub fn map_into<S: Ring>(
        &self,
        target: &PolyRing<S>,
        f: &UniPoly<R::Elem>,
        map: impl Fn(&R::Elem) -> S::Elem,
    ) -> UniPoly<S::Elem> {
        target.from_coeffs(f.coeffs.iter().map(map).collect())
    }

    fn add_impl(&self, a: &UniPoly<R::Elem>, b: &UniPoly<R::Elem>, negate_b: bool) -> UniPoly<R::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.base.zero();
        let v = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&zero);
                let y = b.coeffs.get(i).unwrap_or(&zero);
                if negate_b {
                    self.base.sub(x, y)
                } else {
                    self.base.add(x, y)
                }
            })
            .collect();
        self.from_coeffs(v)
    }

    fn mul_impl(&self, a: &UniPoly<R::Elem>, b: &UniPoly<R::Elem>) -> UniPoly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return UniPoly { coeffs: vec![] };
        }
        let mut v = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.base.mul(x, y);
                v[i + j] = self.base.add(&v[i + j], &t);
            }
        }
        self.from_coeffs(v)
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = UniPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        UniPoly { coeffs: vec![] }
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add_impl(a, b, false)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add_impl(a, b, true)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.from_coeffs(a.coeffs.iter().map(|c| self.base.neg(c)).collect())
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul_impl(a, b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let db = b.degree()?;
        if a.is_zero() {
            return Some(self.zero());
        }
        let da = a.degree()?;
        if da < db {
            return None;
        }
        let lb = self.lc(b);
        let mut r = a.coeffs.clone();
        let mut q = vec![self.base.zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let top = &r[i + db];
            if self.base.is_zero(top) {
                continue;
            }
            let c = self.base.div_exact(top, &lb)?;
            for (j, bc) in b.coeffs.iter().enumerate() {
                let t = self.base.mul(&c, bc);
                r[i + j] = self.base.sub(&r[i + j], &t);
            }
            q[i] = c;
        }
        if r.iter().any(|c| !self.base.is_zero(c)) {
            return None;
        }
        Some(self.from_coeffs(q))
    }
}

impl<F: Field> PolyRing<F> {
    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> (UniPoly<F::Elem>, UniPoly<F::Elem>) {
        let db = b.degree().expect("division by the zero polynomial");
        let inv = self.base.inv(&self.lc(b)).expect("leading coefficient is a unit");
        if a.deg0() < db || a.is_zero() {
            return (self.zero(), a.clone());
        }
        let da = a.deg0();
        let mut r = a.coeffs.clone();
        let mut q = vec![self.base.zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let top = &r[i + db];
            if self.base.is_zero(top) {
                continue;
            }
            let c = self.base.mul(top, &inv);
            for (j, bc) in b.coeffs.iter().enumerate() {
                let t = self.base.mul(&c, bc);
                r[i + j] = self.base.sub(&r[i + j], &t);
            }
            q[i] = c;
        }
        r.truncate(db);
        (self.from_coeffs(q), self.from_coeffs(r))
    }

    pub fn rem(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        self.divrem(a, b).1
    }

    pub fn monic(&self, f: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        if f.is_zero() {
            return f.clone();
        }
        let inv = self.base.inv(&self.lc(f)).expect("nonzero leading coefficient");
        self.scale(f, &inv)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
    pub fn ext_gcd(
        &self,
        a: &UniPoly<F::Elem>,
        b: &UniPoly<F::Elem>,
    ) -> (UniPoly<F::Elem>, UniPoly<F::Elem>, UniPoly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = self.base.inv(&self.lc(&r0)).expect("nonzero");
        (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
    }

    pub fn mulmod(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>, m: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    /// `a^e mod m`.
    pub fn powmod(&self, a: &UniPoly<F::Elem>, e: &BigUint, m: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        let mut acc = self.rem(&self.one(), m);
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, m);
            }
        }
        acc
    }

    /// `(gcd(f, f'), squarefree part)`, both monic. Valid in characteristic zero
    /// and, for the squarefreeness verdict, in any characteristic; see
    /// [`PolyRing::squarefree_decomposition`] for the exact finite-field version.
    pub fn gcd_and_squarefree_part(&self, f: &UniPoly<F::Elem>) -> (UniPoly<F::Elem>, UniPoly<F::Elem>) {
        let df = self.derivative(f);
        let g = self.gcd(f, &df);
        let part = self
            .div_exact(&self.monic(f), &g)
            .expect("gcd divides f");
        (g, part)
    }

    pub fn is_squarefree(&self, f: &UniPoly<F::Elem>) -> bool {
        if f.deg0() == 0 {
            return !f.is_zero();
        }
        let df = self.derivative(f);
        !df.is_zero() && self.gcd(f, &df).deg0() == 0
    }
}

impl<F: FiniteField> PolyRing<F> {
    /// Squarefree decomposition `f = lc * prod a_i^i` over a finite field,
    /// returned as `(a_i, i)` pairs with nonconstant monic `a_i`.
    pub fn squarefree_decomposition(&self, f: &UniPoly<F::Elem>) -> Vec<(UniPoly<F::Elem>, usize)> {
        let p = self.base.prime() as usize;
        let mut out = Vec::new();
        let f = self.monic(f);
        if f.deg0() == 0 {
            return out;
        }
        let df = self.derivative(&f);
        if df.is_zero() {
            let root = self.pth_root(&f);
            for (g, m) in self.squarefree_decomposition(&root) {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = self.gcd(&f, &df);
        let mut w = self.div_exact(&f, &c).expect("gcd divides");
        let mut i = 1;
        while w.deg0() > 0 {
            let y = self.gcd(&w, &c);
            let z = self.div_exact(&w, &y).expect("gcd divides");
            if z.deg0() > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = self.div_exact(&c, &w).expect("gcd divides");
        }
        if c.deg0() > 0 {
            let root = self.pth_root(&c);
            for (g, m) in self.squarefree_decomposition(&root) {
                out.push((g, m * p));
            }
        }
        out.sort_by_key(|(_, m)| *m);
        out
    }

    /// For `f = g(x^p)`, returns the `g^(1/p)` with `f = (that)^p`.
    fn pth_root(&self, f: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        let p = self.base.prime() as usize;
        let k = self.base.degree();
        let e = num_traits::pow(BigUint::from(self.base.prime()), k as usize - 1);
        let coeffs = f
            .coeffs
            .iter()
            .step_by(p)
            .map(|c| pow_big(&self.base, c, &e))
            .collect();
        self.from_coeffs(coeffs)
    }
}

/// `a^e` for an arbitrary-size exponent.
pub fn pow_big<R: Ring>(ring: &R, a: &R::Elem, e: &BigUint) -> R::Elem {
    let mut acc = ring.one();
    for i in (0..e.bits()).rev() {
        acc = ring.mul(&acc, &acc);
        if e.bit(i) {
            acc = ring.mul(&acc, a);
        }
    }
    acc
}

impl<E: fmt::Display> serde::Serialize for UniPoly<E> {
    /// Ascending coefficients as decimal strings.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::exactnum::as_string::vec::serialize(&self.coeffs, s)
    }
}

pub type ZPoly = UniPoly<BigInt>;
pub type QPoly = UniPoly<BigRational>;

pub fn zring() -> PolyRing<IntegerRing> {
    PolyRing::new(IntegerRing)
}

pub fn qring() -> PolyRing<RationalField> {
    PolyRing::new(RationalField)
}

pub fn zpoly(coeffs: &[i64]) -> ZPoly {
    zring().from_i64s(coeffs)
}

pub fn content(f: &ZPoly) -> BigInt {
    f.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(f: &ZPoly) -> ZPoly {
    if f.is_zero() {
        return f.clone();
    }
    let mut c = content(f);
    if zring().lc(f).is_negative() {
        c = -c;
    }
    zring().from_coeffs(f.coeffs().iter().map(|a| a / &c).collect())
}

pub fn z_to_q(f: &ZPoly) -> QPoly {
    qring().from_coeffs(f.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

/// Clears denominators and returns the primitive integer polynomial with positive leading coefficient.
pub fn q_to_primitive_z(f: &QPoly) -> ZPoly {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z = zring().from_coeffs(f.coeffs().iter().map(|c| (c * &den).to_integer()).collect());
    primitive_part(&z)
}

/// Primitive squarefree part over Q of an integer polynomial.
pub fn z_squarefree_part(f: &ZPoly) -> ZPoly {
    let q = qring();
    let (_, part) = q.gcd_and_squarefree_part(&z_to_q(f));
    q_to_primitive_z(&part)
}

/// Monic-free gcd over Q of integer polynomials, normalized primitive.
pub fn z_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    q_to_primitive_z(&qring().gcd(&z_to_q(a), &z_to_q(b)))
}

/// Exact quotient of integer polynomials over Q, normalized primitive.
pub fn z_div_primitive(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let q = qring();
    let (quot, r) = q.divrem(&z_to_q(a), &z_to_q(b));
    assert!(r.is_zero(), "inexact polynomial division");
    q_to_primitive_z(&quot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galoisfield::PrimeField;

    #[test]
    fn arithmetic_and_division() {
        let r = zring();
        let f = zpoly(&[-2, 0, 1]);
        let g = zpoly(&[-3, 1]);
        assert_eq!(r.mul(&f, &g), zpoly(&[6, -2, -3, 1]));
        assert_eq!(r.div_exact(&r.mul(&f, &g), &g), Some(f.clone()));
        assert_eq!(r.div_exact(&f, &g), None);
        assert_eq!(r.eval(&f, &BigInt::from(3)), BigInt::from(7));
    }

    #[test]
    fn squarefree_part_examples() {
        // x^2 (x + 1)
        let f = zpoly(&[0, 0, 1, 1]);
        assert_eq!(z_squarefree_part(&f), zpoly(&[0, 1, 1]));
    }

    #[test]
    fn deflate_inflate() {
        let r = zring();
        let f = zpoly(&[50625, 0, 0, 999000, 0, 0, 4282200]);
        let (k, g) = r.deflate(&f);
        assert_eq!(k, 3);
        assert_eq!(g, zpoly(&[50625, 999000, 4282200]));
        assert_eq!(r.inflate(&g, 3), f);
    }

    #[test]
    fn ext_gcd_identity() {
        let f7 = PrimeField::new(7).unwrap();
        let r = PolyRing::new(f7);
        let a = r.from_i64s(&[1, 2, 3, 4]);
        let b = r.from_i64s(&[5, 0, 1]);
        let (g, s, t) = r.ext_gcd(&a, &b);
        assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
    }

    #[test]
    fn squarefree_decomposition_char_p() {
        let f5 = PrimeField::new(5).unwrap();
        let r = PolyRing::new(f5);
        // (x+1)^2 (x^5 + 2)  -- the second factor is a fifth power (x + 2)^5
        let a = r.from_i64s(&[1, 1]);
        let b = r.from_i64s(&[2, 0, 0, 0, 0, 1]);
        let f = r.mul(&r.mul(&a, &a), &b);
        let dec = r.squarefree_decomposition(&f);
        let rebuilt = dec
            .iter()
            .fold(r.one(), |acc, (g, m)| r.mul(&acc, &r.pow(g, *m as u64)));
        assert_eq!(rebuilt, r.monic(&f));
        assert!(dec.iter().any(|(_, m)| *m == 5));
    }
}
