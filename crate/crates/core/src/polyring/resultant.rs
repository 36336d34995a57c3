//! Sylvester resultants and discriminants via fraction-free elimination.

use super::multi::{MultiPoly, MultiPolyRing};
use super::ring::{Coeff, Ring};
use super::uni::{PolyRing, UniPoly};
use super::PolyError;

/// Determinant over an integral domain by Bareiss elimination.
pub fn bareiss_det<R: Ring>(ring: &R, mut m: Vec<Vec<R::Elem>>) -> R::Elem {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let mut sign_flip = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&m[k][k]) {
            let Some(swap) = (k + 1..n).find(|&i| !ring.is_zero(&m[i][k])) else {
                return ring.zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = ring.sub(
                    &ring.mul(&m[i][j], &m[k][k]),
                    &ring.mul(&m[i][k], &m[k][j]),
                );
                m[i][j] = ring
                    .div_exact(&t, &prev)
                    .expect("Bareiss step divides exactly over an integral domain");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        ring.neg(&d)
    } else {
        d
    }
}

/// Sylvester matrix of coefficient lists given in ascending order.
pub fn sylvester_matrix<R: Ring>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> Vec<Vec<R::Elem>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![ring.zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![ring.zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res(f, g)` for coefficient lists in ascending order whose last entries are
/// the (formal) leading coefficients. `Res(x - a, x - b) = a - b`.
pub fn resultant_coeffs<R: Ring>(
    ring: &R,
    f: &[R::Elem],
    g: &[R::Elem],
) -> Result<R::Elem, PolyError> {
    if f.is_empty() || g.is_empty() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (m, n) = (f.len() - 1, g.len() - 1);
    if m == 0 && n == 0 {
        return Ok(ring.one());
    }
    if m == 0 {
        return Ok(ring.pow(&f[0], n as u64));
    }
    if n == 0 {
        return Ok(ring.pow(&g[0], m as u64));
    }
    Ok(bareiss_det(ring, sylvester_matrix(ring, f, g)))
}

pub fn resultant_uni<R: Ring>(
    ring: &PolyRing<R>,
    f: &UniPoly<R::Elem>,
    g: &UniPoly<R::Elem>,
) -> Result<R::Elem, PolyError> {
    resultant_coeffs(ring.base(), f.coeffs(), g.coeffs())
}

/// Resultant with respect to `var`; the result lives in the remaining variables.
pub fn resultant<C: Coeff>(
    f: &MultiPoly<C>,
    g: &MultiPoly<C>,
    var: &str,
) -> Result<MultiPoly<C>, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let fc = f.coefficients_in(var)?;
    let gc = g.coefficients_in(var)?;
    let rest = fc[0].vars();
    let ring = MultiPolyRing::<C>::new(&rest);
    resultant_coeffs(&ring, &fc, &gc)
}

/// `disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant<R: Ring>(ring: &PolyRing<R>, f: &UniPoly<R::Elem>) -> Result<R::Elem, PolyError> {
    let d = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    if d < 2 {
        return Err(PolyError::DegreeTooSmall(d));
    }
    let base = ring.base();
    let res = resultant_uni(ring, f, &ring.derivative(f))?;
    let q = base
        .div_exact(&res, &ring.lc(f))
        .ok_or(PolyError::InexactDivision)?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { base.neg(&q) } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::BigInt;
    use crate::polyring::uni::{zpoly, zring};
    use proptest::prelude::*;

    type P = MultiPoly<BigInt>;

    #[test]
    fn resultant_examples() {
        let r = zring();
        assert_eq!(
            resultant_uni(&r, &zpoly(&[-2, 0, 1]), &zpoly(&[-3, 1])).unwrap(),
            BigInt::from(7)
        );
        let v = ["x", "a", "b"];
        let x = P::var(&v, "x");
        let a = P::var(&v, "a");
        let b = P::var(&v, "b");
        let res = resultant(&(&x - &a), &(&x - &b), "x").unwrap();
        assert_eq!(res.to_string(), "a - b");
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        let v = ["x"];
        let z = P::zero(&v);
        assert_eq!(resultant(&z, &P::var(&v, "x"), "x"), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn discriminant_examples() {
        let r = zring();
        assert_eq!(discriminant(&r, &zpoly(&[1, 0, 1])).unwrap(), BigInt::from(-4));
        // 5x^3 + 9 - 10(x+1)^3 = -5x^3 - 30x^2 - 30x - 1
        assert_eq!(
            discriminant(&r, &zpoly(&[-1, -30, -30, -5])).unwrap(),
            BigInt::from(242325)
        );
        assert_eq!(discriminant(&r, &zpoly(&[1, 1])), Err(PolyError::DegreeTooSmall(1)));
    }

    fn small_poly() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-6i64..=6, 2..6).prop_filter("nonzero lead", |v| *v.last().unwrap() != 0)
    }

    proptest! {
        #[test]
        fn resultant_antisymmetry(f in small_poly(), g in small_poly()) {
            let r = zring();
            let (f, g) = (zpoly(&f), zpoly(&g));
            let fg = resultant_uni(&r, &f, &g).unwrap();
            let gf = resultant_uni(&r, &g, &f).unwrap();
            let sign = if (f.deg0() * g.deg0()) % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(fg, gf * BigInt::from(sign));
        }

        #[test]
        fn discriminant_vanishes_iff_repeated_root(f in small_poly()) {
            prop_assume!(f.len() >= 3);
            let r = zring();
            let f = zpoly(&f);
            let q = crate::polyring::uni::qring();
            let fq = crate::polyring::uni::z_to_q(&f);
            let g = q.gcd(&fq, &q.derivative(&fq));
            let disc = discriminant(&r, &f).unwrap();
            prop_assert_eq!(disc == BigInt::from(0), g.deg0() > 0);
        }
    }
}
