//! Dense ternary forms.
//!
//! Monomials of degree `d` are ordered by descending `x` exponent, then
//! descending `y` exponent; for `d = 3` this is
//! `x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3`.

use crate::polyring::ring::{Field, Ring};

pub fn num_monomials(d: u32) -> usize {
    ((d + 1) * (d + 2) / 2) as usize
}

/// Index of `x^i y^j z^(d-i-j)`.
#[inline]
pub fn monomial_index(d: u32, i: u32, j: u32) -> usize {
    let a = d - i;
    (a * (a + 1) / 2 + (a - j)) as usize
}

/// Exponent triples in storage order.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(num_monomials(d));
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryForm<E> {
    degree: u32,
    coeffs: Vec<E>,
}

impl<E: Clone> TernaryForm<E> {
    pub fn from_coeffs(degree: u32, coeffs: Vec<E>) -> Self {
        assert_eq!(coeffs.len(), num_monomials(degree), "wrong number of coefficients");
        TernaryForm { degree, coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32, j: u32) -> &E {
        &self.coeffs[monomial_index(self.degree, i, j)]
    }

    pub fn map<F, R: Ring>(&self, f: F) -> TernaryForm<R::Elem>
    where
        F: Fn(&E) -> R::Elem,
    {
        TernaryForm { degree: self.degree, coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<E: Clone + PartialEq> TernaryForm<E> {
    pub fn zero<R: Ring<Elem = E>>(ring: &R, degree: u32) -> Self {
        TernaryForm { degree, coeffs: vec![ring.zero(); num_monomials(degree)] }
    }

    pub fn linear<R: Ring<Elem = E>>(_ring: &R, a: E, b: E, c: E) -> Self {
        TernaryForm { degree: 1, coeffs: vec![a, b, c] }
    }

    pub fn constant<R: Ring<Elem = E>>(_ring: &R, c: E) -> Self {
        TernaryForm { degree: 0, coeffs: vec![c] }
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.coeffs.iter().all(|c| ring.is_zero(c))
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| ring.add(a, b)).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| ring.sub(a, b)).collect(),
        }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        TernaryForm { degree: self.degree, coeffs: self.coeffs.iter().map(|a| ring.mul(a, c)).collect() }
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let d = self.degree + other.degree;
        let mut out = vec![ring.zero(); num_monomials(d)];
        let ma = monomials(self.degree);
        let mb = monomials(other.degree);
        for (ea, ca) in ma.iter().zip(&self.coeffs) {
            if ring.is_zero(ca) {
                continue;
            }
            for (eb, cb) in mb.iter().zip(&other.coeffs) {
                if ring.is_zero(cb) {
                    continue;
                }
                let k = monomial_index(d, ea[0] + eb[0], ea[1] + eb[1]);
                out[k] = ring.add(&out[k], &ring.mul(ca, cb));
            }
        }
        TernaryForm { degree: d, coeffs: out }
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, e: u32) -> Self {
        let mut acc = TernaryForm::constant(ring, ring.one());
        for _ in 0..e {
            acc = acc.mul(ring, self);
        }
        acc
    }

    pub fn eval<R: Ring<Elem = E>>(&self, ring: &R, pt: &[E; 3]) -> E {
        let pw = |v: &E| {
            let mut out = Vec::with_capacity(self.degree as usize + 1);
            out.push(ring.one());
            for k in 0..self.degree as usize {
                out.push(ring.mul(&out[k], v));
            }
            out
        };
        let (px, py, pz) = (pw(&pt[0]), pw(&pt[1]), pw(&pt[2]));
        let mut acc = ring.zero();
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if ring.is_zero(c) {
                continue;
            }
            let t = ring.mul(&ring.mul(c, &px[e[0] as usize]), &ring.mul(&py[e[1] as usize], &pz[e[2] as usize]));
            acc = ring.add(&acc, &t);
        }
        acc
    }

    /// Partial derivative with respect to variable `var` (0, 1, 2 for x, y, z).
    pub fn partial<R: Ring<Elem = E>>(&self, ring: &R, var: usize) -> Self {
        if self.degree == 0 {
            return TernaryForm::zero(ring, 0);
        }
        let d = self.degree - 1;
        let mut out = vec![ring.zero(); num_monomials(d)];
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if e[var] == 0 || ring.is_zero(c) {
                continue;
            }
            let mut f = *e;
            f[var] -= 1;
            let k = monomial_index(d, f[0], f[1]);
            out[k] = ring.add(&out[k], &ring.mul(c, &ring.from_i64(e[var] as i64)));
        }
        TernaryForm { degree: d, coeffs: out }
    }

    /// `F(M (X, Y, Z)^T)`: each old variable replaced by the row `m[i]` as a linear form.
    pub fn substitute<R: Ring<Elem = E>>(&self, ring: &R, m: &[[E; 3]; 3]) -> Self {
        let lin: Vec<TernaryForm<E>> = m
            .iter()
            .map(|r| TernaryForm::linear(ring, r[0].clone(), r[1].clone(), r[2].clone()))
            .collect();
        let powers: Vec<Vec<TernaryForm<E>>> = lin
            .iter()
            .map(|l| {
                let mut v = vec![TernaryForm::constant(ring, ring.one())];
                for k in 0..self.degree as usize {
                    v.push(v[k].mul(ring, l));
                }
                v
            })
            .collect();
        let mut out = TernaryForm::zero(ring, self.degree);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if ring.is_zero(c) {
                continue;
            }
            let t = powers[0][e[0] as usize]
                .mul(ring, &powers[1][e[1] as usize])
                .mul(ring, &powers[2][e[2] as usize]);
            out = out.add(ring, &t.scale(ring, c));
        }
        out
    }

    /// Whether `self` and `other` are linearly dependent (the zero form is
    /// proportional to everything).
    pub fn proportional<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> bool {
        assert_eq!(self.degree, other.degree);
        let n = self.coeffs.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                ring.mul(&self.coeffs[i], &other.coeffs[j]) == ring.mul(&self.coeffs[j], &other.coeffs[i])
            })
        })
    }

    /// Determinant of the matrix of second partials, a form of degree `3(d - 2)`.
    pub fn hessian<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        let first: Vec<Self> = (0..3).map(|i| self.partial(ring, i)).collect();
        let h: Vec<Vec<Self>> = first.iter().map(|f| (0..3).map(|j| f.partial(ring, j)).collect()).collect();
        let minor = |a: usize, b: usize, c: usize, d: usize| h[1][a].mul(ring, &h[2][b]).sub(ring, &h[1][c].mul(ring, &h[2][d]));
        let t0 = h[0][0].mul(ring, &minor(1, 2, 2, 1));
        let t1 = h[0][1].mul(ring, &minor(0, 2, 2, 0));
        let t2 = h[0][2].mul(ring, &minor(0, 1, 1, 0));
        t0.sub(ring, &t1).add(ring, &t2)
    }
}

impl<E: Clone + PartialEq> TernaryForm<E> {
    /// Exact quotient by a nonzero linear form, if it divides.
    pub fn div_linear<F: Field<Elem = E>>(&self, field: &F, l: &TernaryForm<E>) -> Option<Self> {
        assert_eq!(l.degree, 1);
        if self.degree == 0 {
            return if self.is_zero(field) { Some(self.clone()) } else { None };
        }
        let v = (0..3).find(|&i| !field.is_zero(&l.coeffs[i]))?;
        let lead_inv = field.inv(&l.coeffs[v])?;
        let d = self.degree;
        let mut rem = self.clone();
        let mut q = TernaryForm::zero(field, d - 1);
        // Eliminate monomials in decreasing order of the exponent of variable v.
        for ev in (1..=d).rev() {
            for e in monomials(d).into_iter().filter(|e| e[v] == ev) {
                let k = monomial_index(d, e[0], e[1]);
                let c = rem.coeffs[k].clone();
                if field.is_zero(&c) {
                    continue;
                }
                let mut f = e;
                f[v] -= 1;
                let t = field.mul(&c, &lead_inv);
                let qi = monomial_index(d - 1, f[0], f[1]);
                q.coeffs[qi] = field.add(&q.coeffs[qi], &t);
                let mut mono = TernaryForm::zero(field, d - 1);
                mono.coeffs[qi] = t;
                rem = rem.sub(field, &mono.mul(field, l));
            }
        }
        rem.is_zero(field).then_some(q)
    }
}
