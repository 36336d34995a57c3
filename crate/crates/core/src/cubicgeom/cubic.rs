//! Plane cubics and projective points.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::forms::{monomials, TernaryForm};
use super::CubicError;
use crate::exactnum::{BigInt, BigRational};
use crate::galoisfield::PrimeField;
use crate::polyring::ring::{Field, FiniteField, IntegerRing, RationalField, Ring};

/// Monomial labels in coefficient order.
pub const MONOMIAL_NAMES: [&str; 10] = ["x^3", "x^2y", "x^2z", "xy^2", "xyz", "xz^2", "y^3", "y^2z", "yz^2", "z^3"];

/// A nonzero ternary cubic form; coefficients follow [`MONOMIAL_NAMES`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlaneCubic<E> {
    form: TernaryForm<E>,
}

impl<E: Clone + PartialEq> PlaneCubic<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, coeffs: Vec<E>) -> Result<Self, CubicError> {
        if coeffs.len() != 10 {
            return Err(CubicError::WrongArity(coeffs.len()));
        }
        let form = TernaryForm::from_coeffs(3, coeffs);
        if form.is_zero(ring) {
            return Err(CubicError::ZeroCubic);
        }
        Ok(PlaneCubic { form })
    }

    pub fn from_form<R: Ring<Elem = E>>(ring: &R, form: TernaryForm<E>) -> Result<Self, CubicError> {
        if form.degree() != 3 {
            return Err(CubicError::WrongArity(form.coeffs().len()));
        }
        Self::new(ring, form.coeffs().to_vec())
    }

    pub fn coeffs(&self) -> &[E] {
        self.form.coeffs()
    }

    pub fn form(&self) -> &TernaryForm<E> {
        &self.form
    }

    pub fn eval<R: Ring<Elem = E>>(&self, ring: &R, pt: &[E; 3]) -> E {
        self.form.eval(ring, pt)
    }

    pub fn gradient<R: Ring<Elem = E>>(&self, ring: &R) -> [TernaryForm<E>; 3] {
        [self.form.partial(ring, 0), self.form.partial(ring, 1), self.form.partial(ring, 2)]
    }

    /// `F` and its three partials vanish at `pt`.
    pub fn is_singular_at<R: Ring<Elem = E>>(&self, ring: &R, pt: &[E; 3]) -> bool {
        ring.is_zero(&self.eval(ring, pt)) && self.gradient(ring).iter().all(|g| ring.is_zero(&g.eval(ring, pt)))
    }

    /// Image under the substitution `(x, y, z)^T -> M (x, y, z)^T`.
    pub fn transform<R: Ring<Elem = E>>(&self, ring: &R, m: &[[E; 3]; 3]) -> Self {
        PlaneCubic { form: self.form.substitute(ring, m) }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        PlaneCubic { form: self.form.scale(ring, c) }
    }

    pub fn map<S: Ring>(&self, ring: &S, f: impl Fn(&E) -> S::Elem) -> Result<PlaneCubic<S::Elem>, CubicError> {
        PlaneCubic::new(ring, self.coeffs().iter().map(f).collect())
    }

    pub fn display_with(&self, show: impl Fn(&E) -> String, is_zero: impl Fn(&E) -> bool) -> String {
        let parts: Vec<String> = self
            .coeffs()
            .iter()
            .zip(MONOMIAL_NAMES)
            .filter(|(c, _)| !is_zero(c))
            .map(|(c, m)| format!("({})*{}", show(c), m))
            .collect();
        parts.join(" + ")
    }
}

impl PlaneCubic<BigRational> {
    pub fn from_i64s(coeffs: [i64; 10]) -> Result<Self, CubicError> {
        PlaneCubic::new(&RationalField, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// Primitive integral multiple (positive first nonzero coefficient).
    pub fn primitive_integral(&self) -> PlaneCubic<BigInt> {
        let den = self.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs().iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let first_neg = ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        let g = if first_neg { -g } else { g };
        PlaneCubic::new(&IntegerRing, ints.iter().map(|c| c / &g).collect()).expect("nonzero")
    }
}

impl PlaneCubic<BigInt> {
    pub fn to_rational(&self) -> PlaneCubic<BigRational> {
        PlaneCubic { form: TernaryForm::from_coeffs(3, self.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()) }
    }

    /// Reduction modulo `p`; `None` if every coefficient is divisible by `p`.
    pub fn reduce<K: FiniteField>(&self, field: &K) -> Option<PlaneCubic<K::Elem>> {
        let fp = PrimeField::new(field.prime()).ok()?;
        self.map(field, |c| field.embed_prime(fp.reduce_bigint(c))).ok()
    }
}

impl<E: Clone + PartialEq + fmt::Display> fmt::Display for PlaneCubic<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs()
            .iter()
            .zip(MONOMIAL_NAMES)
            .map(|(c, m)| format!("{c}*{m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exponent triples of the ten cubic monomials.
pub fn cubic_monomials() -> Vec<[u32; 3]> {
    monomials(3)
}

/// A point of the projective plane, stored with first nonzero coordinate 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint<E> {
    coords: [E; 3],
}

impl<E: Clone + PartialEq> ProjPoint<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, coords: [E; 3]) -> Result<Self, CubicError> {
        let i = (0..3).find(|&i| !field.is_zero(&coords[i])).ok_or(CubicError::ZeroPoint)?;
        let inv = field.inv(&coords[i]).expect("nonzero");
        Ok(ProjPoint { coords: [0, 1, 2].map(|k| field.mul(&coords[k], &inv)) })
    }

    pub fn coords(&self) -> &[E; 3] {
        &self.coords
    }

    /// Index of the first nonzero coordinate (which equals 1).
    pub fn chart<F: Field<Elem = E>>(&self, field: &F) -> usize {
        (0..3).find(|&i| !field.is_zero(&self.coords[i])).expect("nonzero point")
    }
}

/// All points of `P^2(F_q)`, in the canonical order: `(1:a:b)` by `(a, b)`,
/// then `(0:1:b)`, then `(0:0:1)`; field elements ordered by their enumeration index.
pub fn projective_points<K: FiniteField>(field: &K) -> impl Iterator<Item = ProjPoint<K::Elem>> + '_ {
    let q = field.order();
    let first = (0..q).flat_map(move |a| (0..q).map(move |b| [field.one(), field.element(a), field.element(b)]));
    let second = (0..q).map(move |b| [field.zero(), field.one(), field.element(b)]);
    let third = std::iter::once([field.zero(), field.zero(), field.one()]);
    first.chain(second).chain(third).map(|coords| ProjPoint { coords })
}

/// Integer coordinates for a point, printed as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntPoint(#[serde(with = "crate::exactnum::as_string::vec")] pub [BigInt; 3]);

impl fmt::Display for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2])
    }
}

impl<E: fmt::Display> fmt::Display for ProjPoint<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}
