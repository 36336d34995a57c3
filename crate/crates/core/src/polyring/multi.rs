//! Sparse multivariate polynomials over Z or Q.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::ring::{Coeff, Ring};
use super::uni::UniPoly;
use super::PolyError;

/// Terms keyed by exponent vectors (one entry per variable). The map order is
/// lexicographic, so the last key is the lex-leading monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<C> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    fn zero_like(&self) -> Self {
        MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Self {
        let i = vars
            .iter()
            .position(|v| *v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, C::one());
        p
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent arity mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, e: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn index_or_err(&self, name: &str) -> Result<usize, PolyError> {
        self.var_index(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, name: &str) -> Option<u32> {
        let i = self.var_index(name)?;
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<C> {
        self.is_constant()
            .then(|| self.coeff(&vec![0; self.vars.len()]))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = self.zero_like();
        for (e, a) in &self.terms {
            p.add_term(e.clone(), a.clone() * c.clone());
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::constant(&self.vars(), C::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, name: &str) -> Self {
        let i = self.var_index(name).expect("unknown variable");
        let mut p = self.zero_like();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            p.add_term(e2, c.clone() * C::from_i64(e[i] as i64));
        }
        p
    }

    /// Coefficients with respect to `name`, each living in the remaining variables.
    pub fn coefficients_in(&self, name: &str) -> Result<Vec<MultiPoly<C>>, PolyError> {
        let i = self.index_or_err(name)?;
        let rest: Vec<&str> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.as_str())
            .collect();
        let d = self.degree_in(name).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(&rest); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2.remove(i) as usize;
            out[k].add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Replaces variable `name` by the polynomial `value` (over the same variables).
    pub fn substitute(&self, name: &str, value: &MultiPoly<C>) -> Self {
        let i = self.var_index(name).expect("unknown variable");
        assert_eq!(self.vars, value.vars, "variable lists differ");
        let d = self.degree_in(name).unwrap_or(0);
        let mut powers = vec![MultiPoly::constant(&self.vars(), C::one())];
        for k in 1..=d as usize {
            powers.push(&powers[k - 1] * value);
        }
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[i], 0) as usize;
            let mut mono = self.zero_like();
            mono.add_term(e2, c.clone());
            out = &out + &(&mono * &powers[k]);
        }
        out
    }

    /// Fixes `name` to a constant and removes it from the variable list.
    pub fn specialize(&self, name: &str, value: &C) -> Self {
        let i = self.var_index(name).expect("unknown variable");
        let rest: Vec<&str> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.as_str())
            .collect();
        let mut out = MultiPoly::zero(&rest);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2.remove(i);
            out.add_term(e2, c.clone() * num_traits::pow(value.clone(), k as usize));
        }
        out
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t = t * num_traits::pow(x.clone(), k as usize);
            }
            acc = acc + t;
        }
        acc
    }

    /// Re-expresses the polynomial over a different (superset) variable list.
    pub fn embed(&self, vars: &[&str]) -> Self {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable missing in target"))
            .collect();
        let mut out = MultiPoly::zero(vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; vars.len()];
            for (k, &j) in map.iter().enumerate() {
                e2[j] = e[k];
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Univariate view; fails if more than one variable actually occurs.
    pub fn to_univariate(&self) -> Result<(Option<String>, UniPoly<C>), PolyError> {
        let used: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect();
        if used.len() > 1 {
            return Err(PolyError::NotUnivariate);
        }
        let ring = super::uni::PolyRing::new(C::Ring::default());
        let Some(&i) = used.first() else {
            return Ok((None, ring.constant(self.constant_value().unwrap_or_else(C::zero))));
        };
        let d = self.degree_in(&self.vars[i]).unwrap_or(0) as usize;
        let mut v = vec![C::zero(); d + 1];
        for (e, c) in &self.terms {
            v[e[i] as usize] = c.clone();
        }
        Ok((Some(self.vars[i].clone()), ring.from_coeffs(v)))
    }

    pub fn from_univariate(var: &str, f: &UniPoly<C>) -> Self {
        MultiPoly::from_terms(
            &[var],
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32], c.clone())),
        )
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::<D>::zero(&self.vars());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    fn leading(&self) -> Option<(&Vec<u32>, &C)> {
        self.terms.iter().next_back()
    }

    /// Exact division in lex order; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly<C>) -> Option<MultiPoly<C>> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = self.zero_like();
        while let Some((re, rc)) = r.leading() {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let c = rc.div_exact(&dc)?;
            let mut t = self.zero_like();
            t.add_term(e, c);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variable lists");
    }
}

impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        self.check_vars(rhs);
        let mut out = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let cs = c.to_string();
            let neg = cs.starts_with('-');
            let mag = cs.trim_start_matches('-');
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag == "1" {
                mono.join("*")
            } else {
                format!("{mag}*{}", mono.join("*"))
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self)
    }
}

/// Ring context for [`MultiPoly`] over a fixed variable list.
#[derive(Clone, Debug)]
pub struct MultiPolyRing<C> {
    vars: Vec<String>,
    _c: std::marker::PhantomData<fn() -> C>,
}

impl<C: Coeff> MultiPolyRing<C> {
    pub fn new(vars: &[&str]) -> Self {
        MultiPolyRing {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            _c: std::marker::PhantomData,
        }
    }

    fn names(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }
}

impl<C: Coeff> Ring for MultiPolyRing<C> {
    type Elem = MultiPoly<C>;

    fn zero(&self) -> MultiPoly<C> {
        MultiPoly::zero(&self.names())
    }
    fn one(&self) -> MultiPoly<C> {
        MultiPoly::constant(&self.names(), C::one())
    }
    fn from_i64(&self, n: i64) -> MultiPoly<C> {
        MultiPoly::constant(&self.names(), C::from_i64(n))
    }
    fn add(&self, a: &MultiPoly<C>, b: &MultiPoly<C>) -> MultiPoly<C> {
        a + b
    }
    fn sub(&self, a: &MultiPoly<C>, b: &MultiPoly<C>) -> MultiPoly<C> {
        a - b
    }
    fn neg(&self, a: &MultiPoly<C>) -> MultiPoly<C> {
        -a
    }
    fn mul(&self, a: &MultiPoly<C>, b: &MultiPoly<C>) -> MultiPoly<C> {
        a * b
    }
    fn is_zero(&self, a: &MultiPoly<C>) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &MultiPoly<C>, b: &MultiPoly<C>) -> Option<MultiPoly<C>> {
        a.div_exact(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::BigInt;

    type P = MultiPoly<BigInt>;

    fn c(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn build_and_differentiate() {
        let v = ["x", "y"];
        let x = P::var(&v, "x");
        let y = P::var(&v, "y");
        let f = &(&x * &x) + &(&y.scale(&c(3)) * &x);
        assert_eq!(f.to_string(), "x^2 + 3*x*y");
        assert_eq!(f.partial("x").to_string(), "2*x + 3*y");
        assert!(f.is_homogeneous());
        assert_eq!(f.degree_in("y"), Some(1));
    }

    #[test]
    fn exact_division() {
        let v = ["x", "y"];
        let x = P::var(&v, "x");
        let y = P::var(&v, "y");
        let a = &x + &y;
        let b = &x - &y.scale(&c(2));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!((&prod + &P::constant(&v, c(1))).div_exact(&a), None);
    }

    #[test]
    fn substitute_and_specialize() {
        let v = ["x", "t"];
        let x = P::var(&v, "x");
        let t = P::var(&v, "t");
        let f = x.pow(2);
        let g = f.substitute("x", &(&t + &P::constant(&v, c(1))));
        assert_eq!(g.to_string(), "t^2 + 2*t + 1");
        let h = g.specialize("t", &c(2));
        assert_eq!(h.constant_value(), Some(c(9)));
    }
}
