//! Local solvability of plane cubics over `Q_p` and `R`.
//!
//! A `Q_p`-point is produced by fixing two coordinates to integers, leaving a
//! univariate cubic in the third coordinate, and Hensel-lifting an
//! approximate root. The starting residue comes from a smooth `F_p`-point,
//! from a smooth point on an `F_p`-rational line component of the reduction,
//! or from a search modulo `p^2`.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::cubic::{IntPoint, PlaneCubic};
use super::forms::TernaryForm;
use super::points::{find_smooth_point, smooth_points_on_line};
use super::split::{hessian_splitting_test, line_components, splits_into_lines_oracle};
use super::CubicError;
use crate::exactnum::{int_valuation, is_prime, BigInt};
use crate::galoisfield::{PrimeField, MAX_TABLE_ORDER};
use crate::padic::{find_liftable_start, hensel_lift, LiftCertificate};
use crate::polyring::ring::{IntegerRing, Ring};
use crate::polyring::uni::{zring, ZPoly};

/// Residue classes modulo `p^2` are searched only below this many per coordinate.
pub const MAX_SQUARE_SEARCH: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SolvabilityStrategy {
    /// Lift from the first smooth point of `C(F_p)`.
    SmoothPoint,
    /// Lift from a smooth point on the `F_p`-line `n . P = 0` contained in the reduction.
    RationalLine { normal: [u64; 3] },
    /// Lift from a residue modulo `p^2` satisfying `v(f) > 2 v(f')`.
    ModSquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolvabilityVerdict {
    Solvable,
    Unknown,
}

/// Outcome of the `Q_p` search. When solvable, `point` satisfies
/// `v_p(F(point)) >= precision` and has a coordinate equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolvabilityCertificate {
    pub prime: u64,
    pub precision: u32,
    pub verdict: SolvabilityVerdict,
    pub strategy: Option<SolvabilityStrategy>,
    /// Integer coordinates with the free coordinate at its starting residue.
    pub start: Option<IntPoint>,
    pub free_coordinate: Option<usize>,
    pub point: Option<IntPoint>,
    pub lift: Option<LiftCertificate>,
}

impl SolvabilityCertificate {
    fn unknown(prime: u64, precision: u32) -> Self {
        SolvabilityCertificate {
            prime,
            precision,
            verdict: SolvabilityVerdict::Unknown,
            strategy: None,
            start: None,
            free_coordinate: None,
            point: None,
            lift: None,
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.verdict == SolvabilityVerdict::Solvable
    }

    /// Re-derives the restricted polynomial and the lift, and checks the point.
    pub fn replay(&self, c: &PlaneCubic<BigInt>) -> bool {
        let (Some(start), Some(j), Some(point), Some(lift)) = (&self.start, self.free_coordinate, &self.point, &self.lift)
        else {
            return !self.is_solvable();
        };
        let c = primitive(c);
        let f = restrict(&c, &start.0, j);
        let mut expected = start.0.clone();
        expected[j] = lift.residue.clone();
        let p = BigInt::from(self.prime);
        self.is_solvable()
            && f.coeffs() == lift.poly.as_slice()
            && lift.replay()
            && lift.a0 == start.0[j]
            && expected == point.0
            && point.0.iter().any(|x| !x.is_multiple_of(&p))
            && int_valuation(&c.eval(&IntegerRing, &point.0), self.prime).at_least(self.precision as i64)
    }
}

fn primitive(c: &PlaneCubic<BigInt>) -> PlaneCubic<BigInt> {
    c.to_rational().primitive_integral()
}

/// `F` with every coordinate but `j` fixed to `base`, as a polynomial in coordinate `j`.
fn restrict(c: &PlaneCubic<BigInt>, base: &[BigInt; 3], j: usize) -> ZPoly {
    let zr = zring();
    let coords: [ZPoly; 3] = [0, 1, 2].map(|k| if k == j { zr.x() } else { zr.constant(base[k].clone()) });
    let form = TernaryForm::from_coeffs(3, c.coeffs().iter().map(|a| zr.constant(a.clone())).collect());
    form.eval(&zr, &coords)
}

fn attempt(c: &PlaneCubic<BigInt>, p: u64, n: u32, base: [BigInt; 3], j: usize, a0: BigInt) -> Result<SolvabilityCertificate, CubicError> {
    let f = restrict(c, &base, j);
    let lift = hensel_lift(&f, p, &a0, n).map_err(|e| CubicError::Lift(e.to_string()))?;
    let mut start = base;
    start[j] = a0;
    let mut point = start.clone();
    point[j] = lift.residue.clone();
    Ok(SolvabilityCertificate {
        prime: p,
        precision: n,
        verdict: SolvabilityVerdict::Solvable,
        strategy: None,
        start: Some(IntPoint(start)),
        free_coordinate: Some(j),
        point: Some(IntPoint(point)),
        lift: Some(lift),
    })
}

/// Lift from a smooth `F_p`-point: the free coordinate is one whose partial is a unit.
fn lift_smooth(
    c: &PlaneCubic<BigInt>,
    field: &PrimeField,
    cbar: &PlaneCubic<u64>,
    pt: &[u64; 3],
    n: u32,
) -> Result<SolvabilityCertificate, CubicError> {
    let chart = (0..3).find(|&i| pt[i] != 0).expect("projective point");
    let grad = cbar.gradient(field);
    // The Euler relation forces a unit partial away from the chart coordinate.
    let j = (0..3)
        .find(|&j| j != chart && !field.is_zero(&grad[j].eval(field, pt)))
        .ok_or_else(|| CubicError::Inconsistent("smooth point without a usable partial".into()))?;
    let base = pt.map(BigInt::from);
    let a0 = base[j].clone();
    attempt(c, field.p(), n, base, j, a0)
}

/// `F_p`-rational lines contained in the reduction, in canonical order.
fn rational_lines(field: &PrimeField, cbar: &PlaneCubic<u64>) -> Result<Vec<[u64; 3]>, CubicError> {
    let p = field.p();
    let comps = if p == 2 {
        line_components(field, cbar, 2)?
    } else if (p as u128) <= MAX_TABLE_ORDER {
        line_components(field, cbar, 1)?
    } else {
        return Ok(Vec::new());
    };
    // Normals are canonical, so rational lines have entries in the prime subfield.
    Ok(comps
        .into_iter()
        .filter(|l| l.normal.iter().all(|&e| (e as u64) < p))
        .map(|l| l.normal.map(u64::from))
        .collect())
}

fn reduction_splits(field: &PrimeField, cbar: &PlaneCubic<u64>) -> Result<bool, CubicError> {
    match field.p() {
        2 | 3 => splits_into_lines_oracle(field, cbar),
        _ => Ok(hessian_splitting_test(field, cbar)),
    }
}

/// Bases and free coordinates for the search modulo `p^2`: first the chart
/// `(t : 2 : 1)`, then every chart, free coordinate and residue of the third coordinate.
fn square_search_bases(p: u64) -> impl Iterator<Item = ([BigInt; 3], usize)> {
    let b = |v: [i64; 3]| v.map(BigInt::from);
    let preferred = std::iter::once((b([0, 2, 1]), 0));
    let modulus = p * p;
    let rest = (0..3usize).flat_map(move |chart| {
        (0..3usize).filter(move |&j| j != chart).flat_map(move |j| {
            let k = 3 - chart - j;
            (0..modulus).map(move |v| {
                let mut base = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
                base[chart] = BigInt::one();
                base[k] = BigInt::from(v);
                (base, j)
            })
        })
    });
    preferred.chain(rest)
}

/// Searches for a point of `C(Q_p)` modulo `p^n`.
///
/// Strategies are tried in order: rational line components (only when the
/// reduction splits into lines), smooth `F_p`-points, residues modulo `p^2`.
pub fn local_solvability(c: &PlaneCubic<BigInt>, p: u64, n: u32) -> Result<SolvabilityCertificate, CubicError> {
    if !is_prime(p) {
        return Err(CubicError::Lift(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(CubicError::Lift("precision must be positive".into()));
    }
    let c = primitive(c);
    let field = PrimeField::new(p).map_err(|e| CubicError::Lift(e.to_string()))?;
    let cbar = c.reduce(&field).expect("primitive cubic has a nonzero reduction");

    if reduction_splits(&field, &cbar)? {
        for normal in rational_lines(&field, &cbar)? {
            if let Some(pt) = smooth_points_on_line(&field, &cbar, &normal).first() {
                let mut cert = lift_smooth(&c, &field, &cbar, pt.coords(), n)?;
                cert.strategy = Some(SolvabilityStrategy::RationalLine { normal });
                return Ok(cert);
            }
        }
    }
    if let Some(pt) = find_smooth_point(&field, &cbar) {
        let mut cert = lift_smooth(&c, &field, &cbar, pt.coords(), n)?;
        cert.strategy = Some(SolvabilityStrategy::SmoothPoint);
        return Ok(cert);
    }
    if p.saturating_mul(p) <= MAX_SQUARE_SEARCH {
        for (base, j) in square_search_bases(p) {
            let f = restrict(&c, &base, j);
            if f.is_zero() {
                continue;
            }
            if let Some(a0) = find_liftable_start(&f, p, 2) {
                let mut cert = attempt(&c, p, n, base, j, a0)?;
                cert.strategy = Some(SolvabilityStrategy::ModSquare);
                return Ok(cert);
            }
        }
    }
    Ok(SolvabilityCertificate::unknown(p, n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealSolvability {
    pub solvable: bool,
    pub reason: &'static str,
}

/// Every real plane curve of odd degree has a real point.
pub fn real_solvability<E>(_c: &PlaneCubic<E>) -> RealSolvability {
    RealSolvability {
        solvable: true,
        reason: "odd degree: the restriction to a real line is a real binary cubic form, which has a real zero",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_cubic(c: [i64; 10]) -> PlaneCubic<BigInt> {
        PlaneCubic::from_i64s(c).unwrap().primitive_integral()
    }

    /// `5x^3 + 9y^3 + 10z^3 + 12(x + y + z)^3`.
    fn w1() -> PlaneCubic<BigInt> {
        // (x + y + z)^3 has coefficients 1, 3, 3, 3, 6, 3, 1, 3, 3, 1.
        let s = [1, 3, 3, 3, 6, 3, 1, 3, 3, 1];
        let mut c = s.map(|v| 12 * v);
        c[0] += 5;
        c[6] += 9;
        c[9] += 10;
        int_cubic(c)
    }

    #[test]
    fn family_member_is_locally_solvable_at_bad_primes() {
        let c = w1();
        for p in [2, 3, 5, 359] {
            let cert = local_solvability(&c, p, 6).unwrap();
            assert!(cert.is_solvable(), "p = {p}");
            assert!(cert.replay(&c), "p = {p}");
        }
    }

    #[test]
    fn strategies_match_the_reduction() {
        let c = w1();
        let two = local_solvability(&c, 2, 6).unwrap();
        // x^3 + y^3 contains x + y = 0
        assert_eq!(two.strategy, Some(SolvabilityStrategy::RationalLine { normal: [1, 1, 0] }));
        let three = local_solvability(&c, 3, 6).unwrap();
        assert_eq!(three.strategy, Some(SolvabilityStrategy::ModSquare));
        assert_eq!(three.free_coordinate, Some(0));
        let start = three.start.unwrap();
        assert_eq!(start.0[1..], [BigInt::from(2), BigInt::from(1)]);
        let five = local_solvability(&c, 5, 6).unwrap();
        assert!(matches!(five.strategy, Some(SolvabilityStrategy::RationalLine { .. })));
        let big = local_solvability(&c, 359, 6).unwrap();
        assert_eq!(big.strategy, Some(SolvabilityStrategy::SmoothPoint));
    }

    #[test]
    fn selmer_cubic_at_seven() {
        let c = int_cubic([3, 0, 0, 0, 0, 0, 4, 0, 0, 5]);
        let cert = local_solvability(&c, 7, 4).unwrap();
        assert!(cert.is_solvable());
        assert!(cert.replay(&c));
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let c = w1();
        let mut cert = local_solvability(&c, 359, 6).unwrap();
        if let Some(pt) = cert.point.as_mut() {
            pt.0[0] += 1;
        }
        assert!(!cert.replay(&c));
    }

    #[test]
    fn odd_degree_is_always_real_solvable() {
        assert!(real_solvability(&w1()).solvable);
    }
}
