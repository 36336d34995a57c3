//! Singular points, tangent cones and node certificates.

use serde::Serialize;

use super::cubic::{PlaneCubic, ProjPoint};
use super::forms::TernaryForm;
use super::CubicError;
use crate::polyring::factor::{roots_with_multiplicity, DEFAULT_SPLIT_SEED};
use crate::polyring::resultant::{resultant_coeffs, resultant_uni};
use crate::polyring::ring::{FiniteField, Ring};
use crate::polyring::uni::{PolyRing, UniPoly};

type Bivar<E> = UniPoly<UniPoly<E>>;

/// Dehomogenizes a form by setting `z = 1`: outer variable `x`, inner `y`.
fn dehomogenize<K: FiniteField>(field: &K, f: &TernaryForm<K::Elem>) -> Bivar<K::Elem> {
    let d = f.degree() as usize;
    let inner = PolyRing::new(field.clone());
    let outer = PolyRing::new(inner.clone());
    let mut grid = vec![vec![field.zero(); d + 1]; d + 1];
    for (e, c) in super::forms::monomials(f.degree()).iter().zip(f.coeffs()) {
        grid[e[0] as usize][e[1] as usize] = c.clone();
    }
    outer.from_coeffs(grid.into_iter().map(|r| inner.from_coeffs(r)).collect())
}

/// Common zeros in `K^2` of a family of bivariate polynomials; `Err` if the
/// common zero set is infinite.
fn common_zeros<K: FiniteField>(field: &K, eqs: &[Bivar<K::Elem>]) -> Result<Vec<[K::Elem; 2]>, CubicError> {
    let inner = PolyRing::new(field.clone());
    let outer = PolyRing::new(inner.clone());
    let eqs: Vec<&Bivar<K::Elem>> = eqs.iter().filter(|f| !f.is_zero()).collect();
    if eqs.len() < 2 {
        return Err(CubicError::NonIsolatedSingularities);
    }
    if eqs.iter().any(|f| f.deg0() == 0 && f.coeffs()[0].deg0() == 0) {
        return Ok(Vec::new());
    }
    let mut r = inner.zero();
    for f in eqs.iter().filter(|f| f.deg0() == 0) {
        r = inner.gcd(&r, &f.coeffs()[0]);
    }
    for i in 0..eqs.len() {
        for j in i + 1..eqs.len() {
            if eqs[i].deg0() == 0 && eqs[j].deg0() == 0 {
                continue;
            }
            let res = resultant_uni(&outer, eqs[i], eqs[j]).expect("nonzero inputs");
            r = inner.gcd(&r, &res);
        }
    }
    if r.is_zero() {
        return Err(CubicError::NonIsolatedSingularities);
    }
    let mut out = Vec::new();
    for (y0, _) in roots_with_multiplicity(field, &r, DEFAULT_SPLIT_SEED) {
        let mut g = inner.zero();
        for f in &eqs {
            let fx = inner.from_coeffs(f.coeffs().iter().map(|c| inner.eval(c, &y0)).collect());
            g = inner.gcd(&g, &fx);
        }
        if g.is_zero() {
            return Err(CubicError::NonIsolatedSingularities);
        }
        for (x0, _) in roots_with_multiplicity(field, &g, DEFAULT_SPLIT_SEED) {
            out.push([x0, y0.clone()]);
        }
    }
    Ok(out)
}

/// Common zeros in `K` of univariate polynomials (not all zero).
fn common_roots<K: FiniteField>(field: &K, eqs: &[UniPoly<K::Elem>]) -> Result<Vec<K::Elem>, CubicError> {
    let ring = PolyRing::new(field.clone());
    let g = eqs.iter().fold(ring.zero(), |acc, f| ring.gcd(&acc, f));
    if g.is_zero() {
        return Err(CubicError::NonIsolatedSingularities);
    }
    Ok(roots_with_multiplicity(field, &g, DEFAULT_SPLIT_SEED).into_iter().map(|(a, _)| a).collect())
}

/// A singular point with the rank of its tangent cone (2: node, 1: cusp, 0: triple point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint<E> {
    pub point: ProjPoint<E>,
    pub tangent_rank: u8,
}

/// All singular points of `C` in `P^2(K)`, in canonical order.
///
/// Fails with `NonIsolatedSingularities` when `C` has a multiple component.
pub fn singular_points<K: FiniteField>(
    field: &K,
    c: &PlaneCubic<K::Elem>,
) -> Result<Vec<SingularPoint<K::Elem>>, CubicError> {
    let f = c.form();
    let grad = c.gradient(field);
    let system: Vec<&TernaryForm<K::Elem>> = std::iter::once(f).chain(grad.iter()).collect();
    let mut pts = Vec::new();
    // Affine chart z = 1.
    let eqs: Vec<_> = system.iter().map(|g| dehomogenize(field, g)).collect();
    for [x, y] in common_zeros(field, &eqs)? {
        pts.push([x, y, field.one()]);
    }
    // Line at infinity: (x : 1 : 0).
    let ring = PolyRing::new(field.clone());
    let at_infinity: Vec<_> = system
        .iter()
        .map(|g| {
            let d = g.degree();
            ring.from_coeffs((0..=d).map(|i| g.coeff(i, d - i).clone()).collect())
        })
        .collect();
    for x in common_roots(field, &at_infinity)? {
        pts.push([x, field.one(), field.zero()]);
    }
    let origin = [field.one(), field.zero(), field.zero()];
    if system.iter().all(|g| field.is_zero(&g.eval(field, &origin))) {
        pts.push(origin);
    }
    let mut out: Vec<SingularPoint<K::Elem>> = pts
        .into_iter()
        .map(|p| {
            let point = ProjPoint::new(field, p).expect("nonzero");
            let tangent_rank = tangent_cone(field, c, &point).rank(field);
            SingularPoint { point, tangent_rank }
        })
        .collect();
    out.sort_by_key(|s| canonical_key(field, &s.point));
    Ok(out)
}

fn canonical_key<K: FiniteField>(field: &K, p: &ProjPoint<K::Elem>) -> (usize, u128, u128) {
    let c = p.coords();
    let i = p.chart(field);
    let rest: Vec<u128> = (i + 1..3).map(|k| field.index_of(&c[k])).collect();
    (i, rest.first().copied().unwrap_or(0), rest.get(1).copied().unwrap_or(0))
}

/// Local expansion of a cubic at a point moved to `(0:0:1)`: quadratic part
/// `a X^2 + b XY + c Y^2` and cubic part `d X^3 + e X^2Y + f XY^2 + g Y^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentCone<E> {
    pub quadratic: [E; 3],
    pub cubic: [E; 4],
    /// Linear part; zero exactly at singular points.
    pub linear: [E; 2],
}

impl<E: Clone + PartialEq> TangentCone<E> {
    /// 2 for two distinct tangent directions, 1 for a double direction, 0 if the quadratic part vanishes.
    pub fn rank<R: Ring<Elem = E>>(&self, ring: &R) -> u8 {
        let [a, b, c] = &self.quadratic;
        if ring.is_zero(a) && ring.is_zero(b) && ring.is_zero(c) {
            return 0;
        }
        let disc = ring.sub(&ring.mul(b, b), &ring.mul(&ring.from_i64(4), &ring.mul(a, c)));
        if ring.is_zero(&disc) {
            1
        } else {
            2
        }
    }

    /// `Res(quadratic, cubic)` as binary forms; zero iff a tangent line at the
    /// point is contained in the curve.
    pub fn tangent_resultant<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        // Coefficients in ascending powers of X (with Y = 1), keeping formal degrees.
        let q = [self.quadratic[2].clone(), self.quadratic[1].clone(), self.quadratic[0].clone()];
        let c = [self.cubic[3].clone(), self.cubic[2].clone(), self.cubic[1].clone(), self.cubic[0].clone()];
        resultant_coeffs(ring, &q, &c).expect("nonempty coefficient lists")
    }
}

/// Expansion of `C` at `pt` in the coordinates `X e_j + Y e_k + Z pt`, where
/// `j < k` are the two coordinates other than the point's chart.
pub fn tangent_cone<K: FiniteField>(
    field: &K,
    c: &PlaneCubic<K::Elem>,
    pt: &ProjPoint<K::Elem>,
) -> TangentCone<K::Elem> {
    let i = pt.chart(field);
    let others: Vec<usize> = (0..3).filter(|&k| k != i).collect();
    let p = pt.coords();
    let e = |k: usize, row: usize| if k == row { field.one() } else { field.zero() };
    // Row r expresses old coordinate r in terms of (X, Y, Z).
    let m: [[K::Elem; 3]; 3] = [0, 1, 2].map(|r| [e(others[0], r), e(others[1], r), p[r].clone()]);
    let g = c.form().substitute(field, &m);
    let co = |i: u32, j: u32| g.coeff(i, j).clone();
    TangentCone {
        quadratic: [co(2, 0), co(1, 1), co(0, 2)],
        cubic: [co(3, 0), co(2, 1), co(1, 2), co(0, 3)],
        linear: [co(1, 0), co(0, 1)],
    }
}

/// Certificate that a plane cubic is an irreducible nodal cubic: a node whose
/// tangent lines are not components. Such a cubic has no other singular point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeCertificate {
    /// Coordinates of the node as field-element indices.
    pub node: [String; 3],
    pub tangent_rank: u8,
    pub tangent_resultant_nonzero: bool,
    pub rational_singular_points: usize,
}

pub fn certify_nodal<K: FiniteField>(field: &K, c: &PlaneCubic<K::Elem>) -> Result<Option<NodeCertificate>, CubicError> {
    let sing = match singular_points(field, c) {
        Ok(s) => s,
        Err(CubicError::NonIsolatedSingularities) => return Ok(None),
        Err(e) => return Err(e),
    };
    if sing.len() != 1 {
        return Ok(None);
    }
    let s = &sing[0];
    let cone = tangent_cone(field, c, &s.point);
    let res_nonzero = !field.is_zero(&cone.tangent_resultant(field));
    if s.tangent_rank != 2 || !res_nonzero {
        return Ok(None);
    }
    Ok(Some(NodeCertificate {
        node: s.point.coords().clone().map(|x| field.index_of(&x).to_string()),
        tangent_rank: 2,
        tangent_resultant_nonzero: true,
        rational_singular_points: 1,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galoisfield::{build_extension, PrimeField};
    use crate::polyring::ring::Field;

    fn cubic(p: u64, c: [i64; 10]) -> (PrimeField, PlaneCubic<u64>) {
        let f = PrimeField::new(p).unwrap();
        let cc = PlaneCubic::new(&f, c.iter().map(|&v| f.reduce_i64(v)).collect()).unwrap();
        (f, cc)
    }

    #[test]
    fn node_and_cusp_at_origin() {
        // y^2 z - x^3 - x^2 z
        let (f, c) = cubic(7, [-1, 0, -1, 0, 0, 0, 0, 1, 0, 0]);
        let s = singular_points(&f, &c).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].point.coords(), &[0, 0, 1]);
        assert_eq!(s[0].tangent_rank, 2);
        assert!(certify_nodal(&f, &c).unwrap().is_some());
        // y^2 z - x^3
        let (f, c) = cubic(7, [-1, 0, 0, 0, 0, 0, 0, 1, 0, 0]);
        let s = singular_points(&f, &c).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].tangent_rank, 1);
        assert!(certify_nodal(&f, &c).unwrap().is_none());
    }

    #[test]
    fn triangle_has_three_nodes_and_fails_the_certificate() {
        let (f, c) = cubic(5, [0, 0, 0, 0, 1, 0, 0, 0, 0, 0]);
        let s = singular_points(&f, &c).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|p| p.tangent_rank == 2));
        assert!(certify_nodal(&f, &c).unwrap().is_none());
    }

    #[test]
    fn double_line_is_non_isolated() {
        // x^2 y
        let (f, c) = cubic(5, [0, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(singular_points(&f, &c), Err(CubicError::NonIsolatedSingularities));
    }

    #[test]
    fn singular_points_agree_with_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let k = build_extension(3, 2).unwrap();
        let pts: Vec<_> = crate::cubicgeom::cubic::projective_points(&k).collect();
        for _ in 0..200 {
            // Sparse random cubics hit singular ones often.
            let coeffs: Vec<_> = (0..10).map(|_| if rng.gen_bool(0.4) { k.random(&mut rng) } else { k.zero() }).collect();
            let Ok(c) = PlaneCubic::new(&k, coeffs) else { continue };
            let brute: Vec<_> = pts.iter().filter(|p| c.is_singular_at(&k, p.coords())).cloned().collect();
            match singular_points(&k, &c) {
                Ok(s) => {
                    let found: Vec<_> = s.into_iter().map(|s| s.point).collect();
                    assert_eq!(found, brute);
                }
                Err(CubicError::NonIsolatedSingularities) => assert!(brute.len() >= k.order() as usize + 1),
                Err(e) => panic!("{e}"),
            }
        }
        let _ = k.inv(&k.one());
    }
}
