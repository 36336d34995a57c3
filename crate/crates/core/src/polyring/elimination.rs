//! Projection of the singular locus `h = h_x = h_y = 0` of a one-parameter
//! family of plane curves onto the parameter line.
//!
//! Pairwise resultants are eliminated twice; their gcd contains the true
//! eliminant together with extraneous factors coming from vanishing leading
//! coefficients. The gcd is split along those suspect factors and every
//! piece is kept or discarded after checking the specialized system over
//! finite fields for solvability over the algebraic closure.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::factor::{factor_finite, roots_with_multiplicity, DEFAULT_SPLIT_SEED};
use super::irreducible::reduce_mod_p;
use super::multi::MultiPoly;
use super::resultant::{resultant, resultant_uni};
use super::ring::{FiniteField, Ring};
use super::uni::{content, primitive_part, z_div_primitive, z_gcd, z_squarefree_part, zring, PolyRing, UniPoly, ZPoly};
use super::PolyError;
use crate::exactnum::is_prime;
use crate::galoisfield::{build_extension, PrimeField};

/// Number of primes at which every piece is validated.
pub const VALIDATION_PRIMES: usize = 2;
const MAX_EXTENSION_DEGREE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceVerdict {
    /// Primitive integer polynomial in the deflated parameter.
    pub piece: Vec<String>,
    pub kept: bool,
    /// `(prime, extension degree used)` per validation.
    pub checks: Vec<(u64, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationReport {
    /// Primitive, squarefree, positive leading coefficient; in the original parameter.
    pub polynomial: ZPoly,
    /// The family depends on the parameter only through `param^deflation`.
    pub deflation: usize,
    /// Degrees (in the deflated parameter) of the three route eliminants; `None` if identically zero.
    pub route_degrees: Vec<Option<usize>>,
    pub pieces: Vec<PieceVerdict>,
    pub validation_primes: Vec<u64>,
}

fn coeff_strings(f: &ZPoly) -> Vec<String> {
    f.coeffs().iter().map(|c| c.to_string()).collect()
}

fn normalize(f: &ZPoly) -> ZPoly {
    if f.is_zero() {
        return f.clone();
    }
    primitive_part(f)
}

/// Rewrites `h` in terms of `s = param^k` for the largest possible `k`.
fn deflate_param(h: &MultiPoly<BigInt>, param: &str) -> Result<(usize, MultiPoly<BigInt>), PolyError> {
    let i = h.var_index(param).ok_or_else(|| PolyError::UnknownVariable(param.to_string()))?;
    let k = h
        .terms()
        .map(|(e, _)| e[i] as usize)
        .fold(0usize, num_integer::gcd);
    let k = k.max(1);
    let vars = h.vars();
    let out = MultiPoly::from_terms(
        &vars,
        h.terms().map(|(e, c)| {
            let mut e2 = e.clone();
            e2[i] /= k as u32;
            (e2, c.clone())
        }),
    );
    Ok((k, out))
}

fn univariate_in(p: &MultiPoly<BigInt>) -> Result<ZPoly, PolyError> {
    Ok(p.to_univariate()?.1)
}

fn leading_coeff_in(p: &MultiPoly<BigInt>, var: &str) -> Result<MultiPoly<BigInt>, PolyError> {
    let cs = p.coefficients_in(var)?;
    Ok(cs.last().cloned().expect("nonempty coefficient list"))
}

/// Splits a squarefree `g` into coprime pieces along the factors it shares with `suspects`.
fn split_by_suspects(g: &ZPoly, suspects: &[ZPoly]) -> Vec<ZPoly> {
    let mut pieces = vec![g.clone()];
    for c in suspects.iter().filter(|c| c.deg0() > 0) {
        let mut next = Vec::new();
        for p in pieces {
            let d = normalize(&z_gcd(&p, c));
            if d.deg0() > 0 && d.deg0() < p.deg0() {
                next.push(normalize(&z_div_primitive(&p, &d)));
                next.push(d);
            } else {
                next.push(p);
            }
        }
        pieces = next;
    }
    pieces.sort_by(|a, b| a.deg0().cmp(&b.deg0()).then_with(|| coeff_strings(a).cmp(&coeff_strings(b))));
    pieces
}

type Bivar<E> = UniPoly<UniPoly<E>>;

/// Reduces `p(x, y, s)` modulo the field characteristic and sets `s = s0`.
fn specialize<K: FiniteField>(
    field: &K,
    p: &MultiPoly<BigInt>,
    names: [&str; 3],
    s0: &K::Elem,
) -> Bivar<K::Elem> {
    let ix = p.var_index(names[0]).expect("x");
    let iy = p.var_index(names[1]).expect("y");
    let is = p.var_index(names[2]).expect("s");
    let prime = PrimeField::new(field.prime()).expect("prime");
    let dx = p.degree_in(names[0]).unwrap_or(0) as usize;
    let dy = p.degree_in(names[1]).unwrap_or(0) as usize;
    let mut grid = vec![vec![field.zero(); dy + 1]; dx + 1];
    for (e, c) in p.terms() {
        let c = field.embed_prime(prime.reduce_bigint(c));
        let t = field.mul(&c, &field.pow(s0, e[is] as u64));
        let cell = &mut grid[e[ix] as usize][e[iy] as usize];
        *cell = field.add(cell, &t);
    }
    let inner = PolyRing::new(field.clone());
    let outer = PolyRing::new(inner.clone());
    outer.from_coeffs(grid.into_iter().map(|row| inner.from_coeffs(row)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Solvability {
    Solvable,
    NotSolvable,
    NeedExtension(usize),
}

/// Decides whether the bivariate system has a common zero over the algebraic closure.
fn system_solvable<K: FiniteField>(field: &K, eqs: &[Bivar<K::Elem>]) -> Solvability {
    let inner = PolyRing::new(field.clone());
    let outer = PolyRing::new(inner.clone());
    let eqs: Vec<&Bivar<K::Elem>> = eqs.iter().filter(|f| !f.is_zero()).collect();
    let is_const = |f: &Bivar<K::Elem>| f.deg0() == 0 && f.coeffs()[0].deg0() == 0;
    if eqs.iter().any(|f| is_const(f)) {
        return Solvability::NotSolvable;
    }
    if eqs.len() <= 1 {
        return Solvability::Solvable;
    }
    let mut r = inner.zero();
    for i in 0..eqs.len() {
        for j in i + 1..eqs.len() {
            let res = resultant_uni(&outer, eqs[i], eqs[j]).expect("nonzero inputs");
            r = inner.gcd(&r, &res);
        }
    }
    if r.is_zero() {
        // A common curve component: degenerate, counted as solvable.
        return Solvability::Solvable;
    }
    if r.deg0() == 0 {
        return Solvability::NotSolvable;
    }
    for (y0, _) in roots_with_multiplicity(field, &r, DEFAULT_SPLIT_SEED) {
        let mut g = inner.zero();
        for f in &eqs {
            let fx = inner.from_coeffs(f.coeffs().iter().map(|c| inner.eval(c, &y0)).collect());
            g = inner.gcd(&g, &fx);
        }
        if g.is_zero() || g.deg0() > 0 {
            return Solvability::Solvable;
        }
    }
    let (_, factors) = factor_finite(&inner, &r, DEFAULT_SPLIT_SEED);
    let ext = factors.iter().map(|(g, _)| g.deg0()).fold(1, num_integer::lcm);
    if ext == 1 {
        Solvability::NotSolvable
    } else {
        Solvability::NeedExtension(ext)
    }
}

/// Solvability at a root of the irreducible `f1` over F_p; returns the verdict
/// and the extension degree that settled it.
fn solvable_over_root(
    p: u64,
    f1: &UniPoly<u64>,
    system: &[MultiPoly<BigInt>; 3],
    names: [&str; 3],
) -> Result<(bool, usize), PolyError> {
    let mut d = f1.deg0();
    loop {
        if d > MAX_EXTENSION_DEGREE {
            return Err(PolyError::EliminationDegenerate(format!(
                "validation over F_{p}^{d} exceeds the extension bound"
            )));
        }
        let k = build_extension(p, d).map_err(|e| PolyError::EliminationDegenerate(e.to_string()))?;
        let lifted = PolyRing::new(k.clone()).from_coeffs(f1.coeffs().iter().map(|&c| k.embed_prime(c)).collect());
        let roots = roots_with_multiplicity(&k, &lifted, DEFAULT_SPLIT_SEED);
        let s0 = &roots.first().expect("f1 splits over its extension").0;
        let eqs: Vec<_> = system.iter().map(|q| specialize(&k, q, names, s0)).collect();
        match system_solvable(&k, &eqs) {
            Solvability::Solvable => return Ok((true, d)),
            Solvability::NotSolvable => return Ok((false, d)),
            Solvability::NeedExtension(e) => d *= e,
        }
    }
}

fn validate_piece(
    piece: &ZPoly,
    system: &[MultiPoly<BigInt>; 3],
    names: [&str; 3],
    primes: &[u64],
) -> Result<PieceVerdict, PolyError> {
    let mut verdict: Option<bool> = None;
    let mut checks = Vec::new();
    for &p in primes {
        let field = PrimeField::new(p).expect("prime");
        let fp = reduce_mod_p(piece, field);
        let (_, factors) = factor_finite(&PolyRing::new(field), &fp, DEFAULT_SPLIT_SEED);
        for (f1, _) in &factors {
            let (ok, d) = solvable_over_root(p, f1, system, names)?;
            checks.push((p, d));
            match verdict {
                None => verdict = Some(ok),
                Some(v) if v != ok => {
                    return Err(PolyError::EliminationDegenerate(format!(
                        "piece {} is only partially solvable modulo {p}",
                        piece.display_in("s")
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(PieceVerdict { piece: coeff_strings(piece), kept: verdict.unwrap_or(true), checks })
}

/// Primes `>= 7` at which every piece stays squarefree of full degree.
fn choose_primes(pieces: &[ZPoly], count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 7;
    while out.len() < count {
        if is_prime(p) {
            let field = PrimeField::new(p).expect("prime");
            let ring = PolyRing::new(field);
            let good = pieces.iter().all(|f| {
                let fp = reduce_mod_p(f, field);
                fp.deg0() == f.deg0() && ring.is_squarefree(&fp)
            }) && {
                let all = pieces.iter().fold(zring().one(), |acc, f| zring().mul(&acc, f));
                ring.is_squarefree(&reduce_mod_p(&all, field))
            };
            if good {
                out.push(p);
            }
        }
        p += 1;
    }
    out
}

/// Computes the squarefree generator of the projection of `h = h_x = h_y = 0`
/// onto the `param` line, normalized to a primitive integer polynomial with
/// positive leading coefficient (the constant 1 if no parameter value is singular).
pub fn eliminate_singular_locus(
    h: &MultiPoly<BigInt>,
    x: &str,
    y: &str,
    param: &str,
) -> Result<EliminationReport, PolyError> {
    if h.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    for v in [x, y] {
        h.var_index(v).ok_or_else(|| PolyError::UnknownVariable(v.to_string()))?;
    }
    let (k, hs) = deflate_param(h, param)?;
    let hx = hs.partial(x);
    let hy = hs.partial(y);
    let system = [hs.clone(), hx.clone(), hy.clone()];
    let names = [x, y, param];

    let res_x = |a: &MultiPoly<BigInt>, b: &MultiPoly<BigInt>| -> Result<MultiPoly<BigInt>, PolyError> {
        if a.is_zero() || b.is_zero() {
            let rest: Vec<&str> = a.vars().into_iter().filter(|v| *v != x).collect();
            return Ok(MultiPoly::zero(&rest));
        }
        resultant(a, b, x)
    };
    let r12 = res_x(&hs, &hx)?;
    let r13 = res_x(&hs, &hy)?;
    let r23 = res_x(&hx, &hy)?;

    let mut suspects: Vec<ZPoly> = Vec::new();
    for q in [&hs, &hx, &hy] {
        if q.is_zero() {
            continue;
        }
        let lc = leading_coeff_in(q, x)?;
        if lc.degree_in(y).unwrap_or(0) == 0 {
            suspects.push(univariate_in(&lc.specialize(y, &BigInt::zero()))?);
        }
    }
    for r in [&r12, &r13, &r23] {
        if r.is_zero() {
            continue;
        }
        let cs = r.coefficients_in(y)?;
        suspects.push(univariate_in(cs.last().expect("nonempty"))?);
        let c = cs
            .iter()
            .filter(|c| !c.is_zero())
            .map(univariate_in)
            .collect::<Result<Vec<_>, _>>()?
            .iter()
            .fold(zring().zero(), |acc, f| z_gcd(&acc, f));
        suspects.push(c);
    }

    let mut routes = Vec::new();
    for (a, b) in [(&r12, &r13), (&r12, &r23), (&r13, &r23)] {
        let e = if a.is_zero() || b.is_zero() {
            zring().zero()
        } else {
            univariate_in(&resultant(a, b, y)?)?
        };
        routes.push(e);
    }
    let route_degrees = routes.iter().map(|e| e.degree()).collect();
    let g = routes.iter().fold(zring().zero(), |acc, e| if e.is_zero() { acc } else { z_gcd(&acc, e) });
    if g.is_zero() {
        return Err(PolyError::EliminationDegenerate(
            "all iterated resultants vanish identically".into(),
        ));
    }
    let g = normalize(&z_squarefree_part(&g));

    let mut report = EliminationReport {
        polynomial: zring().one(),
        deflation: k,
        route_degrees,
        pieces: Vec::new(),
        validation_primes: Vec::new(),
    };
    if g.deg0() == 0 {
        return Ok(report);
    }
    let pieces = split_by_suspects(&g, &suspects);
    let primes = choose_primes(&pieces, VALIDATION_PRIMES);
    let mut kept = zring().one();
    for piece in &pieces {
        let v = validate_piece(piece, &system, names, &primes)?;
        if v.kept {
            kept = zring().mul(&kept, piece);
        }
        report.pieces.push(v);
    }
    let inflated = zring().inflate(&kept, k);
    let mut out = normalize(&z_squarefree_part(&inflated));
    if out.deg0() == 0 {
        out = zring().one();
    }
    debug_assert!(content(&out).is_one() && !zring().lc(&out).is_negative());
    report.polynomial = out;
    report.validation_primes = primes;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::uni::zpoly;

    type P = MultiPoly<BigInt>;

    fn vars() -> [&'static str; 3] {
        ["x", "y", "u"]
    }

    #[test]
    fn cone_family_projects_to_origin() {
        let v = vars();
        let (x, y, u) = (P::var(&v, "x"), P::var(&v, "y"), P::var(&v, "u"));
        let h = &(&(&x * &x) + &(&y * &y)) + &u;
        let rep = eliminate_singular_locus(&h, "x", "y", "u").unwrap();
        assert_eq!(rep.polynomial, zpoly(&[0, 1]));
    }

    #[test]
    fn constant_smooth_family_has_no_singular_values() {
        let v = vars();
        let (x, y) = (P::var(&v, "x"), P::var(&v, "y"));
        let one = P::constant(&v, BigInt::one());
        let h = &(&x.pow(3) + &y.pow(3)) + &one;
        let rep = eliminate_singular_locus(&h, "x", "y", "u").unwrap();
        assert_eq!(rep.polynomial, zring().one());
    }

    #[test]
    fn nodal_member_of_a_pencil() {
        // y^2 - x^2 (x + 1) + u: singular only at u = 0 and u = 4/27 (node at x = -2/3).
        let v = vars();
        let (x, y, u) = (P::var(&v, "x"), P::var(&v, "y"), P::var(&v, "u"));
        let one = P::constant(&v, BigInt::one());
        let h = &(&(&y * &y) - &(&(&x * &x) * &(&x + &one))) + &u;
        let rep = eliminate_singular_locus(&h, "x", "y", "u").unwrap();
        assert_eq!(rep.polynomial, zpoly(&[0, -4, 27]));
    }

    #[test]
    fn pencil_of_diagonal_cubics() {
        // 5x^3 + 9y^3 + 10 + 12u^3(x + y + 1)^3
        let v = vars();
        let (x, y, u) = (P::var(&v, "x"), P::var(&v, "y"), P::var(&v, "u"));
        let c = |n: i64| P::constant(&v, BigInt::from(n));
        let one = c(1);
        let l = &(&x + &y) + &one;
        let h = &(&(&(&c(5) * &x.pow(3)) + &(&c(9) * &y.pow(3))) + &c(10)) + &(&(&c(12) * &u.pow(3)) * &l.pow(3));
        let rep = eliminate_singular_locus(&h, "x", "y", "u").unwrap();
        assert_eq!(rep.deflation, 3);
        let expected = zring().inflate(&zpoly(&[50625, 999000, 4282200, 6065760, 2062096]), 3);
        assert_eq!(rep.polynomial, expected);
        assert!(rep.pieces.iter().any(|p| !p.kept));
    }
}
