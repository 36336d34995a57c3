//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting and Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ring::{FiniteField, Ring};
use super::uni::{PolyRing, UniPoly};
use crate::galoisfield::PrimeField;

/// Default seed for the randomized splitter.
pub const DEFAULT_SPLIT_SEED: u64 = 0x5EED_2062_0960_0001;

fn field_order<K: FiniteField>(field: &K) -> BigUint {
    num_traits::pow(BigUint::from(field.prime()), field.degree() as usize)
}

/// Rabin's test for a polynomial over a finite field.
pub fn is_irreducible<K: FiniteField>(ring: &PolyRing<K>, f: &UniPoly<K::Elem>) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = ring.monic(f);
    let q = field_order(ring.base());
    let x = ring.x();
    let frob = |g: &UniPoly<K::Elem>, times: usize| {
        let mut h = g.clone();
        for _ in 0..times {
            h = ring.powmod(&h, &q, &f);
        }
        h
    };
    if ring.sub(&frob(&x, n), &ring.rem(&x, &f)).coeffs().iter().any(|c| !ring.base().is_zero(c)) {
        return false;
    }
    for r in prime_divisors(n) {
        let h = frob(&x, n / r);
        let g = ring.gcd(&ring.sub(&h, &x), &f);
        if g.deg0() != 0 {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of equal degree.
pub fn distinct_degree<K: FiniteField>(
    ring: &PolyRing<K>,
    f: &UniPoly<K::Elem>,
) -> Vec<(UniPoly<K::Elem>, usize)> {
    let q = field_order(ring.base());
    let x = ring.x();
    let mut rest = ring.monic(f);
    let mut h = ring.rem(&x, &rest);
    let mut out = Vec::new();
    let mut d = 0;
    while rest.deg0() > 0 {
        d += 1;
        if 2 * d > rest.deg0() {
            let deg = rest.deg0();
            out.push((rest, deg));
            break;
        }
        h = ring.powmod(&h, &q, &rest);
        let g = ring.gcd(&ring.sub(&h, &x), &rest);
        if g.deg0() > 0 {
            rest = ring.div_exact(&rest, &g).expect("gcd divides");
            h = ring.rem(&h, &rest);
            out.push((g, d));
        }
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree `d` into its factors.
pub fn equal_degree_split<K: FiniteField>(
    ring: &PolyRing<K>,
    f: &UniPoly<K::Elem>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<UniPoly<K::Elem>> {
    let n = f.deg0();
    if n == d {
        return vec![ring.monic(f)];
    }
    let field = ring.base();
    let q = field_order(field);
    let qd = num_traits::pow(q, d);
    let odd = field.prime() != 2;
    loop {
        let a = ring.from_coeffs((0..n).map(|_| field.random(rng)).collect());
        if a.deg0() == 0 {
            continue;
        }
        let b = if odd {
            let e = (&qd - BigUint::one()) >> 1u32;
            ring.sub(&ring.powmod(&a, &e, f), &ring.one())
        } else {
            // Trace from F_{q^d} down to F_2.
            let steps = field.degree() as usize * d;
            let mut t = ring.rem(&a, f);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = ring.mulmod(&t, &t, f);
                acc = ring.add(&acc, &t);
            }
            acc
        };
        let g = ring.gcd(&b, f);
        if g.deg0() > 0 && g.deg0() < n {
            let h = ring.div_exact(f, &g).expect("gcd divides");
            let mut out = equal_degree_split(ring, &g, d, rng);
            out.extend(equal_degree_split(ring, &h, d, rng));
            return out;
        }
    }
}

/// Complete factorization `f = lc * prod g_i^{e_i}` over a finite field, with
/// monic irreducible `g_i` sorted by (degree, coefficients).
pub fn factor_finite<K: FiniteField>(
    ring: &PolyRing<K>,
    f: &UniPoly<K::Elem>,
    seed: u64,
) -> (K::Elem, Vec<(UniPoly<K::Elem>, usize)>) {
    let lc = ring.lc(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in ring.squarefree_decomposition(f) {
        for (block, d) in distinct_degree(ring, &part) {
            for g in equal_degree_split(ring, &block, d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    let field = ring.base();
    out.sort_by(|(a, _), (b, _)| {
        a.deg0().cmp(&b.deg0()).then_with(|| {
            let ka: Vec<u128> = a.coeffs().iter().rev().map(|c| field.index_of(c)).collect();
            let kb: Vec<u128> = b.coeffs().iter().rev().map(|c| field.index_of(c)).collect();
            ka.cmp(&kb)
        })
    });
    (lc, out)
}

/// Factorization over a prime field with the default seed.
pub fn factor_mod_p(f: &UniPoly<u64>, field: PrimeField) -> (u64, Vec<(UniPoly<u64>, usize)>) {
    factor_finite(&PolyRing::new(field), f, DEFAULT_SPLIT_SEED)
}

/// Degrees of the irreducible factors (with multiplicity), ascending.
pub fn factor_degrees<K: FiniteField>(factors: &[(UniPoly<K::Elem>, usize)]) -> Vec<usize> {
    let mut v: Vec<usize> = factors
        .iter()
        .flat_map(|(g, m)| std::iter::repeat(g.deg0()).take(*m))
        .collect();
    v.sort_unstable();
    v
}

/// Roots of `f` in its coefficient field, with multiplicities.
pub fn roots_with_multiplicity<K: FiniteField>(
    field: &K,
    f: &UniPoly<K::Elem>,
    seed: u64,
) -> Vec<(K::Elem, usize)> {
    let ring = PolyRing::new(field.clone());
    if f.deg0() == 0 {
        return Vec::new();
    }
    let f = ring.monic(f);
    let q = field_order(field);
    let xq = ring.powmod(&ring.x(), &q, &f);
    let linear_part = ring.gcd(&ring.sub(&xq, &ring.x()), &f);
    if linear_part.deg0() == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots: Vec<K::Elem> = equal_degree_split(&ring, &linear_part, 1, &mut rng)
        .into_iter()
        .map(|g| field.neg(&g.coeffs()[0]))
        .collect();
    roots.sort_by_key(|a| field.index_of(a));
    roots
        .into_iter()
        .map(|a| {
            let lin = ring.from_coeffs(vec![field.neg(&a), field.one()]);
            let mut m = 0;
            let mut g = f.clone();
            while let Some(h) = ring.div_exact(&g, &lin) {
                g = h;
                m += 1;
            }
            (a, m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galoisfield::build_extension;
    use proptest::prelude::*;

    fn fp(p: u64) -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::new(p).unwrap())
    }

    #[test]
    fn small_factorizations() {
        let r = fp(5);
        let (lc, f) = factor_mod_p(&r.from_i64s(&[1, 0, 1]), PrimeField::new(5).unwrap());
        assert_eq!(lc, 1);
        let polys: Vec<&[u64]> = f.iter().map(|(g, _)| g.coeffs()).collect();
        assert_eq!(polys, vec![&[2u64, 1][..], &[3, 1][..]]);

        let (_, f) = factor_mod_p(&fp(3).from_i64s(&[0, -1, 0, 1]), PrimeField::new(3).unwrap());
        let polys: Vec<&[u64]> = f.iter().map(|(g, _)| g.coeffs()).collect();
        assert_eq!(polys, vec![&[0u64, 1][..], &[1, 1][..], &[2, 1][..]]);
    }

    #[test]
    fn rabin_agrees_with_root_absence_for_cubics() {
        let r = fp(7);
        for a in 0..7i64 {
            for b in 0..7i64 {
                for c in 0..7i64 {
                    let f = r.from_i64s(&[c, b, a, 1]);
                    let rootless = (0..7i64).all(|x| (x * x * x + a * x * x + b * x + c) % 7 != 0);
                    assert_eq!(is_irreducible(&r, &f), rootless);
                }
            }
        }
    }

    #[test]
    fn roots_over_extension_in_characteristic_two() {
        let k = build_extension(2, 4).unwrap();
        let r = PolyRing::new(k.clone());
        // x^16 - x splits completely over F_16.
        let mut c = vec![k.zero(); 17];
        c[16] = k.one();
        c[1] = k.neg(&k.one());
        let roots = roots_with_multiplicity(&k, &r.from_coeffs(c), 9);
        assert_eq!(roots.len(), 16);
    }

    proptest! {
        #[test]
        fn factorization_reconstructs_and_factors_are_irreducible(
            p in prop::sample::select(vec![2u64, 3, 5, 7, 13]),
            coeffs in prop::collection::vec(0u64..13, 2..10),
            seed in any::<u64>(),
        ) {
            let r = fp(p);
            let f = r.from_coeffs(coeffs.iter().map(|c| c % p).collect());
            prop_assume!(f.deg0() >= 1);
            let (lc, factors) = factor_finite(&r, &f, seed);
            let rebuilt = factors.iter().fold(r.constant(lc), |acc, (g, m)| r.mul(&acc, &r.pow(g, *m as u64)));
            prop_assert_eq!(rebuilt, f);
            for (g, _) in &factors {
                prop_assert!(is_irreducible(&r, g));
                // no roots in F_{p^d} for proper divisors d of deg g
                let n = g.deg0();
                for d in 1..n {
                    if n % d == 0 && d < n {
                        let k = build_extension(p, d).unwrap();
                        let roots = crate::galoisfield::roots_in_field(g, &k, 1).unwrap();
                        prop_assert!(roots.is_empty());
                    }
                }
            }
        }
    }
}
