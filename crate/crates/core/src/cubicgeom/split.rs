//! Complete splitting of a plane cubic into lines over the algebraic closure.
//!
//! Two independent procedures: Hessian proportionality (characteristic at
//! least 5) and an exhaustive search for linear factors over `F_{p^2}` and
//! `F_{p^3}`. If a cubic splits, its three lines form Galois orbits of sizes
//! summing to 3, so all of them are defined over one of those two fields.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::cubic::{projective_points, PlaneCubic};
use super::forms::TernaryForm;
use super::CubicError;
use crate::galoisfield::{table_field, PrimeField, TableField, MAX_TABLE_ORDER};
use crate::polyring::ring::{Field, FiniteField, Ring};

/// Hessian test: `Hess(F)` is a (possibly zero) multiple of `F`.
pub fn hessian_splitting_test<F: Field>(field: &F, c: &PlaneCubic<F::Elem>) -> bool {
    c.form().hessian(field).proportional(field, c.form())
}

/// Whether the cubic over `F_p` is a product of three linear forms over the
/// algebraic closure.
///
/// Characteristic 2 is answered by the exhaustive search, characteristic 3 is
/// rejected, and larger characteristics use the Hessian test.
pub fn splits_into_lines(field: &PrimeField, c: &PlaneCubic<u64>) -> Result<bool, CubicError> {
    match field.p() {
        3 => Err(CubicError::CharacteristicThree),
        2 => splits_into_lines_oracle(field, c),
        _ => Ok(hessian_splitting_test(field, c)),
    }
}

/// Generic-field version of the Hessian route for characteristic at least 5.
pub fn splits_into_lines_over<K: FiniteField>(field: &K, c: &PlaneCubic<K::Elem>) -> Result<bool, CubicError> {
    match field.characteristic() {
        3 => Err(CubicError::CharacteristicThree),
        2 => Err(CubicError::UnsupportedCharacteristic(2)),
        _ => Ok(hessian_splitting_test(field, c)),
    }
}

/// Precomputed incidence data for `P^2(F_q)`.
struct PlaneData {
    field: TableField,
    /// The ten cubic monomials at each point.
    monomial_values: Vec<[u32; 10]>,
    /// Line normals (canonical) and four distinct points on each line, by point index.
    lines: Vec<([u32; 3], [u32; 4])>,
}

fn point_index(q: u32, p: &[u32; 3]) -> usize {
    let q = q as usize;
    if p[0] != 0 {
        p[1] as usize * q + p[2] as usize
    } else if p[1] != 0 {
        q * q + p[2] as usize
    } else {
        q * q + q
    }
}

fn normalize(f: &TableField, v: [u32; 3]) -> [u32; 3] {
    let i = (0..3).find(|&i| v[i] != 0).expect("nonzero vector");
    let inv = f.inv(&v[i]).expect("unit");
    v.map(|c| f.mul(&c, &inv))
}

fn cross(f: &TableField, a: &[u32; 3], b: &[u32; 3]) -> [u32; 3] {
    let m = |i: usize, j: usize| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
    [m(1, 2), m(2, 0), m(0, 1)]
}

fn plane_data(p: u64, k: usize) -> Result<Arc<PlaneData>, CubicError> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<PlaneData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().expect("cache lock").get(&(p, k)) {
        return Ok(d.clone());
    }
    let field = table_field(p, k).map_err(|_| CubicError::SearchSpaceTooLarge(p, k as u32))?;
    let q = field.order() as u32;
    // Four points per line are needed to detect a linear factor.
    if q < 3 {
        return Err(CubicError::SearchSpaceTooLarge(p, k as u32));
    }
    let points: Vec<[u32; 3]> = projective_points(&field).map(|pt| *pt.coords()).collect();
    let monomial_values = points
        .iter()
        .map(|&[x, y, z]| {
            let m = |a: u32, b: u32| field.mul(&a, &b);
            let (x2, y2, z2) = (m(x, x), m(y, y), m(z, z));
            [m(x2, x), m(x2, y), m(x2, z), m(x, y2), m(m(x, y), z), m(x, z2), m(y2, y), m(y2, z), m(y, z2), m(z2, z)]
        })
        .collect();
    // Points of the line n . P = 0: spanned by two independent solutions.
    let lines = points
        .iter()
        .map(|n| {
            let e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
            let mut basis: Vec<[u32; 3]> = Vec::new();
            for ei in e {
                let v = cross(&field, n, &ei);
                if v != [0, 0, 0] && basis.iter().all(|b| cross(&field, b, &v) != [0, 0, 0]) {
                    basis.push(v);
                }
                if basis.len() == 2 {
                    break;
                }
            }
            let (a, b) = (basis[0], basis[1]);
            let comb = |s: u32| [0, 1, 2].map(|i| field.add(&a[i], &field.mul(&s, &b[i])));
            // a, b, a + b and a + g b, where the element with index 2 is neither 0 nor 1
            let pts = [a, b, comb(1), comb(2)].map(|v| point_index(q, &normalize(&field, v)) as u32);
            (*n, pts)
        })
        .collect();
    let data = Arc::new(PlaneData { field, monomial_values, lines });
    cache.lock().expect("cache lock").insert((p, k), data.clone());
    Ok(data)
}

/// Distinct lines over `F_{p^k}` dividing the cubic, as canonical normals
/// (entries are indices in the table field).
fn dividing_lines(data: &PlaneData, c: &[u32; 10]) -> Vec<[u32; 3]> {
    let f = &data.field;
    let zero: Vec<bool> = data
        .monomial_values
        .iter()
        .map(|mv| {
            let mut acc = 0u32;
            for i in 0..10 {
                if c[i] != 0 {
                    acc = f.add(&acc, &f.mul(&c[i], &mv[i]));
                }
            }
            acc == 0
        })
        .collect();
    let mut out = Vec::new();
    for (n, pts) in &data.lines {
        if pts.iter().all(|&i| zero[i as usize]) {
            out.push(*n);
            if out.len() > 3 {
                break;
            }
        }
    }
    out
}

/// A line component with its multiplicity, over the table field `F_{p^k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineComponent {
    pub degree: usize,
    pub normal: [u32; 3],
    pub multiplicity: u32,
}

fn embed(data: &PlaneData, c: &PlaneCubic<u64>) -> [u32; 10] {
    let mut out = [0u32; 10];
    for (o, v) in out.iter_mut().zip(c.coeffs()) {
        *o = data.field.embed_prime(*v);
    }
    out
}

fn multiplicities(data: &PlaneData, c: &[u32; 10], lines: &[[u32; 3]]) -> Vec<u32> {
    let f = &data.field;
    let form = TernaryForm::from_coeffs(3, c.to_vec());
    lines
        .iter()
        .map(|n| {
            let l = TernaryForm::linear(f, n[0], n[1], n[2]);
            let mut g = form.clone();
            let mut m = 0;
            while g.degree() > 0 {
                match g.div_linear(f, &l) {
                    Some(h) => {
                        g = h;
                        m += 1;
                    }
                    None => break,
                }
            }
            m
        })
        .collect()
}

/// Line components of a cubic over `F_p` that are defined over `F_{p^k}`.
pub fn line_components(field: &PrimeField, c: &PlaneCubic<u64>, k: usize) -> Result<Vec<LineComponent>, CubicError> {
    let data = plane_data(field.p(), k)?;
    let cc = embed(&data, c);
    let lines = dividing_lines(&data, &cc);
    let mult = multiplicities(&data, &cc, &lines);
    Ok(lines
        .into_iter()
        .zip(mult)
        .map(|(normal, multiplicity)| LineComponent { degree: k, normal, multiplicity })
        .collect())
}

/// Exhaustive search for a factorization into linear forms over `F_{p^2}` or `F_{p^3}`.
pub fn splits_into_lines_oracle(field: &PrimeField, c: &PlaneCubic<u64>) -> Result<bool, CubicError> {
    let p = field.p();
    if (p as u128).pow(3) > MAX_TABLE_ORDER {
        return Err(CubicError::SearchSpaceTooLarge(p, 3));
    }
    for k in [2, 3] {
        let comps = line_components(field, c, k)?;
        let total: u32 = comps.iter().map(|l| l.multiplicity).sum();
        if total == 3 {
            return Ok(true);
        }
    }
    Ok(false)
}
