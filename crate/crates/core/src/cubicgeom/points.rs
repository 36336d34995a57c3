//! Point enumeration over finite fields.

use super::cubic::{projective_points, PlaneCubic, ProjPoint};
use crate::polyring::ring::FiniteField;

/// First smooth point of `C(F_q)` in the canonical enumeration order.
pub fn find_smooth_point<K: FiniteField>(field: &K, c: &PlaneCubic<K::Elem>) -> Option<ProjPoint<K::Elem>> {
    let grad = c.gradient(field);
    projective_points(field).find(|pt| {
        let x = pt.coords();
        field.is_zero(&c.eval(field, x)) && grad.iter().any(|g| !field.is_zero(&g.eval(field, x)))
    })
}

/// Smooth points of `C(F_q)` lying on the line `n . P = 0`, in canonical order.
pub fn smooth_points_on_line<K: FiniteField>(
    field: &K,
    c: &PlaneCubic<K::Elem>,
    normal: &[K::Elem; 3],
) -> Vec<ProjPoint<K::Elem>> {
    let grad = c.gradient(field);
    projective_points(field)
        .filter(|pt| {
            let x = pt.coords();
            let dot = (0..3).fold(field.zero(), |acc, i| field.add(&acc, &field.mul(&normal[i], &x[i])));
            field.is_zero(&dot)
                && field.is_zero(&c.eval(field, x))
                && grad.iter().any(|g| !field.is_zero(&g.eval(field, x)))
        })
        .collect()
}

/// `|C(F_q)|` by exhaustive scan of the `q^2 + q + 1` points.
pub fn count_points<K: FiniteField>(field: &K, c: &PlaneCubic<K::Elem>) -> u64 {
    projective_points(field).filter(|pt| field.is_zero(&c.eval(field, pt.coords()))).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galoisfield::PrimeField;

    fn cubic(p: u64, c: [i64; 10]) -> (PrimeField, PlaneCubic<u64>) {
        let f = PrimeField::new(p).unwrap();
        let cc = PlaneCubic::new(&f, c.iter().map(|&v| f.reduce_i64(v)).collect()).unwrap();
        (f, cc)
    }

    #[test]
    fn smooth_point_on_cuspidal_cubic_mod_two() {
        // x^3 - y^2 z
        let (f, c) = cubic(2, [1, 0, 0, 0, 0, 0, 0, -1, 0, 0]);
        assert_eq!(find_smooth_point(&f, &c).unwrap().coords(), &[1, 1, 1]);
    }

    #[test]
    fn fermat_cubic_mod_two_has_three_points() {
        let (f, c) = cubic(2, [1, 0, 0, 0, 0, 0, 1, 0, 0, 1]);
        assert_eq!(count_points(&f, &c), 3);
    }

    #[test]
    fn canonical_enumeration_covers_the_plane_once() {
        let f = PrimeField::new(5).unwrap();
        let pts: Vec<_> = projective_points(&f).collect();
        assert_eq!(pts.len(), 31);
        let set: std::collections::HashSet<_> = pts.iter().cloned().collect();
        assert_eq!(set.len(), 31);
    }
}
