//! Degeneration types of plane cubics over the algebraic closure and their
//! Euler characteristics.
//!
//! The type is read off from the singular points over `F_{p^6}` (every
//! singular point of a reduced cubic is defined over that field) together
//! with the tangent cone at a single singular point. Non-reduced cubics are
//! separated by counting their `F_p`-points.

use serde::Serialize;

use super::cubic::PlaneCubic;
use super::points::count_points;
use super::singular::{singular_points, tangent_cone};
use super::CubicError;
use crate::galoisfield::{build_extension, PrimeField};
use crate::polyring::ring::{FiniteField, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegenerationKind {
    Smooth,
    Nodal,
    Cuspidal,
    #[serde(rename = "conic+secant-line")]
    ConicSecantLine,
    #[serde(rename = "conic+tangent-line")]
    ConicTangentLine,
    Triangle,
    ConcurrentLines,
    #[serde(rename = "line+double-line")]
    LineDoubleLine,
    TripleLine,
}

/// One irreducible component of the reduced curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Component {
    pub degree: u32,
    pub genus: u32,
    /// Points of the normalization lying over singular points of the reduced curve.
    pub singular_preimages: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegenerationType {
    pub kind: DegenerationKind,
    pub euler_characteristic: i64,
    pub components: Vec<Component>,
    /// Singular points of the reduced curve.
    pub singular_count: u32,
}

/// `sum (2 - 2 g_i) + s - m`.
pub fn euler_char_from_normalization(genera: &[u32], singular_count: u32, preimage_count: u32) -> i64 {
    debug_assert!(preimage_count >= singular_count);
    genera.iter().map(|&g| 2 - 2 * g as i64).sum::<i64>() + singular_count as i64 - preimage_count as i64
}

impl DegenerationType {
    pub fn of_kind(kind: DegenerationKind) -> Self {
        use DegenerationKind::*;
        let c = |degree, genus, singular_preimages| Component { degree, genus, singular_preimages };
        let (components, singular_count) = match kind {
            Smooth => (vec![c(3, 1, 0)], 0),
            Nodal => (vec![c(3, 0, 2)], 1),
            Cuspidal => (vec![c(3, 0, 1)], 1),
            ConicSecantLine => (vec![c(2, 0, 2), c(1, 0, 2)], 2),
            ConicTangentLine => (vec![c(2, 0, 1), c(1, 0, 1)], 1),
            Triangle => (vec![c(1, 0, 2); 3], 3),
            ConcurrentLines => (vec![c(1, 0, 1); 3], 1),
            LineDoubleLine => (vec![c(1, 0, 1); 2], 1),
            TripleLine => (vec![c(1, 0, 0)], 0),
        };
        let genera: Vec<u32> = components.iter().map(|c| c.genus).collect();
        let m = components.iter().map(|c| c.singular_preimages).sum();
        DegenerationType {
            kind,
            euler_characteristic: euler_char_from_normalization(&genera, singular_count, m),
            components,
            singular_count,
        }
    }
}

/// Geometric degeneration type of a cubic over `F_p`.
pub fn classify_degeneration(field: &PrimeField, c: &PlaneCubic<u64>) -> Result<DegenerationType, CubicError> {
    use DegenerationKind::*;
    let p = field.prime();
    let ext = build_extension(p, 6).map_err(|_| CubicError::UnsupportedField)?;
    let lifted = c.map(&ext, |v| ext.embed_prime(*v))?;
    let kind = match singular_points(&ext, &lifted) {
        Err(CubicError::NonIsolatedSingularities) => {
            // Both components of L^2 M are defined over F_p.
            if count_points(field, c) == p + 1 {
                TripleLine
            } else {
                LineDoubleLine
            }
        }
        Err(e) => return Err(e),
        Ok(s) => match s.len() {
            0 => Smooth,
            1 => {
                let pt = &s[0];
                match pt.tangent_rank {
                    0 => ConcurrentLines,
                    2 => Nodal,
                    _ => {
                        let cone = tangent_cone(&ext, &lifted, &pt.point);
                        if ext.is_zero(&cone.tangent_resultant(&ext)) {
                            ConicTangentLine
                        } else {
                            Cuspidal
                        }
                    }
                }
            }
            2 => ConicSecantLine,
            3 => Triangle,
            n => return Err(CubicError::Inconsistent(format!("{n} isolated singular points"))),
        },
    };
    Ok(DegenerationType::of_kind(kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(p: u64, c: [i64; 10]) -> DegenerationType {
        let f = PrimeField::new(p).unwrap();
        let cc = PlaneCubic::new(&f, c.iter().map(|&v| f.reduce_i64(v)).collect()).unwrap();
        classify_degeneration(&f, &cc).unwrap()
    }

    #[test]
    fn normalization_formula() {
        assert_eq!(euler_char_from_normalization(&[1], 0, 0), 0);
        assert_eq!(euler_char_from_normalization(&[0], 1, 2), 1);
        assert_eq!(euler_char_from_normalization(&[0, 0, 0], 3, 6), 3);
        assert_eq!(euler_char_from_normalization(&[0, 0], 1, 2), 3);
    }

    #[test]
    fn representatives_of_all_nine_kinds() {
        use DegenerationKind::*;
        let cases: [([i64; 10], DegenerationKind, i64); 9] = [
            ([1, 0, 0, 0, 0, 0, 1, 0, 0, 1], Smooth, 0),
            // x^3 + y^3 + xyz
            ([1, 0, 0, 0, 1, 0, 1, 0, 0, 0], Nodal, 1),
            ([-1, 0, 0, 0, 0, 0, 0, 1, 0, 0], Cuspidal, 2),
            // y (xz - y^2)
            ([0, 0, 0, 0, 1, 0, -1, 0, 0, 0], ConicSecantLine, 2),
            // x (xz - y^2)
            ([0, 0, 1, -1, 0, 0, 0, 0, 0, 0], ConicTangentLine, 3),
            ([0, 0, 0, 0, 1, 0, 0, 0, 0, 0], Triangle, 3),
            // xy (x + y)
            ([0, 1, 0, 1, 0, 0, 0, 0, 0, 0], ConcurrentLines, 4),
            ([0, 1, 0, 0, 0, 0, 0, 0, 0, 0], LineDoubleLine, 3),
            ([1, 0, 0, 0, 0, 0, 0, 0, 0, 0], TripleLine, 2),
        ];
        for p in [2, 5, 7, 11] {
            for (c, kind, chi) in cases {
                let d = classify(p, c);
                assert_eq!((d.kind, d.euler_characteristic), (kind, chi), "p = {p}, {c:?}");
                let genera: Vec<u32> = d.components.iter().map(|c| c.genus).collect();
                let m = d.components.iter().map(|c| c.singular_preimages).sum();
                assert_eq!(euler_char_from_normalization(&genera, d.singular_count, m), chi);
            }
        }
    }

    #[test]
    fn conic_with_conjugate_secant_points() {
        // z (x^2 + y^2 - 3 z^2) over F_7: the line meets the conic where x^2 = -y^2, not rational since 7 = 3 mod 4.
        let d = classify(7, [0, 0, 1, 0, 0, 0, 0, 1, 0, -3]);
        assert_eq!(d.kind, DegenerationKind::ConicSecantLine);
    }
}
