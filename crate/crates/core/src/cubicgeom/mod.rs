//! Plane cubic curves: forms, points, splitting into lines, singularities,
//! degeneration types and local solvability.

pub mod classify;
pub mod cubic;
pub mod forms;
pub mod local;
pub mod points;
pub mod singular;
pub mod split;

use thiserror::Error;

pub use classify::{classify_degeneration, euler_char_from_normalization, Component, DegenerationKind, DegenerationType};
pub use cubic::{projective_points, IntPoint, PlaneCubic, ProjPoint, MONOMIAL_NAMES};
pub use forms::TernaryForm;
pub use local::{local_solvability, real_solvability, SolvabilityCertificate, SolvabilityStrategy};
pub use points::{count_points, find_smooth_point, smooth_points_on_line};
pub use singular::{certify_nodal, singular_points, tangent_cone, NodeCertificate, SingularPoint, TangentCone};
pub use split::{hessian_splitting_test, line_components, splits_into_lines, splits_into_lines_oracle, LineComponent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicError {
    #[error("a plane cubic has 10 coefficients, got {0}")]
    WrongArity(usize),
    #[error("the zero form is not a cubic")]
    ZeroCubic,
    #[error("(0:0:0) is not a projective point")]
    ZeroPoint,
    #[error("the Hessian test is invalid in characteristic 3")]
    CharacteristicThree,
    #[error("characteristic {0} is not supported by this routine")]
    UnsupportedCharacteristic(u64),
    #[error("exhaustive search over F_{0}^{1} exceeds the table limit")]
    SearchSpaceTooLarge(u64, u32),
    #[error("the singular locus is not finite")]
    NonIsolatedSingularities,
    #[error("field not supported by the search bounds")]
    UnsupportedField,
    #[error("inconsistent geometry: {0}")]
    Inconsistent(String),
    #[error("no local point found for p = {0}")]
    NoLocalPoint(u64),
    #[error("p-adic lift failed: {0}")]
    Lift(String),
}
