//! Exact polynomial arithmetic: sparse multivariate and dense univariate
//! polynomials, resultants, finite-field factorization, irreducibility
//! certificates over Q and singular-locus elimination.

pub mod elimination;
pub mod factor;
pub mod irreducible;
pub mod multi;
pub mod resultant;
pub mod ring;
pub mod uni;

use thiserror::Error;

pub use elimination::{eliminate_singular_locus, EliminationReport};
pub use factor::{factor_finite, factor_mod_p, is_irreducible};
pub use irreducible::{certify_irreducible_over_q, is_irreducible_over_q, IrreducibilityCertificate, Irreducibility};
pub use multi::{MultiPoly, MultiPolyRing};
pub use resultant::{discriminant, resultant, resultant_uni};
pub use ring::{Coeff, Field, FiniteField, IntegerRing, RationalField, Ring};
pub use uni::{PolyRing, QPoly, UniPoly, ZPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("degree {0} is too small for a discriminant")]
    DegreeTooSmall(usize),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("polynomial involves more than one variable")]
    NotUnivariate,
    #[error("inexact division")]
    InexactDivision,
    #[error("elimination degenerate: {0}")]
    EliminationDegenerate(String),
}
