//! Exact recognition of algebraic data from high-precision floating values:
//! integer polynomials, LLL lattice reduction, minimal-polynomial
//! recognition, algebraic numbers, and number fields with membership tests.

pub mod field;
pub mod ipoly;
pub mod lll;
pub mod minpoly;

pub use field::{field_join, join_value, AlgebraicNumber, NumberField};
pub use ipoly::IntPoly;
pub use lll::lll_reduce;
pub use minpoly::{recognize_minpoly, recognize_minpoly_real};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgError {
    #[error("no stable integer relation found up to degree {dmax} at {digits} digits")]
    NoRelation { dmax: usize, digits: usize },
    #[error("value carries only ~{have} digits, {need} needed for recognition")]
    InsufficientPrecision { have: usize, need: usize },
    #[error("field join failed after {0} retries")]
    JoinFailure(usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}
