use thiserror::Error;

use crate::grids::TransformKind;
use crate::poly::Family;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} components, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {value} outside the admissible range [{min}, {max}]")]
    OutOfRange { value: i64, min: i64, max: i64 },

    #[error("label {0} is not in the label set of this transform")]
    NotInLabelSet(String),

    #[error("expected {expected} samples aligned with the grid, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("family {family} has no cubature formula on grid {kind}")]
    UnsupportedPairing { family: Family, kind: TransformKind },

    #[error("cubature formula {family}/{kind} requires {requirement}, got N = {big_n}")]
    Precondition {
        family: Family,
        kind: TransformKind,
        big_n: usize,
        requirement: &'static str,
    },

    #[error("triangular change of basis failed at label {0}")]
    Singular(String),

    #[error("quadrature did not converge: {coarse} with {coarse_points} points vs {fine} with {fine_points} points")]
    QuadratureNotConverged {
        coarse: f64,
        fine: f64,
        coarse_points: usize,
        fine_points: usize,
    },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
