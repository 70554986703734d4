use thiserror::Error;

use crate::cfk::CfkReport;
use crate::surface_map::ValidationReport;

/// Errors raised by the domain operations.
///
/// Validation problems are never raised directly by `validate`; they surface
/// here only when an operation requires a valid input and did not get one.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid standard form: {0}")]
    InvalidMap(ValidationReport),

    #[error("invalid complex: {0}")]
    InvalidComplex(CfkReport),

    #[error("unknown circle `{0}`")]
    UnknownCircle(String),

    #[error("circle `{0}` is not a surface boundary component")]
    NotSurfaceBoundary(String),

    #[error("unknown piece `{0}`")]
    UnknownPiece(String),

    #[error("map not identity on boundary `{0}`")]
    NotIdentityOnBoundary(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("surface is not closed")]
    NotClosed,

    #[error("genus {0} is below the required minimum of 2")]
    GenusTooSmall(u32),

    #[error("map is isotopic to the identity")]
    IdentityMap,

    #[error("difference not determined: opaque terms differ ({0})")]
    DifferenceNotDetermined(String),

    #[error("complex is truncated below Alexander grading {0}")]
    Truncated(i64),

    #[error("complex has no fibered genus")]
    NotFibered,

    #[error("expected a one-dimensional top group at Alexander grading {grading}, found {dim}")]
    TopDimension { grading: i64, dim: usize },

    #[error("total homology has dimension {0}, expected 1")]
    TotalHomology(usize),

    #[error("insufficient model: region reads Alexander grading {needed} below truncation floor {floor}")]
    InsufficientModel { needed: i64, floor: i64 },

    #[error("hypotheses not satisfied: {0}")]
    HypothesesNotSatisfied(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
