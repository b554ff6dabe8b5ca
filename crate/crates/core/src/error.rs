use thiserror::Error;

use crate::rootsys::CartanType;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidCartanType(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("pairing against the zero vector")]
    ZeroRoot,

    #[error("expected {expected} weight coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("the zero weight labels the trivial representation")]
    ZeroWeight,

    #[error("highest weight is not dominant integral")]
    NotDominant,

    #[error("monomial of degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("coefficient vector is not on the unit sphere (sum of squares {norm_sq})")]
    InfeasibleR { norm_sq: f64 },

    #[error("positive root #{root} has zero lowering norm for this highest weight")]
    ZeroTangent { root: usize },

    #[error("coefficient vector has length {got}, expected {expected}")]
    IndexMismatch { expected: usize, got: usize },

    #[error("{0} is not a classical Cartan type")]
    NotClassical(CartanType),
}

pub type Result<T> = std::result::Result<T, Error>;
