use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular (|det| = {det:e})")]
    Singular { det: f64 },

    #[error("inverse of integer matrix is not integral")]
    NonIntegralInverse,

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("not a matrix: row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("exponents differ on axis {axis} ({left} vs {right}); composition along axis {along} requires them equal")]
    AxisMismatch { along: usize, axis: usize, left: i64, right: i64 },

    #[error("axis {axis} out of range for a {axes}-axis family")]
    AxisOutOfRange { axis: usize, axes: usize },

    #[error("elements belong to different generator families")]
    FamilyMismatch,

    #[error("generator family does not commute (max commutator {max_commutator:e})")]
    NonCommuting { max_commutator: f64 },

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("entry {index} is not +1 or -1")]
    NotSign { index: usize },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("conjugated fold disagrees with permuted fold at index {index}")]
    ConjugationMismatch { index: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
