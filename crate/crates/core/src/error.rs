use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("InvalidDimension: matrices must be square with n >= 2 (got {0})")]
    InvalidDimension(String),

    #[error("DimensionMismatch: expected n = {expected}, got n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("SingularShiftedIdentity: xI + yJ is singular for x = {x}, y = {y}, n = {n}")]
    SingularShiftedIdentity { x: String, y: String, n: usize },

    #[error("InfeasiblePair: no matrix with alpha = {alpha}, beta = {beta} exists for this construction ({reason})")]
    InfeasiblePair {
        alpha: String,
        beta: String,
        reason: String,
    },

    #[error("NonpositiveBeta: beta must be > 0 (got {0})")]
    NonpositiveBeta(String),

    #[error("NotSignMatrix: entry ({row}, {col}) = {value} is not -1 or 1")]
    NotSignMatrix { row: usize, col: usize, value: String },

    #[error("NotZeroOneMatrix: entry ({row}, {col}) = {value} is not 0 or 1")]
    NotZeroOneMatrix { row: usize, col: usize, value: String },

    #[error("PerturbationExceedsCap: entry ({row}, {col}) = {value} violates the epsilon cap or zero diagonal")]
    PerturbationExceedsCap { row: usize, col: usize, value: String },

    #[error("NonpositiveStep: progression step q must be > 0 (got {0})")]
    NonpositiveStep(String),

    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),

    #[error("SearchSpaceTooLarge: {size} arrangements after symmetry reduction exceeds the limit {limit}")]
    SearchSpaceTooLarge { size: String, limit: u64 },

    #[error("DivergentSpec: {0}")]
    DivergentSpec(String),

    #[error("Parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
