use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("m must be a positive integer, got {0}")]
    NonPositiveM(i64),
    #[error("m = {m} is not square-free ({p}^2 divides it)")]
    NotSquareFree { m: i64, p: i64 },
    #[error("omega kind does not match m = {0} mod 4")]
    OmegaKindMismatch(i64),
    #[error("elements belong to different fields (m = {0} and m = {1})")]
    FieldMismatch(i64, i64),
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not Hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry {0} of a doubled Gram matrix must be even")]
    OddDiagonal(usize),
    #[error("form is not positive semidefinite")]
    NotPositiveSemidefinite,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("classical check requested on a nonclassical form")]
    NotClassical,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource limit reached: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
