use thiserror::Error;

use crate::linalg::MatrixError;
use crate::polyring::PolyError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("invalid surface: {0}")]
    Surface(String),
    #[error("invalid jet parameters: {0}")]
    Spec(String),
    #[error("coefficient field: {0}")]
    Field(String),
    #[error("entry A[{tuple}] has degree {degree} above the cap {cap}")]
    DegreeCap { tuple: String, degree: u32, cap: u32 },
    #[error("genericity audit did not pass; rerun with the override to force an unverified instance")]
    GenericityGate,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
