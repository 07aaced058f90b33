use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no builtin coefficients for polynomial degree p = {0}")]
    NoBuiltinCoefficients(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("dense size guard exceeded: order {order} > limit {limit}")]
    SizeGuard { order: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("symbol is not Hermitian-symmetric: {0}")]
    NotHermitian(String),

    #[error("sample grid too coarse: n = {n}, need at least {min}")]
    SampleTooCoarse { n: usize, min: usize },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("assembly validation failed: {0}")]
    AssemblyValidation(String),

    #[error("corrected zero-frequency block is singular; eigenvalues {eigenvalues:?}")]
    SingularPreconditionerBlock { eigenvalues: Vec<f64> },

    #[error("operator is not positive definite: p^T A p = {curvature:e} at iteration {iteration}")]
    Indefinite { iteration: usize, curvature: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
