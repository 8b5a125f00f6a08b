use thiserror::Error;

pub type Result<T, E = ChaosError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChaosError {
    #[error("grid size must be at least 2, got {0}")]
    InvalidGrid(u32),

    #[error("alpha must be finite, got {0}")]
    NonFiniteAlpha(f64),

    #[error("operation requires an integer alpha, got {0}")]
    NonIntegerAlpha(f64),

    #[error(
        "the frequency engine requires an integer alpha, got {0}; for non-integer alpha the \
         lattice dynamics do not commute with sampling, use the gram engine"
    )]
    FrequencyEngineNeedsIntegerAlpha(f64),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("symbol {symbol} out of range for a partition of {size} points")]
    SymbolOutOfRange { symbol: usize, size: usize },

    #[error("number of time steps must be at least {min}, got {got}")]
    TooFewSteps { min: usize, got: usize },

    #[error("eigenvalue {0:e} is too negative for a positive semidefinite matrix")]
    NegativeEigenvalue(f64),

    #[error("eigendecomposition failed: {0}")]
    Eigensolver(String),

    #[error("oracle dimension {dim} exceeds the limit {limit}")]
    OracleTooLarge { dim: u128, limit: u128 },

    #[error("alpha = {0} is not hyperbolic")]
    NonHyperbolic(f64),

    #[error("duplicate abscissa {0} in Lagrange extrapolation")]
    DuplicateAbscissa(f64),

    #[error("degree {degree} needs between 2 and {available} points")]
    InvalidDegree { degree: usize, available: usize },

    #[error("observable has {got} values, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },
}
