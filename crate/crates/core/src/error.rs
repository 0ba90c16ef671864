use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a square matrix of even size, got {rows}x{cols}")]
    Dimension { rows: usize, cols: usize },

    #[error("matrix is not integer symplectic")]
    NotSymplectic,

    #[error("degenerate map: {0}")]
    Degenerate(String),

    #[error("no period found within {cap} iterations")]
    PeriodNotFound { cap: u64 },

    #[error("Heisenberg moduli differ ({left} vs {right})")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("transformation law needs gcd(c, N) = 1, got {gcd}")]
    NotApplicable { gcd: i64 },

    #[error("{what}: residual {residual:e} exceeds {tolerance:e}")]
    Numerical {
        what: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("eigenpair {index} has residual {residual:e} above {tolerance:e}")]
    EigenResidual {
        index: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("sample set is ill-conditioned (condition number {0:e}), resample")]
    IllConditioned(f64),

    #[error("theta parity violated: {0}")]
    Parity(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
