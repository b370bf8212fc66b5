use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree too low")]
    DegreeTooLow,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial vanishes modulo {0}")]
    ZeroModP(u64),
    #[error("polynomial is not b-reciprocal")]
    NotBReciprocal,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("group tables are only enumerated for n <= {max}, got {n}")]
    NTooLarge { n: usize, max: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("degenerate fit: all counts are zero")]
    DegenerateFit,
    #[error("interrupted after {0} chunks; rerun to resume from the checkpoint")]
    Interrupted(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
