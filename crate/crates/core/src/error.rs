use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("interpolation nodes {0} and {1} coincide")]
    DuplicateNode(usize, usize),

    #[error("the zero polynomial has no roots")]
    ZeroPolynomial,

    #[error("polynomial is not even: odd-coefficient mass {odd:e} against even mass {even:e}")]
    NotEven { odd: f64, even: f64 },

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error(
        "degenerate subspace of dimension {dim} is not resolved by the transfer matrix at \
         u0 = {probe}; retry with a different probe"
    )]
    UnresolvedDegeneracy { dim: usize, probe: f64 },

    #[error("eigenvalue reconstruction residual {residual:e} exceeds tolerance {tol:e}")]
    Reconstruction { residual: f64, tol: f64 },

    #[error("TQ design matrix is rank deficient (singular value ratio {ratio:e})")]
    RankDeficient { ratio: f64 },

    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
