use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subspace too large: dimension {dim} exceeds cap {cap}")]
    SubspaceTooLarge { dim: usize, cap: usize },

    /// An enumeration would exceed (or did exceed) its configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("qubit count {n} exceeds state-vector cap {cap}")]
    QubitCap { n: usize, cap: usize },

    #[error("codewords are not orthonormal: {0}")]
    NotOrthonormal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_) | Error::SubspaceTooLarge { .. })
    }
}
