use thiserror::Error;

/// Errors raised by the algebra engine and the decision procedures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// A resource cap was hit. Callers translate this into an UNDECIDED outcome.
    #[error("{resource} budget exhausted (cap {cap})")]
    Budget { resource: &'static str, cap: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("{poly} is not a Hilbert polynomial of a subscheme of P^{ambient}")]
    NotHilbertPolynomial { poly: String, ambient: usize },

    #[error("component decomposition unavailable: {0}")]
    DecompositionUnavailable(String),

    #[error("morphism is not finite: {0}")]
    NotFinite(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
