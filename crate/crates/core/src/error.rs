use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("zero polynomial where a nonzero one is required ({context})")]
    ZeroInput { context: &'static str },

    #[error("division by zero")]
    DivisionByZero,

    #[error("expected {expected} variable images, got {got}")]
    MissingImage { expected: usize, got: usize },

    #[error("factorization unsupported: {0}")]
    Unfactorable(String),

    #[error("factor {poly} is reducible")]
    Reducible { poly: String },

    #[error("{poly} is not symmetric under the involution")]
    NotSymmetric { poly: String },

    #[error("chain complex shape mismatch in degree {degree}: {message}")]
    Shape { degree: usize, message: String },

    #[error("boundary composite d{degree}∘d{} is nonzero", degree + 1)]
    NotAComplex { degree: usize },

    #[error("chain complex is not acyclic")]
    NotAcyclic,

    #[error("singular block in degree {degree} during torsion computation")]
    SingularBlock { degree: usize },

    #[error("sequence is not exact in degree {degree}: {message}")]
    NotExact { degree: usize, message: String },

    #[error("non-integral assembled pairing entry at ({row}, {col})")]
    NonIntegral { row: usize, col: usize },

    #[error("Torres check failed: |Δ(1,…,1)| = {value}, expected {expected}")]
    Torres { value: String, expected: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("inadmissible prime {prime}: g_{prime} divides the base torsion")]
    Inadmissible { prime: u64 },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// Character offset carried by parse errors, if any.
    pub fn position(&self) -> Option<usize> {
        match self {
            Error::Syntax { position, .. } | Error::UnknownVariable { position, .. } => Some(*position),
            _ => None,
        }
    }
}
