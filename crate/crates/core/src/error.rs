use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("constraint violation: {0}")]
    Constraint(String),
    #[error("coset enumeration needs more than {cap} cosets")]
    Overflow { cap: usize },
    #[error("singular model: discriminant vanishes identically")]
    SingularModel,
    #[error("isotrivial model: j-invariant is constant")]
    IsotrivialModel,
    #[error("internal invariant breached: {0}")]
    Invariant(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
