use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed ring spec `{spec}`: {reason}")]
    MalformedSpec { spec: String, reason: String },
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("malformed element literal `{literal}` for ring {ring}: {reason}")]
    MalformedElement {
        literal: String,
        ring: String,
        reason: String,
    },
    /// The question is well-posed but this ring class has no decision procedure
    /// for it. Distinct from a negative answer.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("ideal is not uniquely divisible: {0}")]
    Divisibility(String),
    #[error("mismatched operands: {0}")]
    Mismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("missing certificate: {0}")]
    MissingCertificate(String),
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive(_) | Error::CapExceeded(_))
    }
}
