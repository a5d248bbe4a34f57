use thiserror::Error;

/// Errors raised while building distributions or evaluating Ess.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EssError {
    /// A value lies outside the domain its type admits.
    #[error("domain error: {0}")]
    Domain(String),

    /// Probabilities (or a density) do not sum (integrate) to one.
    #[error("normalization error: {0}")]
    Normalization(String),

    /// Conditioning on an outcome that has zero probability.
    #[error("conditioning error: {0}")]
    Conditioning(String),

    /// No closed form exists for the requested density family.
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    /// Adaptive refinement did not meet the tolerance.
    #[error("quadrature error: {0}")]
    Quadrature(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, EssError>;
