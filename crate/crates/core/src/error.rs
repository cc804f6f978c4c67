use thiserror::Error;

use crate::cli::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no leading term of zero")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("not reducible")]
    NotReducible,
    #[error("bound below minimal shape: shape bound {bound} < {minimal}")]
    BoundBelowMinimalShape { bound: usize, minimal: usize },
    #[error("polynomial has degree {degree} above the span bound {bound}; raise the bound")]
    DegreeOverflow { degree: u32, bound: u32 },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator name `{0}` is reserved for the embedding")]
    ReservedName(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("bases not confirmed GSB at bound")]
    NotGsb,
    #[error("source completion reached its bound (max-deg {max_deg}); refusing to build on an incomplete basis")]
    SourceIncomplete { max_deg: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
