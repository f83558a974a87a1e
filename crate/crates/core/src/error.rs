use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty input")]
    Empty,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error("zero denominator at `{0}`")]
    ZeroMass(String),
    #[error("singular matrix")]
    Singular,
    #[error("table depth {have} too small, need {need}")]
    Depth { have: usize, need: usize },
    #[error("Hankel rank exceeds bound {0}")]
    RankBound(usize),
    #[error("invalid certificate: residual {0:e}")]
    Certificate(f64),
    #[error("isolation assumption violated at `{0}`")]
    Isolation(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Prefixes a location to the message, keeping the variant where it carries text.
    pub fn context(self, at: &str) -> Error {
        match self {
            Error::Invalid(m) => Error::Invalid(format!("{}: {}", at, m)),
            Error::Dimension(m) => Error::Dimension(format!("{}: {}", at, m)),
            Error::Schema(m) => Error::Schema(format!("{}: {}", at, m)),
            other => Error::Invalid(format!("{}: {}", at, other)),
        }
    }
}
