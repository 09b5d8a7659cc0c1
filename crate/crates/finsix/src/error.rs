use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed input: dangling identifiers, wrong table sizes, non-total maps.
    #[error("structural error: {0}")]
    Structural(String),
    /// Well-formed input that fails an axiom (associativity, inverses, action laws).
    #[error("axiom violated: {0}")]
    Axiom(String),
    /// Characteristic divides an automorphism order.
    #[error("semisimplicity gate violated: {0}")]
    Gate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("bound exceeded: {0}")]
    Bound(String),
    /// A certificate that should hold by a theorem failed; always a bug alarm.
    #[error("theorem violation [{anchor}]: {detail}")]
    Theorem { anchor: String, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn theorem(anchor: &str, detail: impl Into<String>) -> Error {
        Error::Theorem {
            anchor: anchor.to_string(),
            detail: detail.into(),
        }
    }
}
