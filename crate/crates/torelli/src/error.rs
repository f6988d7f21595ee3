use thiserror::Error;

/// Errors reported by the library. Exit-code mapping for the CLI lives in
/// the binary crate: schema problems are distinct from domain violations,
/// which are distinct from derivation failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected vectors of length {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("genus must be at least 1")]
    ZeroGenus,

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("bar of the zero class is undefined")]
    BarOfZero,

    #[error("matrix does not preserve the mod-2 intersection pairing")]
    NotSymplectic,

    #[error("simply-intersecting-pair data carries no factorization and its boundary wedge is nonzero; the signed image is undetermined")]
    MissingFactorization,

    #[error("word uses symbol '{0}' outside the declared generator set")]
    UnknownSymbol(String),

    #[error("malformed curve id '{0}'")]
    BadCurveId(String),

    #[error("no homology class assigned to id '{0}'")]
    UnassignedClass(String),

    #[error("derivation step {step} is illegal: {reason}")]
    Derivation { step: usize, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn derivation(step: usize, reason: impl Into<String>) -> Self {
        Error::Derivation {
            step,
            reason: reason.into(),
        }
    }
}
