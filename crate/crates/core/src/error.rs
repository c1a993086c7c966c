use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not closed under the bracket: [b{left}, b{right}] = {bracket} leaves the span")]
    NotClosed { left: usize, right: usize, bracket: String },

    #[error("cannot combine exact and numeric isometries")]
    VariantMismatch,

    #[error("entry `{0}` is declared proper; no divergent witness exists")]
    ProperEntry(String),

    #[error("witness check failed: {0}")]
    WitnessFailed(String),

    #[error("parameter recovery mismatch: {0}")]
    RecoveryMismatch(String),

    #[error("orbit-space evidence failed: {0}")]
    EvidenceFailed(String),

    #[error("function is not invariant: derivative along {generator} is nonzero at {point}")]
    NotInvariant { generator: String, point: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("parameters {0} are outside the admissible range")]
    InadmissibleParameters(String),
}
