//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the arithmetic, construction and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),
    #[error("wild inertia: p divides |I| = {0}")]
    WildInertia(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("tail of exponential coefficients not certified: {0}")]
    TailNotCertified(String),
    #[error("normal basis search failed after {0} attempts")]
    NormalBasisSearchFailed(usize),
    #[error("unsupported conductor: {0}")]
    UnsupportedConductor(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("operation requires the trivial group")]
    NontrivialGroup,
    #[error("no common nucleus found up to level {0}")]
    NoCommonNucleus(usize),
    #[error("discreteness violated: {0}")]
    DiscretenessViolated(String),
    #[error("class module did not stabilize: {0}")]
    NotStabilized(String),
    #[error("convergence domain exceeded: {0}")]
    ConvergenceDomainExceeded(String),
    #[error("lattice not admissible: {0}")]
    NotAdmissible(String),
    #[error("span mismatch: {0}")]
    SpanMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
