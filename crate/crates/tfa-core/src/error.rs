//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// Working precision cannot certify the requested quantity.
    #[error("precision exhausted: {0}")]
    Precision(String),

    /// An interval straddles a reduction boundary (integer or half-integer);
    /// the caller should retry at higher precision.
    #[error("ambiguous reduction: {0}")]
    Ambiguous(String),

    /// Continued-fraction expansion ran out of certified quotients before the
    /// requested depth. `valid_depth` is the largest certified index.
    #[error("depth exhausted: certified only to index {valid_depth}")]
    DepthExhausted { valid_depth: usize },

    /// The input is rational and its expansion terminated before the
    /// requested index.
    #[error("terminal input: {0}")]
    Terminal(String),

    #[error("brute-force cap exceeded: {0}")]
    CapExceeded(String),

    #[error("window violation: {0}")]
    WindowViolation(String),

    #[error("separation violation: {0}")]
    SeparationViolation(String),

    #[error("budget infeasible: {0}")]
    BudgetInfeasible(String),

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("degenerate gradient: {0}")]
    DegenerateGradient(String),

    /// The certified interval of a case discriminant straddles zero.
    #[error("unresolved case: {0}")]
    UnresolvedCase(String),

    #[error("sample inside exceptional set: {0}")]
    SampleInExceptionalSet(String),

    /// An internal invariant that should hold by construction failed.
    #[error("internal consistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
