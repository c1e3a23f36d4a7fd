use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed input: bad alphabet, word, matrix, graph or document.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Input is well formed but an operation's precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A configurable size limit was hit before the computation finished.
    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: String, limit: usize },

    /// Power iteration ran out of iterations.
    #[error("no convergence after {iterations} iterations (last estimate {last_estimate})")]
    NoConvergence { iterations: usize, last_estimate: f64 },

    /// A derivation witness failed to replay.
    #[error("witness step {step} is inconsistent: {reason}")]
    WitnessStep { step: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
