use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sum of degrees must be even, got {0}")]
    OddDegreeSum(usize),

    #[error("degree {degree} at vertex {vertex} exceeds maximum {max}")]
    DegreeTooLarge {
        vertex: usize,
        degree: usize,
        max: usize,
    },

    #[error("no simple graph found after {retries} rejection rounds")]
    SimpleRejectionExhausted { retries: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("start vertex {0} out of range (n = {1})")]
    InvalidStart(usize, usize),

    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("unsupported unvisit-rate target for this walk model")]
    UnsupportedRate,

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("empty histogram")]
    EmptyHistogram,

    #[error("no sign change located inside the scan grid")]
    NoCrossing,

    #[error("all replicas failed; first error: {0}")]
    AllReplicasFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
