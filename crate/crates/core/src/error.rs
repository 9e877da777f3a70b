use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: size limit exceeded ({value} > {limit})")]
    SizeLimitExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    /// Exact division by a power of (x - 1) left a remainder. The divisibility
    /// always holds, so a remainder indicates a broken recursion.
    #[error("polynomial is not divisible by (x - 1)^{power}")]
    NonDivisible { power: u32 },

    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("exponent {0} is not an integer")]
    NonIntegralExponent(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A floating-point result left the finite range.
    #[error("{0} is not representable as a finite double; use log mode")]
    Overflow(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_limit(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        Err(Error::SizeLimitExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
