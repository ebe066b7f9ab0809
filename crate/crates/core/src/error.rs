use thiserror::Error;

/// Errors raised by counting, asymptotic and coding routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A redundancy was requested for an empty constrained set.
    #[error("redundancy undefined: {0}")]
    UndefinedRedundancy(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    /// The requested brute-force search space exceeds the enumeration cap.
    #[error("search space of {space} words exceeds the cap of {cap}")]
    Refused { space: u128, cap: u128 },

    #[error("invalid character {found:?} at position {position}")]
    Parse { position: usize, found: char },

    /// A code cannot be built for the requested parameters.
    #[error("configuration error: {0}")]
    Config(String),

    /// A received record could not be decoded.
    #[error("record {record}: {reason}")]
    Decode { record: usize, reason: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
