use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A computation would exceed a configured size limit.
    #[error("resource cap exceeded: {what} needs {needed}, limit is {limit}")]
    ResourceCap {
        what: String,
        needed: u128,
        limit: u128,
    },

    /// Two objects that must live over the same group or share a shape do not.
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// The requested operation is not available for this kind of input.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A certified precondition does not hold.
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub(crate) fn cap(what: impl Into<String>, needed: u128, limit: u128) -> Error {
    Error::ResourceCap {
        what: what.into(),
        needed,
        limit,
    }
}
