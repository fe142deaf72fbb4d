use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("source/target mismatch: {0}")]
    Mismatch(String),
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error("map is not positive")]
    NotPositive,
    #[error("pieces do not glue: {0}")]
    Incompatible(String),
    #[error("map does not descend to the quotient: {0}")]
    Descent(String),
    #[error("presheaf is not skeletal-complete at its bound")]
    NotSkeletalComplete,
    #[error("not a subobject: {0}")]
    NotSubobject(String),
    #[error("outside the truncation: {0}")]
    OutOfBound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}
