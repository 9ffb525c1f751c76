use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series is identically zero to the available precision")]
    ZeroSeries,
    #[error("bad leading term: {0}")]
    BadLeadingTerm(String),
    #[error("leading coefficient is {0}, expected 1 (use normalization)")]
    NotNormalized(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("unsupported Eisenstein weight {0}")]
    UnsupportedWeight(i64),
    #[error("order at infinity is not an integer: {0}")]
    NonIntegralOrder(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("exponent c({0}) is not an integer")]
    NonIntegralExponents(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn short_prec(what: impl std::fmt::Display) -> Error {
    Error::InsufficientPrecision(what.to_string())
}
