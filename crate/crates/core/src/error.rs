use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero form has no content")]
    ZeroForm,
    #[error("discriminant {0} is not positive and nonsquare")]
    NotIndefinite(String),
    #[error("form {0} is not G-reduced")]
    NotGReduced(String),
    #[error("form {0} is not Z-reduced")]
    NotZReduced(String),
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(String),
    /// An argument lies outside the domain of the operation.
    #[error("{0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// A property that the theory guarantees failed to hold at runtime.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn parse(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}
