use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan datum: {0}")]
    InvalidDatum(String),
    #[error("weight is not dominant")]
    NotDominant,
    #[error("unsupported type: canonical bases are available only for A1 and A2 ({0})")]
    UnsupportedType(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element is not supported on the sandwich subspace: {0}")]
    NotSandwich(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("coordinates are not Laurent polynomials: {0}")]
    NotIntegral(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
