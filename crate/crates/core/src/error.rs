use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{what} is not an integer: {value}")]
    NonIntegerResult { what: String, value: String },
    #[error("{what} is negative: {value}")]
    NegativeResult { what: String, value: String },
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(String),
    #[error("interpolation needs at least one point")]
    EmptyInterpolation,
    #[error("piece index {j} lies outside the support of B_{d}")]
    IndexOutOfSupport { d: u32, j: u32 },
    #[error("enumeration of {requested} exceeds the bound {bound}")]
    TooLarge { requested: String, bound: String },
    #[error("internal identity violated: {0}")]
    Inconsistent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
