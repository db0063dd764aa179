use thiserror::Error;

use crate::table::Variety;

/// Errors raised by series arithmetic, table construction and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial has {len} coefficients but truncation order is {order}")]
    OrderTooSmall { len: usize, order: usize },

    #[error("cannot divide by a series with zero constant term")]
    DivisionImpossible,

    #[error("derivative of an order-0 series has no known coefficients")]
    EmptyOrder,

    #[error("input series has order {actual}, operation requires at least {required}")]
    InsufficientOrder { required: usize, actual: usize },

    #[error("coefficient {index} is nonzero beyond degree {max_deg}")]
    NotAPolynomial { index: usize, max_deg: usize },

    #[error("scale parameter must be positive")]
    NonPositiveScale,

    #[error("{what} at n = {n} is not an integer")]
    NonIntegral { what: &'static str, n: usize },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("input is not a permutation of 1..={0}")]
    NotAPermutation(usize),

    #[error("oracle for {variety} is limited to n <= {limit} (requested {n})")]
    OracleLimit { variety: Variety, n: usize, limit: usize },

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("extrapolation needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
