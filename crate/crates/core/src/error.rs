use thiserror::Error;

use crate::series::FormalVar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("series variable mismatch: {0} vs {1}")]
    VarMismatch(FormalVar, FormalVar),

    #[error("series truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("series has a nonzero constant term")]
    NonZeroConstant,

    #[error("constant term is not a unit of the coefficient ring")]
    NotAUnit,

    #[error("cannot divide by {var}^{shift}: coefficient of {var}^{index} is nonzero")]
    LowOrderNonZero {
        var: FormalVar,
        shift: usize,
        index: usize,
    },

    #[error("coefficient index {index} exceeds truncation order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("unbound symbol {0}")]
    UnboundSymbol(String),

    #[error("limit L -> infinity diverges{context}: numerator degree {num_degree} exceeds denominator degree {den_degree}")]
    Divergence {
        context: String,
        num_degree: usize,
        den_degree: usize,
    },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("{0}")]
    Usage(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
