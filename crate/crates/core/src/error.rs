use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series is zero, cannot invert")]
    NotInvertible,

    #[error("inverse of an exact series with more than one term is not finitely representable; truncate first")]
    InverseNotFinite,

    #[error("insufficient precision: need order {needed}, have {have}")]
    InsufficientPrecision { needed: i64, have: i64 },

    #[error("undecidable at current precision: {0}")]
    Undecidable(String),

    #[error("invalid curve data: {0}")]
    InvalidSpec(String),

    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("precision exhausted after {doublings} doublings (last window {last}): {detail}")]
    PrecisionExhausted {
        doublings: u32,
        last: i64,
        detail: String,
    },

    #[error("branches {i} and {j} are not separated within precision window {window}")]
    BranchesNotSeparated { i: usize, j: usize, window: i64 },

    #[error("operands belong to different curve rings")]
    RingMismatch,

    #[error("element not contained: {0}")]
    NotIncluded(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("independent routes disagree: {0}")]
    RouteDisagreement(String),

    #[error("window error: {0}")]
    Window(String),
}

pub type Result<T> = std::result::Result<T, Error>;
