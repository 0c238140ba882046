use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain violation: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("inner series must have zero constant term, got {0}")]
    NonzeroInnerConstant(String),

    #[error("series power needs constant term 1, got {0}")]
    ConstantTermNotOne(String),

    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),

    #[error("no sign change on [{lo}, {hi}]: values {value_lo:e} and {value_hi:e}")]
    NoSignChange { lo: f64, hi: f64, value_lo: f64, value_hi: f64 },

    #[error("enclosure of width {width:e} at x = {x} exceeds {bound:e}; raise the term cutoff")]
    EnclosureTooWide { x: f64, width: f64, bound: f64 },
}
