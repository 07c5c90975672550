use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("egcd is undefined for (0, 0)")]
    ZeroGcd,

    #[error("cannot parse rational from {0:?}")]
    ParseRat(String),

    #[error("invalid lens space L({p},{q}): {reason}")]
    InvalidLens { p: i64, q: i64, reason: &'static str },

    #[error("Spin^c label {label} out of range for L({p},{q})")]
    InvalidLabel { p: u64, q: u64, label: u64 },

    #[error("invalid knot: {0}")]
    InvalidKnot(String),

    #[error("invalid contact data: {0}")]
    InvalidContact(String),

    #[error("invalid Legendrian data: {0}")]
    InvalidLegendrian(String),

    /// An internal consistency check failed. This always indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
