use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced by the exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Matrix dimensions do not fit the requested operation.
    #[error("shape error: {0}")]
    Shape(String),

    /// A linear system had a singular coefficient matrix.
    #[error("singular matrix")]
    Singular,

    /// Input lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The computation would exceed a configured size cap.
    #[error("infeasible: {what} needs {required} candidates, cap is {cap}")]
    Infeasible {
        what: &'static str,
        required: BigInt,
        cap: u64,
    },

    /// Two independent routes disagreed, or a proven identity failed.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    /// Malformed edge-list input.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
