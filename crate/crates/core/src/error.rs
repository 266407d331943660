use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed restriction-set text or tree/forest JSON.
    #[error("parse error: {0}")]
    Parse(String),

    /// A precondition on the mathematical domain was violated
    /// (e.g. `1 ∉ R` where an inverse is requested).
    #[error("domain error: {0}")]
    Domain(String),

    /// Two series of different truncation orders were combined.
    #[error("order mismatch: left has order {left}, right has order {right}")]
    OrderMismatch { left: usize, right: usize },

    /// An enumeration was asked to exceed its configured cap.
    #[error("cap exceeded: {what} = {requested} is above the cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    /// A triangular matrix with a zero diagonal entry cannot be inverted.
    #[error("matrix not invertible: zero diagonal entry at index {0}")]
    NotInvertible(usize),

    /// An entry that must be an exact integer failed its divisibility check.
    /// This signals an internal inconsistency, never a bad input.
    #[error("non-integer entry at (n, k) = ({n}, {k}): {detail}")]
    NonIntegerEntry { n: usize, k: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
