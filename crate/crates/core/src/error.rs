use thiserror::Error;

/// Errors raised by every fallible operation in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("lattice has infinite index (rank {rank} < dimension {dim})")]
    InfiniteIndex { rank: usize, dim: usize },

    #[error("{0} is not a point of the lattice")]
    NotInLattice(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("arity mismatch: rule expects {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("symbol {symbol} out of range for alphabet of size {size}")]
    SymbolOutOfRange { symbol: u64, size: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration budget exceeded: {what} needs {needed} points, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },

    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_budget(what: &'static str, needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::BudgetExceeded { what, needed, budget })
    } else {
        Ok(())
    }
}

/// `base^exp` as u128, saturating at `u128::MAX`.
pub(crate) fn pow_sat(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
