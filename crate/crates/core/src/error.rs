use thiserror::Error;

/// Errors produced by ring construction, predicates and the decision engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: expected one of {}", expected.join(", "))]
    Parse { offset: usize, expected: Vec<String> },

    #[error("unsupported field size GF({0}); supported: primes, 4, 8, 9, 16")]
    UnsupportedField(u64),

    #[error("ring order {order} exceeds the cap {cap}")]
    OrderOverflow { order: u128, cap: u64 },

    #[error("{what} needs {needed} element scans but the budget is {budget}")]
    BudgetExceeded { what: String, needed: u128, budget: u64 },

    #[error("elements belong to different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },

    #[error("index {index} out of range for ring of order {order}")]
    IndexOutOfRange { index: u64, order: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("quotient by the radical is not Boolean: element {witness} of R/J is not idempotent")]
    NotBooleanQuotient { witness: u64 },

    #[error("refused: {0}")]
    Refused(String),

    #[error("method discrepancy: {0}")]
    Discrepancy(String),

    #[error("malformed matrix literal: {0}")]
    Matrix(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn budget(what: impl Into<String>, needed: u128, budget: u64) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            needed,
            budget,
        }
    }
}
