use num_bigint::BigUint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Factorization ran out of budget or the input exceeded the supported
    /// magnitude. The caller can retry with an explicit factorization.
    #[error("factorization gave up on {n}: {reason}")]
    FactorizationGaveUp { n: BigUint, reason: String },

    /// A ratio was constructed with denominator zero.
    #[error("ratio denominator must be nonzero")]
    ZeroDenominator,

    /// An operation that needs at least one prime factor received the empty
    /// factorization (the number 1).
    #[error("operation requires a nonempty factorization")]
    EmptyFactorization,

    /// A factor list failed validation (unsorted, repeated prime, zero
    /// exponent, composite base) or a factor string failed to parse.
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    /// A ratio literal failed to parse.
    #[error("invalid ratio: {0}")]
    InvalidRatio(String),

    /// A caller-supplied argument violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A requested range would exceed the configured memory or time budget.
    #[error("range too large: {0}")]
    RangeTooLarge(String),

    /// A checkpoint file exists but cannot be trusted: unreadable, wrong
    /// schema version, or recorded for different search parameters.
    #[error("corrupt checkpoint: {0}")]
    CorruptCheckpoint(String),

    /// A verification budget exceeds the hard cap for its field.
    #[error("verification budget too large: {0}")]
    BudgetTooLarge(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
