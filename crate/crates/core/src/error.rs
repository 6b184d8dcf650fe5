use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("conditional type inconsistent with reference type: {0}")]
    InconsistentCondType(String),

    #[error("empty type class or shell: {0}")]
    EmptyClass(String),

    #[error("enumeration needs {needed} sequences, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("list size {lambda} exceeds number of secrets {secrets}")]
    ListTooLarge { lambda: usize, secrets: usize },

    #[error("invalid rates: {0}")]
    InvalidRates(String),

    #[error("grid resolution must be positive")]
    InvalidGrid,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("constraint count {count} exceeds cap {cap}")]
    ConstraintBlowup { count: usize, cap: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("linear program failed: {0}")]
    Lp(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
