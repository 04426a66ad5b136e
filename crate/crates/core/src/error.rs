use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse group spec {0:?}")]
    Parse(String),

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("twist requires exponent divisible by {required} (q = {q} = {p}^{exponent})")]
    TwistFieldMismatch { q: u64, p: u64, exponent: u32, required: u32 },

    #[error("cyclotomic value is not rational: {0}")]
    NotRational(String),

    #[error("order formula produced a non-integer: {0}")]
    NonIntegral(String),

    #[error("nested enumeration of {tuples} tuples exceeds budget {budget}")]
    CutoffTooLarge { tuples: u128, budget: u128 },

    #[error("Euler product needs more than {budget} factors")]
    FactorBudgetExceeded { budget: u64 },

    #[error("enumeration of {size} matrices exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("orthogonal oracle needs odd characteristic, got q = {0}")]
    EvenCharacteristic(u64),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("cross-check failed: {0}")]
    CrossCheckMismatch(String),
}

impl Error {
    /// True for errors caused by exceeding a configured computation budget.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::CutoffTooLarge { .. } | Error::FactorBudgetExceeded { .. } | Error::BudgetExceeded { .. }
        )
    }
}
