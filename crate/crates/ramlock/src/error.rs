use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not an Eisenstein polynomial: {0}")]
    NotEisenstein(String),
    #[error("precision too low: {0}")]
    PrecisionTooLow(String),
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("field is not an ancestor in the tower")]
    NotInTower,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),
    #[error("Witt context mismatch")]
    ContextMismatch,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("field lacks required roots: {0}")]
    MissingRoots(String),
    #[error("out of range: {0}")]
    RangeError(String),
    #[error("enumeration of {needed} candidates exceeds budget {budget}")]
    TooLarge { needed: u128, budget: u128 },
    #[error("bad filtration exponent: {0}")]
    BadExponent(String),
    #[error("bad module shape: {0}")]
    BadShape(String),
    #[error("budget exceeded after {partial} points")]
    BudgetExceeded { partial: usize },
    #[error("contraction not certified: {0}")]
    PrecisionInsufficient(String),
    #[error("no candidate reaches the full count (max seen {max_seen} of {target})")]
    NotFound { max_seen: usize, target: usize },
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Errors caused by malformed user input rather than by the computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Input(_)
                | Error::RangeError(_)
                | Error::NotEisenstein(_)
                | Error::BadExponent(_)
                | Error::BadShape(_)
        )
    }
}
