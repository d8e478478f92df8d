use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("sequence must start with 1: {0}")]
    LeadingZero(String),
    #[error("at most one star is allowed, at the end of the period: {0}")]
    MultipleStars(String),
    #[error("expected a *-periodic sequence, got {0}")]
    NotStarPeriodic(String),
    #[error("expected a periodic sequence without stars, got {0}")]
    NotPeriodic(String),
    #[error("sequence contains a star: {0}")]
    HasStar(String),
    #[error("{0} is not primitive")]
    NotPrimitive(String),
    #[error("{0} is not in the parameter tree (it is periodic)")]
    NotInParameterTree(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("index {index} out of range (address has {len} entries)")]
    OutOfRange { index: usize, len: usize },
    #[error("itinerary {0} is inconsistent with the kneading sequence")]
    Inconsistent(String),
    #[error("triod did not settle within {0} steps")]
    StepLimit(usize),
    #[error("{0} is not a characteristic point of this tree")]
    NotCharacteristic(String),
    #[error("{0} is admissible")]
    Admissible(String),
    #[error("could not decide within bound {0}")]
    Undetermined(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
