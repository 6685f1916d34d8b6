use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid algebra presentation: {0}")]
    InvalidPresentation(String),
    #[error("elements live in different algebras")]
    OwnerMismatch,
    #[error("base rings differ")]
    BaseMismatch,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("no antipode exists: {0}")]
    NoAntipode(String),
    #[error("not a field: {0}")]
    NotAField(String),
    #[error("budget exceeded: {needed} cells needed, budget {budget}")]
    Budget { needed: u64, budget: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("reductions modulo pi differ: {0}")]
    ReductionMismatch(String),
    #[error("quotient: {0}")]
    Quotient(String),
}

pub type Result<T> = std::result::Result<T, Error>;
