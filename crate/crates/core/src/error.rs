use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no binding for variable `{0}`")]
    UnboundVariable(String),
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("series order {available} is smaller than the requested order {requested}")]
    InsufficientOrder { requested: usize, available: usize },
    #[error("unsupported torus weight {0:?}: negative entry on the dominant cone")]
    UnsupportedWeight(Vec<i64>),
    #[error("rank mismatch: expected {expected}, got {got}")]
    BadRank { expected: usize, got: usize },
    #[error("rank of pi' ({m}) exceeds rank of pi ({n})")]
    BadRanks { n: usize, m: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("segments {0} and {1} are linked; the product is not generic")]
    NotGeneric(usize, usize),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("bad degree: {0}")]
    BadDegree(String),
    #[error("derivative order {order} outside 0..={n}")]
    BadOrder { order: usize, n: usize },
    #[error("bialternant undefined: variables {0} and {1} coincide")]
    DegenerateVariables(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
