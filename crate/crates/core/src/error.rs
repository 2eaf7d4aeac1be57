use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Why an operator failed to be a delta operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotDeltaReason {
    /// Indicator has a nonzero constant term.
    OrderZero,
    /// Indicator starts at `t^k` with `k >= 2`.
    OrderAtLeastTwo(usize),
    /// Indicator is identically zero (to the retained order).
    Zero,
}

impl std::fmt::Display for NotDeltaReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotDeltaReason::OrderZero => write!(f, "indicator has order 0 (nonzero constant term)"),
            NotDeltaReason::OrderAtLeastTwo(k) => write!(f, "indicator has order {k} >= 2"),
            NotDeltaReason::Zero => write!(f, "indicator is zero"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("order error: {0}")]
    Order(String),
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,
    #[error("constant term error: {0}")]
    ConstantTerm(String),
    #[error("truncation error: need coefficients up to degree {needed}, only {available} available")]
    Truncation { needed: usize, available: usize },
    #[error("division order error: numerator order {num} is below denominator order {den}")]
    DivisionOrder { num: String, den: usize },
    #[error("not a delta operator: {0}")]
    NotDelta(NotDeltaReason),
    #[error("operator is not Appell: indicator constant term is zero")]
    NotAppell,
    #[error("not unitary: linear coefficient is {0}, expected 1")]
    NotUnitary(String),
    #[error("singular triangle: zero diagonal at row {row}")]
    SingularTriangle { row: usize },
    #[error("index error: k = {k} exceeds n = {n}")]
    Index { n: usize, k: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("identity failed: {0}")]
    IdentityFailure(String),
    #[error("cannot parse rational `{0}`")]
    ParseRat(String),
    #[error("syntax error at offset {offset}: expected {expected}, found {found}")]
    Syntax { offset: usize, expected: String, found: String },
    #[error("at offset {offset}: {source}")]
    AtLocation {
        offset: usize,
        #[source]
        source: Box<Error>,
    },
}
