use thiserror::Error;

use crate::coeff::Domain;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("coefficient domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: Domain, found: Domain },

    #[error("leading coefficient is not a unit")]
    NotAUnit,

    #[error("truncation order exhausted: {0}")]
    OrderExhausted(String),

    #[error("invalid scalar literal {0:?}")]
    InvalidScalar(String),

    #[error("parse error at byte {offset}: expected one of [{}], found {found}", expected.join(", "))]
    Parse {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("the imaginary unit requires the gaussian coefficient domain")]
    DomainRequired,

    #[error("unsupported argument {0}: only a*x is accepted inside exp/sin/cos")]
    UnsupportedArgument(String),

    #[error("outside the domain of the closed form: {0}")]
    ClosedFormDomain(String),

    #[error("numerical blowup at t = {t}")]
    NumericBlowup { t: f64 },

    #[error("expression is not numerically evaluable: {0}")]
    NotEvaluable(String),

    #[error("malformed document: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
