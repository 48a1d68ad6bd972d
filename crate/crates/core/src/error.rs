use thiserror::Error;

use crate::riordan::EchelonClassSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("side indeterminate: one operand is bounded below, the other bounded above")]
    SideIndeterminate,

    #[error("side mismatch: series is not representable as a bounded-{wanted} series")]
    SideMismatch { wanted: &'static str },

    #[error("product undefined: infinitely many nonzero terms contribute to a coefficient")]
    UndefinedSeriesProduct,

    #[error("order indeterminate: every known coefficient is zero")]
    OrderIndeterminate,

    #[error("operation undefined on the zero series")]
    ZeroSeries,

    #[error("composition undefined: {0}")]
    CompositionUndefined(String),

    #[error("coefficient of x^{exponent} is beyond the known precision")]
    PrecisionInsufficient { exponent: i64 },

    #[error("no compositional inverse: order is {order}, must be +1 or -1")]
    OrderNotUnit { order: i64 },

    #[error("matrix not invertible: {0}")]
    NotInvertible(String),

    #[error("product not defined (product table: {left} × {right})")]
    UndefinedMatrixProduct {
        left: EchelonClassSet,
        right: EchelonClassSet,
    },

    #[error("window oracle cannot certify entry ({row}, {col}): omitted summands may be nonzero")]
    GuardViolation { row: i64, col: i64 },

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("identity check failed: {0}")]
    CheckFailed(String),

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// True for errors raised because a mathematical operation is undefined
    /// (as opposed to malformed input).
    pub fn is_math_undefined(&self) -> bool {
        !matches!(self, Error::Parse { .. } | Error::Json(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
