use thiserror::Error;

/// Errors raised anywhere in the geometry pipeline, the analysis drivers
/// and the front end.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("non-finite value in {context}")]
    NonFiniteValue { context: String },

    #[error("degenerate metric tensor: |det g| = {det:e} (threshold {threshold:e})")]
    DegenerateMetric { det: f64, threshold: f64 },

    #[error("curvature convention mismatch: contracted R differs from the Jacobi endomorphism by {residual:e}")]
    ConventionMismatch { residual: f64 },

    #[error("internal consistency check `{check}` failed with residual {residual:e}")]
    Inconsistent { check: String, residual: f64 },

    #[error("function is not positive: minimum {min:e} on sampled points")]
    NotPositive { min: f64 },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("singular denominator in {context} (|value| = {value:e})")]
    SingularDenominator { context: String, value: f64 },

    #[error("division by zero in {0}")]
    DivisionByZero(String),

    #[error("insufficient samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("parse error at position {position}: expected one of {expected:?}")]
    ParseError {
        position: usize,
        expected: Vec<String>,
    },

    #[error("configuration error: {0}")]
    ConfigError(String),

    #[error("invalid tangent sample: {0}")]
    InvalidSample(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn non_finite(context: impl Into<String>) -> Self {
        Error::NonFiniteValue {
            context: context.into(),
        }
    }

    /// True for errors that come from evaluating outside a metric's domain
    /// or hitting a singular point, as opposed to bad user input.
    pub fn is_numeric_domain(&self) -> bool {
        matches!(
            self,
            Error::NonFiniteValue { .. }
                | Error::DegenerateMetric { .. }
                | Error::NotPositive { .. }
                | Error::SingularDenominator { .. }
                | Error::DivisionByZero(_)
        )
    }
}
