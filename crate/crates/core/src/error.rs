use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// Everything except [`Error::Invariant`] is attributable to the caller's
/// input; `Invariant` means an internal consistency check failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("polynomial has degree 0")]
    DegreeZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("extension degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("point {0} does not lie on the point scheme")]
    NotOnPointScheme(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }

    /// Short stable identifier used in machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidInput(_) => "invalid_input",
            Error::DegreeZero => "degree_zero",
            Error::DivisionByZero => "division_by_zero",
            Error::DegreeCap { .. } => "degree_cap",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Precondition(_) => "precondition",
            Error::NotOnPointScheme(_) => "not_on_point_scheme",
            Error::Invariant(_) => "invariant",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
