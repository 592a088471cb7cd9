use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter falls outside its admissible range.
    InvalidParameter { name: &'static str, reason: &'static str },
    /// Two lists that must agree in length do not.
    LengthMismatch { expected: usize, found: usize },
    /// An analytic derivative of the given order was requested but the
    /// function does not provide it.
    MissingDerivative { order: usize },
    /// A finite-difference stencil or fit has too few points.
    InsufficientSamples { needed: usize, found: usize },
    /// A function evaluation or input value was NaN or infinite.
    NonFinite { context: &'static str },
    /// The normalized error is undefined because the data span is zero.
    UndefinedMetric,
}

impl Error {
    /// True for errors caused by bad caller input rather than numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. }
                | Error::LengthMismatch { .. }
                | Error::MissingDerivative { .. }
                | Error::InsufficientSamples { .. }
        )
    }

    pub(crate) fn invalid(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, reason } => write!(f, "invalid {name}: {reason}"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::MissingDerivative { order } => {
                write!(f, "analytic derivative of order {order} is not available")
            }
            Error::InsufficientSamples { needed, found } => {
                write!(f, "need at least {needed} points, found {found}")
            }
            Error::NonFinite { context } => write!(f, "non-finite value in {context}"),
            Error::UndefinedMetric => {
                write!(f, "normalized error undefined: first and last samples coincide")
            }
        }
    }
}

impl core::error::Error for Error {}
