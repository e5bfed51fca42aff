use core::fmt;

/// Failure modes shared by every module of the core crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// An argument fell outside the mathematical domain of the operation.
    Domain {
        what: &'static str,
        value: f64,
    },
    /// An iterative scheme exhausted its iteration cap.
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },
    /// A sample group had fewer than two values.
    InsufficientData { len: usize },
    /// A sample group contained NaN or an infinity.
    NonFinite { index: usize },
    /// Image or sample dimensions did not agree.
    Shape {
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::NoConvergence { what, iterations } => {
                write!(f, "{what} did not converge after {iterations} iterations")
            }
            Error::InsufficientData { len } => {
                write!(f, "sample group needs at least 2 values, got {len}")
            }
            Error::NonFinite { index } => write!(f, "non-finite sample at index {index}"),
            Error::Shape { expected, found } => {
                write!(f, "shape mismatch: expected {expected}, found {found}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
