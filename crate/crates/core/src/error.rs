use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("{name} = {value} is outside its domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An eigen- or singular-value solver failed, or produced values that a
    /// PSD matrix cannot have.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Every bulk eigenvalue is zero, so no noise variance can be fitted.
    #[error("degenerate spectrum: all bulk eigenvalues are zero")]
    DegenerateSpectrum,

    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            expected,
        }
    }
}
