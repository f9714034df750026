use thiserror::Error;

use crate::gaussian::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unphysical state: {0}")]
    Unphysical(ValidationReport),

    #[error("rotation is not unitary (residual {residual:.3e})")]
    NonUnitary { residual: f64 },

    #[error("quadrature covariance is not symmetric (asymmetry {asymmetry:.3e})")]
    NonSymmetric { asymmetry: f64 },

    #[error("invalid mode tag `{0}`, expected `a` or `b`")]
    InvalidMode(String),

    #[error("{name} = {value} is out of range, expected {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("degenerate resolution: {0}")]
    DegenerateResolution(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{0}")]
    Parse(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn out_of_range(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::OutOfRange {
            name,
            value,
            expected,
        }
    }
}
