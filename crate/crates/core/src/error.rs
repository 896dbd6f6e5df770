use core::fmt;

/// Errors raised by the physics core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// Arithmetic between quantities carrying different units.
    UnitMismatch {
        left: crate::quantities::Unit,
        right: crate::quantities::Unit,
    },
    /// Evaluation at a pole of the model (e.g. Drude permittivity at zero frequency).
    Pole { what: &'static str },
    /// Coincident particles.
    Singular,
    /// The adaptive integrator ran out of subdivisions before meeting its tolerance.
    Integration {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },
    /// Density cannot be integrated (negative, infinite, or point-like where a band is required).
    NonIntegrable { reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what}: value {value} out of domain"),
            Error::UnitMismatch { left, right } => {
                write!(f, "unit mismatch: {left} vs {right}")
            }
            Error::Pole { what } => write!(f, "{what}"),
            Error::Singular => write!(f, "separation vector has zero length"),
            Error::Integration {
                estimate,
                error,
                subdivisions,
            } => write!(
                f,
                "quadrature did not converge after {subdivisions} subdivisions \
                 (estimate {estimate:e}, error {error:e})"
            ),
            Error::NonIntegrable { reason } => write!(f, "non-integrable density: {reason}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
