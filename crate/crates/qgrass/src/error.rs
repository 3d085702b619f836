use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live over different root-of-unity specs or shapes.
    ShapeMismatch(String),
    /// Vector/matrix dimensions disagree.
    DimensionMismatch(String),
    /// Generator label outside `e_i, f_i (i < m+n)`, `K_i^{±1} (i ≤ m+n)`.
    InvalidGenerator(String),
    /// A `(s, κ)` pair with no monomial of that degree and energy vector.
    Unrealizable(String),
    /// A certification step failed; the payload describes the witness.
    CertificationFailed(String),
    /// Bad run configuration (CLI or report layer).
    InvalidConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch(s) => write!(f, "shape mismatch: {s}"),
            Error::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            Error::InvalidGenerator(s) => write!(f, "invalid generator: {s}"),
            Error::Unrealizable(s) => write!(f, "unrealizable: {s}"),
            Error::CertificationFailed(s) => write!(f, "certification failed: {s}"),
            Error::InvalidConfig(s) => write!(f, "invalid config: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
