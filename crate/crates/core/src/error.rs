use thiserror::Error;

/// Failures raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot factor zero")]
    FactorZero,
    #[error("{0} is not a prime")]
    NotPrime(String),
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("formal degree {formal} is below the actual degree {actual}")]
    FormalDegreeTooSmall { formal: usize, actual: usize },
    #[error("leading coefficient a_{0} vanishes")]
    LeadingCoefficientZero(usize),
    #[error("constant coefficient a_0 vanishes")]
    ConstantCoefficientZero,
    #[error("polynomial must have formal degree at least {required}, got {actual}")]
    DegreeTooSmall { required: usize, actual: usize },
    #[error("polynomial degree {actual} exceeds the supported maximum {max}")]
    DegreeTooLarge { max: usize, actual: usize },
    #[error("actual degree differs from formal degree {0} (root at infinity)")]
    RootAtInfinity(usize),
    #[error("derivative vanishes at t = {0}")]
    DerivativeVanishes(String),
    #[error("polynomial vanishes at t = {0}")]
    PolynomialVanishes(String),
}

pub type Result<T> = std::result::Result<T, Error>;
