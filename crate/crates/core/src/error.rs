use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },

    #[error("exponent t must be positive")]
    ZeroPower,

    #[error("homogenization degree {degree} is below the map degree {max}")]
    DegreeTooLow { degree: u32, max: u32 },

    #[error("map is not homogeneous of a common degree")]
    NotHomogeneous,

    #[error("form is not bihomogeneous")]
    NotBihomogeneous,

    #[error("Gram matrix is not Hermitian")]
    NotHermitian,

    #[error("form has {neg} negative square(s); not a sum of squares")]
    NotSos { neg: usize },

    #[error("map does not vanish at the origin")]
    NonzeroAtOrigin,

    #[error("map components are not linearly independent (rank {rank} of {components})")]
    NotMinimal { rank: usize, components: usize },

    #[error("exponents {0}, {1}, {2} share a common prime factor")]
    CommonFactor(u64, u64, u64),

    #[error("integer parameter `{0}` must be positive")]
    NonPositive(&'static str),

    #[error("{0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
