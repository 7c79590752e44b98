use thiserror::Error;

/// Errors raised by field, polynomial, matrix and orbit-code operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("modulus {0} is not monic")]
    NonMonicModulus(String),
    #[error("field towers deeper than two extension levels are not supported")]
    TowerTooDeep,
    #[error("size {size} exceeds the desk-scale cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("element index {index} out of range for a field of size {size}")]
    IndexOutOfRange { index: u64, size: u64 },

    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial {0} is reducible")]
    Reducible(String),
    #[error("polynomial {0} has zero constant term")]
    ZeroConstantTerm(String),
    #[error("polynomial {0} is not monic")]
    NotMonic(String),
    #[error("polynomial {0} is not primitive")]
    NotPrimitive(String),
    #[error("polynomial {0} is primitive; use the primitive analysis")]
    UnexpectedPrimitive(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is reducible")]
    ReducibleMatrix,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("zero element has no discrete logarithm")]
    ZeroElement,
    #[error("extension context is not primitive")]
    NonPrimitiveContext,
    #[error("extension context is primitive")]
    PrimitiveContext,
    #[error("the zero subspace cannot start an orbit code")]
    ZeroSubspace,
    #[error("{k} does not divide {n}")]
    NotDivisor { k: usize, n: usize },
    #[error("a code with a single codeword has no minimum distance")]
    SingletonCode,
    #[error("maximum multiplicity {multiplicity} is not of the form q^d - 1 for q = {q}")]
    NonIntegralIntersection { multiplicity: u64, q: u64 },
    #[error("no subspace satisfies the requested condition")]
    NotFound,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
