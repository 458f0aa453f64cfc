use thiserror::Error;

/// Errors reported by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not supported: p must be a prime greater than 3")]
    CharacteristicTooSmall(u64),
    #[error("{0} is even, so it cannot be an odd prime")]
    EvenModulus(u64),
    #[error("{value} is composite (divisible by {divisor})")]
    Composite { value: u64, divisor: u64 },
    #[error("extension degree must be at least 2, got {0}")]
    ExtensionDegree(usize),
    #[error("modulus is not a monic irreducible polynomial of degree >= 2: {0}")]
    BadModulus(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    NotInTower(String),
    #[error("group order {0} is too large to factor")]
    GroupOrderTooLarge(String),
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("{0} requires a polynomial of degree >= 1")]
    ConstantPolynomial(&'static str),
    #[error("singular curve: discriminant 4a^3 + 27b^2 = {0}")]
    SingularCurve(String),
    #[error("point is not on the curve")]
    OffCurve,
    #[error("field of cardinality {cardinality} exceeds the enumeration bound {bound}")]
    FieldTooLarge { cardinality: String, bound: u64 },
    #[error("invalid torsion prime {ell}: {reason}")]
    InvalidEll { ell: u64, reason: String },
    #[error("oracle scale exceeded: {0}")]
    OracleScale(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A computation contradicted a mathematical invariant. Seeing this means a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
