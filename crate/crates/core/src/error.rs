use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input where a nonzero element is required: {0}")]
    Zero(&'static str),
    #[error("element is not integral: {0}")]
    NotIntegral(String),
    #[error("factorization exceeded the trial-division bound {bound}: unfactored cofactor {cofactor}")]
    FactorizationLimit { bound: u64, cofactor: String },
    #[error("mixed fields: {0}")]
    FieldMismatch(String),
    #[error("element is not a unit at the prime: {0}")]
    NotUnit(String),
    #[error("unsupported prime: {0}")]
    UnsupportedPrime(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("point is not on the curve: {0}")]
    NotOnCurve(String),
    #[error("cube root not in field: {0}")]
    CubeRootNotInField(String),
    #[error("not a rational cube: {0}")]
    NotRationalCube(String),
    #[error("not diagonalizable over the base field: discriminant {0} is not a square")]
    NotDiagonalizable(String),
    #[error("twisted condition fails: {0}")]
    NotTwisted(String),
    #[error("singular change of variables")]
    Singular,
    #[error("zero divisor: {0}")]
    ZeroDivisor(String),
    #[error("no witness point for generator {0}")]
    MissingWitness(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
