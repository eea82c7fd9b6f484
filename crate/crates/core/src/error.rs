use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero has no factorization")]
    ZeroFactorization,
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("integer {0} exceeds the 2^128 factorization guard; shrink the sample box")]
    FactorGuard(String),
    #[error("factorization budget exhausted on {0}")]
    FactorBudget(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomials use different variables")]
    VariableMismatch,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("point has all coordinates zero")]
    ZeroPoint,
    #[error("point lies on Y")]
    PointOnSubscheme,
    #[error("Weil function undefined on support")]
    OnSupport,
    #[error("point on common zero locus")]
    CommonZero,
    #[error("polynomials are not coprime (gcd {0})")]
    NotCoprime(String),
    #[error("{0} is not an S-unit")]
    NotSUnit(String),
    #[error("ray not eventually polynomial")]
    NotPolynomial,
    #[error("empty input")]
    Empty,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("resource guard: {0}")]
    Resource(String),
}

impl Error {
    /// True for failures caused by size limits rather than bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            Error::FactorGuard(_) | Error::FactorBudget(_) | Error::Resource(_)
        )
    }
}
