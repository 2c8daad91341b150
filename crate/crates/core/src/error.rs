use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("division by zero in the coefficient field")]
    DivisionByZero,
    #[error("division by the zero polynomial")]
    ZeroPolynomialDivisor,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("square root needs even degree, got {0}")]
    OddDegreeRadicand(usize),
    #[error("leading coefficient is not a square in the field")]
    NonSquareLeadingCoeff,
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("cannot invert a series that is zero to its precision")]
    ZeroSeries,
    #[error("insufficient precision: need coefficients down to exponent {needed}, known down to {known}")]
    InsufficientPrecision { needed: i64, known: i64 },
    #[error("series precision exhausted after {steps} expansion steps")]
    PrecisionExhausted { steps: usize },
    #[error("continued fraction expansion has no quotients")]
    EmptyExpansion,
    #[error("substitution polynomial must be nonconstant")]
    ConstantSubstitution,
    #[error("pair is not a Pell solution: x^2 - g*y^2 is not a nonzero constant")]
    NotASolution,
    #[error("odd-degree g is outside the scope of the section theorem")]
    OddDegreeOutOfScope,
    #[error("degenerate fiber: g(b) = 0")]
    DegenerateFiber,
    #[error("operation requires a prime field")]
    ExpectedPrimeField,
    #[error("search space too large: {0} candidates exceed the 10^7 guard")]
    SearchSpaceTooLarge(u128),
    #[error("polynomial is inseparable: it is a p-th power of {witness}")]
    Inseparable { witness: String },
    #[error("input is not of p-th power shape")]
    NotPthPowerShape,
    #[error(
        "fundamental index inconsistency: degree ratio {candidate} is not realized by any power"
    )]
    IndexInconsistency { candidate: i64 },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
