use alloc::string::String;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands are irrational in different quadratic fields")]
    MixedRadicands,
    #[error("division by zero")]
    DivisionByZero,
    #[error("integer square root of a negative number")]
    NegativeInput,
    #[error("no root of the equation lies in the requested range")]
    NoRootInRange,
    #[error("both roots of the equation lie in the requested range")]
    AmbiguousRoot,
    #[error("equation has all coefficients zero")]
    DegenerateEquation,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{0} is outside the domain [alpha, alpha + 1]")]
    OutOfDomain(String),
    #[error("periodic tail has no fixed point in (0, N)")]
    NoValidTail,
    #[error("digit words agree on every available position")]
    Undecidable,
    #[error("Möbius map has a pole at the given point")]
    PoleInput,
    #[error("expected a quadratic irrational, got a rational number")]
    NotIrrational,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("prerequisite not met: {0}")]
    PrerequisiteNotMet(String),
    #[error("interval is empty")]
    EmptyInterval,
    #[error("no stable matching found within the exponent budget")]
    BadRational,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("mismatch in {component}: expected {expected}, found {found}")]
    MismatchDetected {
        component: String,
        expected: String,
        found: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
