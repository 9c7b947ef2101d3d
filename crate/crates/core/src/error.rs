use thiserror::Error;

use crate::recurrence::HypothesisReport;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation is undefined on the zero polynomial")]
    ZeroInput,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
    #[error("zero element has no divisor")]
    ZeroElement,
    #[error("element does not split over the place basis")]
    NotExpressible,
    #[error("all elements are constant; the place set would be empty")]
    AllConstant,
    #[error("elements are multiplicatively dependent")]
    DependentInputs,
    #[error("constant input where a non-constant element is required")]
    ConstantInput,
    #[error("no pair of places with nonzero valuations separates the inputs")]
    NoSharedSupportCase,
    #[error("no place at which the first root dominates")]
    NotDominant,
    #[error("no place at which some root dominates")]
    NotFound,
    #[error("recurrence coefficients and roots must be polynomials")]
    NonPolynomialInput,
    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),
    #[error("right hand side f must be nonzero")]
    ZeroF,
    #[error("base polynomial must be non-constant")]
    ConstantBase,
    #[error("hypotheses violated: {}", .0.violations.join("; "))]
    HypothesisViolation(Box<HypothesisReport>),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
