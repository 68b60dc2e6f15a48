use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("order of zero polynomial undefined")]
    ZeroPolynomialOrder,
    #[error("negative exponent {0} is not a polynomial operation")]
    NegativeExponent(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor must involve only q")]
    DivisorNotUnivariate,
    #[error("cyclotomic index must be positive")]
    CyclotomicIndex,
    #[error("negative indices undefined for λ≠0 (index {0})")]
    NegativeIndexNonzeroLambda(i64),
    #[error("negative index {0} requires a rational α ≠ 0")]
    NegativeIndexSymbolicAlpha(i64),
    #[error("denominator vanishes: λ = q^{0}")]
    DenominatorVanishes(u32),
    #[error("divisibility not guaranteed below (3m−1)l = {threshold} (n = {n})")]
    BelowThreshold { n: i64, threshold: i64 },
    #[error("zero determinant")]
    ZeroDeterminant,
    #[error("degree {0} excluded by the positivity condition A+C−d(C−B) > 0")]
    DegreeExcluded(u32),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inexact division in fraction-free elimination: {0}")]
    InexactDivision(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}
