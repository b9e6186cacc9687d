use thiserror::Error;

use crate::wronskian::LinearSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("modulus has degree {got}, expected a monic polynomial of degree {expected}")]
    WrongDegree { expected: u32, got: usize },
    #[error("field order {0} exceeds the supported maximum 2^20")]
    FieldTooLarge(u64),
    #[error("element code {code} is out of range for a field of order {q}")]
    InvalidElement { code: u64, q: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("r = {r} does not define a subfield of F_(p^{h})")]
    InvalidSubfield { r: u32, h: u32 },
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("x is not a separating variable (p divides {0})")]
    InseparableVariable(u32),
    #[error("Hasse derivative of order {0} is not supported")]
    OrderTooHigh(u32),
    #[error("characteristic {p} divides the exponent {exponent}")]
    CharacteristicDividesExponent { p: u32, exponent: u32 },
    #[error("degenerate coefficients: {0}")]
    DegenerateCoefficient(&'static str),
    #[error("exponents must satisfy min(n, m) > 2")]
    ExponentTooSmall,
    #[error("characteristic {p} is not supported for {system:?}")]
    UnsupportedCharacteristic { p: u32, system: LinearSystem },
    #[error("case {0} does not apply to this curve")]
    CaseMismatch(String),
    #[error("unknown case label {0}")]
    UnknownCase(String),
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("point lies on a coordinate axis")]
    AxisPoint,
    #[error("smooth model count unsupported: two-term curve with m < n and m not dividing n")]
    UnsupportedInfinity,
    #[error("no closed-form count applies to this curve")]
    NoFormula,
    #[error("the two square-field readings disagree and no oracle count is available")]
    AmbiguousConvention,
    #[error("malformed order sequence: {0}")]
    MalformedOrderSequence(&'static str),
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("wrong number of operands for {op}: {got}")]
    Arity { op: &'static str, got: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("scan budget exceeded: {requested} curves requested, budget {budget}")]
    BudgetExceeded { requested: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
