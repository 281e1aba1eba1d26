use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by series construction, the class constructors and the checkers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series order must be at least 1, got {0}")]
    OrderTooSmall(usize),
    #[error("series of order {order} needs {expected} coefficients, got {found}")]
    CoefficientCount {
        order: usize,
        expected: usize,
        found: usize,
    },
    #[error("coefficient {index} is not finite: {value}")]
    NonFinite { index: usize, value: Complex64 },
    #[error("constant term must be {expected}, got {found}")]
    ConstantTerm { expected: f64, found: Complex64 },
    #[error("series is not normalized (need c_0 = 0, c_1 = 1), got c_0 = {c0}, c_1 = {c1}")]
    NotNormalized { c0: Complex64, c1: Complex64 },
    #[error("value {value} is not unimodular (|value| = {modulus})")]
    NotUnimodular { value: Complex64, modulus: f64 },
    #[error("invalid Herglotz measure: {0}")]
    InvalidMeasure(String),
    #[error("index {index} outside the admissible range {min}..={max}")]
    IndexOutOfRange { index: usize, min: usize, max: usize },
    #[error("indices must differ (k = m = {0})")]
    EqualIndices(usize),
    #[error("series is not odd: coefficient {index} has modulus {modulus}")]
    NotOdd { index: usize, modulus: f64 },
    #[error("series order {found} is too low, at least {required} is needed")]
    OrderTooLow { required: usize, found: usize },
    #[error("denominator vanishes at z = {0}")]
    ZeroDenominator(Complex64),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
