use alloc::string::String;

/// Errors raised by the approximation core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("frequency {0} is not valid for a nonperiodic basis (must be >= 0)")]
    InvalidFrequency(i64),

    #[error("coordinate {value} lies outside the basis domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("the exponential basis is complex valued and cannot be evaluated into a real field")]
    ComplexBasisOnRealField,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("bandwidth {0} is invalid (must be even and >= 2)")]
    InvalidBandwidth(usize),

    #[error("no bandwidth configured for terms of order {0}")]
    MissingBandwidth(usize),

    #[error("superposition threshold {threshold} is out of range 1..={dimension}")]
    ThresholdOutOfRange { threshold: usize, dimension: usize },

    #[error("variable index {index} is out of range for dimension {dimension}")]
    VariableOutOfRange { index: usize, dimension: usize },

    #[error("invalid term set: {0}")]
    InvalidTermSet(String),

    #[error("term {0} is not part of the active set")]
    UnknownTerm(String),

    #[error("the set of variables to keep is empty")]
    EmptyKeep,

    #[error("no threshold configured for terms of order {0}")]
    MissingThreshold(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite value at position {0}")]
    NonFinite(usize),

    #[error("no data")]
    EmptyData,

    #[error("the system has no rows or no columns")]
    EmptySystem,

    #[error("the model has zero variance; sensitivity indices are undefined")]
    DegenerateModel,

    #[error("the reference vector is identically zero; relative error is undefined")]
    UndefinedReference,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
