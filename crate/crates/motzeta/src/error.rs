//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// `vdim` of the zero class: the filtration level is undefined.
    #[error("vdim of zero: undefined filtration level")]
    ZeroVdim,

    /// Evaluation at 0 of a Laurent polynomial with negative exponents.
    #[error("pole at zero: negative exponent {0} present")]
    PoleAtZero(i64),

    /// Series inversion needs an invertible constant term.
    #[error("non-invertible constant term: {0}")]
    NonInvertibleConstantTerm(String),

    /// `log` needs constant term 1, `exp` needs constant term 0.
    #[error("constant term must be {expected}, found {found}")]
    BadConstantTerm { expected: String, found: String },

    #[error("parse error: {0}")]
    Parse(String),

    /// Structural defect in a fan (dependent rays, bad indices, ...).
    #[error("malformed fan: {0}")]
    MalformedFan(String),

    #[error("fan is not complete")]
    NotComplete,

    #[error("fan is not smooth")]
    NotSmooth,

    /// Exact alpha* is only available for Picard rank <= 2.
    #[error("Picard rank {0} > 2: exact alpha* unavailable, pass approximate flag")]
    RankTooHigh(usize),

    /// A negative cell multiplicity was passed where an honest variety class
    /// was expected.
    #[error("negative cell multiplicity {mult} at L^{exp}; caller must assert virtual input")]
    NegativeMultiplicity { exp: u32, mult: i64 },

    /// `phi_explicit` needs the symmetric power classes up to n.
    #[error("insufficient symmetric power classes: need {need}, got {got}")]
    InsufficientClasses { need: usize, got: usize },

    /// The finite-field enumeration would exceed the tuple budget.
    #[error("enumeration budget exceeded: {required} tuples needed, budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    /// A Moebius table entry came out non-integral.
    #[error("integrality failure at degree {at}: {value}")]
    IntegralityFailure { at: String, value: String },

    /// Two independent computation paths disagreed.
    #[error("path disagreement at {at}: {lhs} != {rhs}")]
    PathDisagreement { at: String, lhs: String, rhs: String },

    /// A structural identity required by the theory failed.
    #[error("identity failure: {0}")]
    IdentityFailure(String),

    /// A series that must be a polynomial has a non-vanishing tail.
    #[error("non-vanishing coefficient at degree {degree}: {value}")]
    NonVanishingTail { degree: usize, value: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
