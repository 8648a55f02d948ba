use thiserror::Error;

use crate::identity::CheckReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("unit axiom fails at basis element {label}")]
    UnitAxiom { label: String },

    #[error("parity inconsistency: {0}")]
    Parity(String),

    #[error("fraction with zero denominator")]
    InvalidFraction,

    #[error("identity `{id}` needs slot `{slot}`")]
    MissingSlot { id: String, slot: String },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("unknown catalog algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("precondition failed: {what}")]
    Precondition {
        what: String,
        report: Option<Box<CheckReport>>,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("candidate is not in the solution space")]
    NotInSpace,

    #[error("linear map is singular")]
    Singular,

    #[error("system has {unknowns} unknowns, capacity is {limit}")]
    Capacity { unknowns: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn precondition(what: impl Into<String>) -> Self {
        Error::Precondition {
            what: what.into(),
            report: None,
        }
    }

    pub(crate) fn failed_check(what: impl Into<String>, report: CheckReport) -> Self {
        Error::Precondition {
            what: what.into(),
            report: Some(Box::new(report)),
        }
    }
}
