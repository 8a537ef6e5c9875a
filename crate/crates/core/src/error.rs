use thiserror::Error;

use crate::space::SpaceObject;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain mismatch in {op}: expected {expected}, found {found}")]
    DomainMismatch {
        op: &'static str,
        expected: SpaceObject,
        found: SpaceObject,
    },
    #[error("index {index} out of range for {len} parts")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("law violated: {law} (deviation {deviation:.3e})")]
    LawViolation { law: String, deviation: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
