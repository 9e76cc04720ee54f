//! A small deterministic interpreter for the oracle subset and a seeded
//! differential runner that compares two versions of a method.

mod equiv;
mod interp;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::span::Span;

pub use equiv::{check_equivalence, check_equivalence_with, generate_args, Counterexample, EquivalenceVerdict, Verdict};
pub use interp::{check_supported, evaluate, evaluate_with, Context};

/// Statement budget used when none is given.
pub const DEFAULT_FUEL: u64 = 10_000;

/// Helper calls nested deeper than this end the run as out of fuel.
pub const MAX_CALL_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum Value {
    Int(i32),
    Bool(bool),
    Str(String),
    Null,
}

impl fmt::Display for Value {
    /// Java string conversion.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Bool(v) => write!(f, "{v}"),
            Value::Str(s) => f.write_str(s),
            Value::Null => f.write_str("null"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExceptionKind {
    ArithmeticException,
    NullPointerException,
    StringIndexOutOfBoundsException,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// `None` for a `void` return.
    Returned(Option<Value>),
    Threw(ExceptionKind),
    OutOfFuel,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{span}: outside the evaluation subset: {what}")]
    UnsupportedForEvaluation { span: Span, what: String },
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("parameter lists differ")]
    SignatureMismatch,
}

impl OracleError {
    pub(crate) fn unsupported(span: &Span, what: impl Into<String>) -> Self {
        OracleError::UnsupportedForEvaluation {
            span: span.clone(),
            what: what.into(),
        }
    }
}
