use std::fmt;

use thiserror::Error;

use crate::span::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub span: Span,
    pub message: String,
}

impl SyntaxError {
    pub fn new(span: Span, message: impl Into<String>) -> Self {
        SyntaxError {
            span,
            message: message.into(),
        }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {0}")]
    Syntax(SyntaxError),
    /// Valid Java that falls outside the supported subset.
    #[error("unsupported construct `{construct}` at {span}")]
    UnsupportedConstruct { span: Span, construct: &'static str },
}

impl ParseError {
    pub fn span(&self) -> &Span {
        match self {
            ParseError::Syntax(e) => &e.span,
            ParseError::UnsupportedConstruct { span, .. } => span,
        }
    }
}

impl From<SyntaxError> for ParseError {
    fn from(e: SyntaxError) -> Self {
        ParseError::Syntax(e)
    }
}
