//! The six structural rewrite rules and the driver that applies all of them
//! to one method.

mod calls;
mod conditional;
mod driver;
mod effects;
mod env;
mod ifflip;
mod loops;
mod reorder;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::span::Span;

pub use calls::{argument_pass, chain_functions, ArgDirection, ChainDirection};
pub use conditional::{convert_conditional, if_chain_to_switch, switch_to_if_chain, ternary_to_if};
pub use driver::{apply_all, apply_all_with, apply_rule};
pub use effects::{stmt_effects, Effects, PurityIndex};
pub use env::MethodEnv;
pub use ifflip::{flip_if, negate};
pub use loops::{convert_loop, fold_for, for_to_while, while_to_for};
pub use reorder::reorder_statements;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TransformRule {
    IfFlip,
    LoopConvert,
    CondConvert,
    FunctionChain,
    ArgumentPass,
    CodeOrder,
}

impl TransformRule {
    pub const ALL: [TransformRule; 6] = [
        TransformRule::IfFlip,
        TransformRule::LoopConvert,
        TransformRule::CondConvert,
        TransformRule::FunctionChain,
        TransformRule::ArgumentPass,
        TransformRule::CodeOrder,
    ];
}

impl fmt::Display for TransformRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("{rule} not applicable: {reason}")]
    NotApplicable { rule: TransformRule, reason: &'static str },
}

impl TransformError {
    pub(crate) fn na(rule: TransformRule, reason: &'static str) -> Self {
        TransformError::NotApplicable { rule, reason }
    }

    pub fn reason(&self) -> &'static str {
        match self {
            TransformError::NotApplicable { reason, .. } => reason,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppliedSite {
    pub rule: TransformRule,
    pub span: Span,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedSite {
    pub rule: TransformRule,
    pub span: Span,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformReport {
    pub applied: Vec<AppliedSite>,
    pub skipped: Vec<SkippedSite>,
}

impl TransformReport {
    pub fn is_empty(&self) -> bool {
        self.applied.is_empty() && self.skipped.is_empty()
    }

    pub fn applied_rules(&self) -> impl Iterator<Item = TransformRule> + '_ {
        self.applied.iter().map(|a| a.rule)
    }

    pub(crate) fn apply(&mut self, rule: TransformRule, span: &Span, note: &str) {
        self.applied.push(AppliedSite {
            rule,
            span: span.clone(),
            note: note.to_string(),
        });
    }

    pub(crate) fn skip(&mut self, rule: TransformRule, span: &Span, reason: &str) {
        self.skipped.push(SkippedSite {
            rule,
            span: span.clone(),
            reason: reason.to_string(),
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
