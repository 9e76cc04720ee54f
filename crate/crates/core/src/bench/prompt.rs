use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::BenchError;
use crate::span::LineRange;
use crate::syntax::MethodDecl;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PromptFormat {
    CodexInsert,
    Codet5Mask,
    CodegenPrefix,
    PlbartMask,
    IncoderMask,
    TunedComment,
}

impl PromptFormat {
    pub const ALL: [PromptFormat; 6] = [
        PromptFormat::CodexInsert,
        PromptFormat::Codet5Mask,
        PromptFormat::CodegenPrefix,
        PromptFormat::PlbartMask,
        PromptFormat::IncoderMask,
        PromptFormat::TunedComment,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PromptFormat::CodexInsert => "codex-insert",
            PromptFormat::Codet5Mask => "codet5-mask",
            PromptFormat::CodegenPrefix => "codegen-prefix",
            PromptFormat::PlbartMask => "plbart-mask",
            PromptFormat::IncoderMask => "incoder-mask",
            PromptFormat::TunedComment => "tuned-comment",
        }
    }

    /// The token standing in for the buggy lines, for mask formats.
    pub fn mask_token(self) -> Option<&'static str> {
        match self {
            PromptFormat::Codet5Mask => Some("<extra_id_0>"),
            PromptFormat::PlbartMask | PromptFormat::IncoderMask => Some("<mask>"),
            _ => None,
        }
    }
}

impl fmt::Display for PromptFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PromptFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PromptFormat::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown prompt format {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PromptSpec {
    pub format: PromptFormat,
    /// Line budget for the whole bundle.
    pub max_window: Option<usize>,
}

/// Model input. Formats with a single input leave `suffix` empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptBundle {
    pub format: PromptFormat,
    pub prefix: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suffix: Option<String>,
}

fn indent_of(line: &str) -> &str {
    &line[..line.len() - line.trim_start_matches([' ', '\t']).len()]
}

/// Drops the line terminator of the last line.
fn chomp(s: &str) -> &str {
    s.strip_suffix("\r\n").or_else(|| s.strip_suffix('\n')).unwrap_or(s)
}

/// How many context lines to keep before and after the buggy lines so the
/// bundle fits `budget`: split evenly, with any share one side cannot use
/// going to the other.
fn window(before: usize, after: usize, budget: usize) -> (usize, usize) {
    let half = budget / 2;
    let b = before.min(half.max(budget - after.min(budget - half)));
    let a = after.min(budget - b);
    (b, a)
}

/// Assembles the model input for `method` (found in `text`) with the
/// `buggy` lines marked as `spec.format` requires.
pub fn build_prompt(spec: PromptSpec, text: &str, method: &MethodDecl, buggy: LineRange) -> Result<PromptBundle, BenchError> {
    let span = method.span.lines();
    if buggy.is_empty() || !span.contains(buggy) {
        return Err(BenchError::SpanOutsideMethod { lines: buggy });
    }
    let all: Vec<&str> = text.split_inclusive('\n').collect();
    if all.len() < span.end as usize {
        return Err(BenchError::SpanOutsideMethod { lines: buggy });
    }
    let at = |n: u32| all[n as usize - 1];
    let mut before: Vec<&str> = (span.start..buggy.start).map(at).collect();
    let bug: Vec<&str> = (buggy.start..=buggy.end).map(at).collect();
    let mut after: Vec<&str> = (buggy.end + 1..=span.end).map(at).collect();
    let indent = indent_of(bug[0]);
    let bug_text: String = bug.concat();
    let newline = if bug_text.ends_with('\n') { "\n" } else { "" };

    let middle: Vec<String> = match spec.format {
        PromptFormat::CodexInsert => {
            let mut m = vec![format!("{indent}/* BUG:\n")];
            m.extend(bug.iter().map(|l| l.to_string()));
            if newline.is_empty() {
                m.last_mut().expect("buggy lines").push('\n');
            }
            m.push(format!("{indent}FIXED: */\n"));
            m
        }
        PromptFormat::Codet5Mask | PromptFormat::PlbartMask | PromptFormat::IncoderMask => {
            vec![format!("{}{newline}", spec.format.mask_token().expect("mask format"))]
        }
        PromptFormat::CodegenPrefix => Vec::new(),
        PromptFormat::TunedComment => bug
            .iter()
            .map(|l| {
                let end = &l[chomp(l).len()..];
                format!("{}// buggy line: {}{end}", indent_of(l), chomp(l).trim_start())
            })
            .collect(),
    };
    if spec.format == PromptFormat::CodegenPrefix {
        after.clear();
    }
    if let Some(max) = spec.max_window {
        let total = before.len() + middle.len() + after.len();
        if total > max {
            let (b, a) = window(before.len(), after.len(), max.saturating_sub(middle.len()));
            before.drain(..before.len() - b);
            after.truncate(a);
        }
    }
    let before: String = before.concat();
    let middle: String = middle.concat();
    let after: String = after.concat();
    Ok(match spec.format {
        PromptFormat::CodexInsert => PromptBundle {
            format: spec.format,
            prefix: before + &middle,
            suffix: Some(after),
        },
        PromptFormat::CodegenPrefix => PromptBundle {
            format: spec.format,
            prefix: before,
            suffix: None,
        },
        _ => PromptBundle {
            format: spec.format,
            prefix: before + &middle + &after,
            suffix: None,
        },
    })
}
