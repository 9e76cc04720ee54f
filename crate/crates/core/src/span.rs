use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// A region of a source file. Lines and columns are 1-based; the end
/// position is exclusive (the column just past the last character).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub file: Arc<str>,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl Span {
    pub fn new(file: Arc<str>, start: (u32, u32), end: (u32, u32)) -> Self {
        Span {
            file,
            start_line: start.0,
            start_col: start.1,
            end_line: end.0,
            end_col: end.1,
        }
    }

    /// Placeholder span used for synthesized nodes and for span-insensitive comparison.
    pub fn dummy() -> Self {
        Span {
            file: Arc::from(""),
            start_line: 0,
            start_col: 0,
            end_line: 0,
            end_col: 0,
        }
    }

    pub fn start(&self) -> (u32, u32) {
        (self.start_line, self.start_col)
    }

    pub fn end(&self) -> (u32, u32) {
        (self.end_line, self.end_col)
    }

    /// Smallest span covering both `self` and `other`.
    pub fn to(&self, other: &Span) -> Span {
        Span {
            file: self.file.clone(),
            start_line: self.start().min(other.start()).0,
            start_col: self.start().min(other.start()).1,
            end_line: self.end().max(other.end()).0,
            end_col: self.end().max(other.end()).1,
        }
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.file == other.file && self.start() <= other.start() && other.end() <= self.end()
    }

    pub fn contains_lines(&self, lines: LineRange) -> bool {
        self.start_line <= lines.start && lines.end <= self.end_line
    }

    pub fn lines(&self) -> LineRange {
        LineRange {
            start: self.start_line,
            end: self.end_line,
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}-{}:{}",
            self.file, self.start_line, self.start_col, self.end_line, self.end_col
        )
    }
}

/// Inclusive, 1-based line range (`A:B` on the command line).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LineRange {
    pub start: u32,
    pub end: u32,
}

impl LineRange {
    pub fn new(start: u32, end: u32) -> Self {
        LineRange { start, end }
    }

    pub fn len(&self) -> u32 {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }

    pub fn overlaps(&self, other: LineRange) -> bool {
        self.start <= other.end && other.start <= self.end
    }

    pub fn contains(&self, other: LineRange) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl fmt::Display for LineRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

impl std::str::FromStr for LineRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| format!("expected A:B, got {s:?}"))?;
        let start: u32 = a.trim().parse().map_err(|_| format!("bad line number {a:?}"))?;
        let end: u32 = b.trim().parse().map_err(|_| format!("bad line number {b:?}"))?;
        if start == 0 || end < start {
            return Err(format!("invalid line range {s:?}"));
        }
        Ok(LineRange { start, end })
    }
}

/// Converts 1-based line/column positions (columns count characters) into
/// byte offsets of one text.
pub struct LineIndex<'a> {
    text: &'a str,
    starts: Vec<usize>,
}

impl<'a> LineIndex<'a> {
    pub fn new(text: &'a str) -> Self {
        let starts = std::iter::once(0)
            .chain(text.match_indices('\n').map(|(i, _)| i + 1))
            .collect();
        LineIndex { text, starts }
    }

    pub fn offset(&self, line: u32, col: u32) -> Option<usize> {
        let start = *self.starts.get(line.checked_sub(1)? as usize)?;
        let rest = &self.text[start..];
        let skip = col.checked_sub(1)? as usize;
        match rest.char_indices().nth(skip) {
            Some((i, _)) => Some(start + i),
            None if rest.chars().count() == skip => Some(self.text.len()),
            None => None,
        }
    }

    pub fn byte_range(&self, span: &Span) -> Option<std::ops::Range<usize>> {
        Some(self.offset(span.start_line, span.start_col)?..self.offset(span.end_line, span.end_col)?)
    }
}
