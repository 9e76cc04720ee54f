//! Identifier collection, origin classification and word tokenization.

mod collect;
mod stdlib;
mod tokenize;

use serde::{Deserialize, Serialize};

use crate::span::Span;

pub use collect::{classify_origin, collect_identifiers, known_return_type, ProjectSymbols};
pub use stdlib::{StdlibIndex, STDLIB_INDEX_ENV};
pub use tokenize::{
    assemble_identifier, convention, title_case, tokenize_identifier, Convention, IdentifierShape,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentKind {
    Variable,
    Function,
    Class,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Project,
    External,
}

/// Every site of one symbol. Locals, parameters and fields get one entry per
/// declaration; methods and classes are grouped by name across the project.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentifierEntry {
    pub name: String,
    pub kind: IdentKind,
    pub decl_sites: Vec<Span>,
    pub use_sites: Vec<Span>,
    pub origin: Origin,
}

impl IdentifierEntry {
    pub fn sites(&self) -> impl Iterator<Item = &Span> {
        self.decl_sites.iter().chain(&self.use_sites)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    /// A name with no declaration in the project that is neither a known
    /// library name nor imported. It is still treated as external.
    UnresolvedIdentifier { name: String, span: Span },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentifierTable {
    pub entries: Vec<IdentifierEntry>,
    pub diagnostics: Vec<Diagnostic>,
}

impl IdentifierTable {
    pub fn iter(&self) -> impl Iterator<Item = &IdentifierEntry> {
        self.entries.iter()
    }

    pub fn project_entries(&self) -> impl Iterator<Item = &IdentifierEntry> {
        self.entries.iter().filter(|e| e.origin == Origin::Project)
    }

    pub fn find(&self, name: &str, kind: IdentKind) -> Option<&IdentifierEntry> {
        self.entries.iter().find(|e| e.name == name && e.kind == kind)
    }

    pub fn entries_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a IdentifierEntry> {
        self.entries.iter().filter(move |e| e.name == name)
    }

    /// The entry owning a site, if any.
    pub fn entry_at(&self, span: &Span) -> Option<&IdentifierEntry> {
        self.entries.iter().find(|e| e.sites().any(|s| s == span))
    }
}
