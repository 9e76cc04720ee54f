//! Synonym-based renaming: lexicon, rename plans, the persisted dictionary,
//! applying renames to a project and mapping patches back.

mod apply;
mod dictionary;
mod lexicon;
mod plan;

use thiserror::Error;

pub use apply::{apply_rename, apply_rename_text, recover_patch, rename_sites, rename_text};
pub use dictionary::RenameDictionary;
pub use lexicon::{propose_synonyms, SynonymLexicon};
pub use plan::{build_rename_plan, PlanContext, ReviewDecision, ReviewHook};

pub use crate::ident::{assemble_identifier, Convention};

#[derive(Debug, Error)]
pub enum RenameError {
    #[error("lexicon line {line}: {message}")]
    Lexicon { line: usize, message: String },
    #[error("no free name for {0}")]
    ExhaustedCandidates(String),
    #[error("dictionary key {0} does not occur in the project")]
    StaleDictionary(String),
    #[error("invalid dictionary: {0}")]
    InvalidDictionary(String),
    #[error("dictionary json: {0}")]
    Json(#[from] serde_json::Error),
}
