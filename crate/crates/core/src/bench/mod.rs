//! Benchmark plumbing: vulnerability records, the three transformed variants
//! per record, manifests, model prompts, statistics and external validation.

mod generate;
mod prompt;
mod stats;
mod validate;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle::EquivalenceVerdict;
use crate::rename::RenameError;
use crate::span::LineRange;

pub use generate::{generate_variants, GenerateOptions};
pub use prompt::{build_prompt, PromptBundle, PromptFormat, PromptSpec};
pub use stats::margin_of_error;
pub use validate::{external_validate, validate_manifest, validation_report_path, ValidationOutcome};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Rename(#[from] RenameError),
    #[error("{id}: no method covers lines {lines}")]
    MethodNotFound { id: String, lines: LineRange },
    #[error("lines {lines} are not inside the method")]
    SpanOutsideMethod { lines: LineRange },
    #[error("at least two samples are needed")]
    InsufficientSamples,
    #[error("confidence must lie strictly between 0 and 1, got {0}")]
    InvalidConfidence(f64),
    #[error("runner not found: {0}")]
    RunnerNotFound(String),
    #[error("runner exited with {}", .0.map_or("a signal".to_string(), |c| format!("code {c}")))]
    NonZeroExit(Option<i32>),
    #[error("invalid runner command: {0}")]
    RunnerCommand(String),
}

impl BenchError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        BenchError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// One known vulnerability: where it lives and which lines the developer
/// patch touched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VulnRecord {
    pub id: String,
    pub project_root: PathBuf,
    /// Relative to `project_root`.
    pub buggy_file: PathBuf,
    pub buggy_lines: LineRange,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cwe: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub developer_patch: Option<PathBuf>,
}

/// Reads a JSON list of records. Relative project roots are resolved
/// against the directory holding `path`.
pub fn load_records(path: &Path) -> Result<Vec<VulnRecord>, BenchError> {
    let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    let mut records: Vec<VulnRecord> = serde_json::from_str(&text)?;
    let base = path.parent().unwrap_or(Path::new(""));
    for r in &mut records {
        if r.project_root.is_relative() {
            r.project_root = base.join(&r.project_root);
        }
    }
    Ok(records)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantKind {
    RenameOnly,
    StructureOnly,
    Both,
}

impl VariantKind {
    pub const ALL: [VariantKind; 3] = [VariantKind::RenameOnly, VariantKind::StructureOnly, VariantKind::Both];

    /// Directory name of the variant's output tree.
    pub fn dir_name(self) -> &'static str {
        match self {
            VariantKind::RenameOnly => "rename",
            VariantKind::StructureOnly => "structure",
            VariantKind::Both => "both",
        }
    }

    pub fn renames(self) -> bool {
        self != VariantKind::StructureOnly
    }

    pub fn restructures(self) -> bool {
        self != VariantKind::RenameOnly
    }
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.dir_name())
    }
}

impl FromStr for VariantKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VariantKind::ALL
            .into_iter()
            .find(|k| k.dir_name() == s)
            .ok_or_else(|| format!("unknown variant {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Equivalence {
    Checked(EquivalenceVerdict),
    /// The method is outside the interpreter's subset; run the project's
    /// own tests instead.
    ExternalPending { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub record: VulnRecord,
    pub variant: VariantKind,
    /// Paths below are relative to the manifest's directory.
    pub output_root: PathBuf,
    /// Buggy file inside `output_root`, after any class rename.
    pub buggy_file: PathBuf,
    /// Buggy lines in the transformed file.
    pub buggy_lines: LineRange,
    pub dictionary: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub equivalence: Option<Equivalence>,
    /// Why generation failed; the other paths are then absent or partial.
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationOutcome>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkManifest {
    pub source_benchmark: String,
    pub seed: u64,
    pub entries: Vec<ManifestEntry>,
}

impl BenchmarkManifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, BenchError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), BenchError> {
        std::fs::write(path, self.to_json()).map_err(|e| BenchError::io(path, e))
    }

    pub fn failures(&self) -> impl Iterator<Item = &ManifestEntry> {
        self.entries.iter().filter(|e| e.error.is_some())
    }
}
