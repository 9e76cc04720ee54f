use std::io::ErrorKind;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde::{Deserialize, Serialize};

use super::{BenchError, BenchmarkManifest, ManifestEntry};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ValidationOutcome {
    Passed,
    Failed,
    Error { message: String },
}

/// Where the runner is asked to leave its log for `entry`: next to the
/// variant tree, named after it.
pub fn validation_report_path(entry: &ManifestEntry, manifest_dir: &Path) -> PathBuf {
    let root = manifest_dir.join(&entry.output_root);
    let mut name = root.file_name().unwrap_or_default().to_os_string();
    name.push(".validation.log");
    root.with_file_name(name)
}

/// Runs `template` on one variant tree. `{project}` and `{report}` in any
/// word of the template are replaced by the variant's root and log path.
/// Exit code 0 means the tests passed and 1 that they failed.
pub fn external_validate(entry: &ManifestEntry, manifest_dir: &Path, template: &str) -> Result<ValidationOutcome, BenchError> {
    if !template.contains("{project}") {
        return Err(BenchError::RunnerCommand(format!("{template:?} has no {{project}} placeholder")));
    }
    let words = shell_words::split(template).map_err(|e| BenchError::RunnerCommand(e.to_string()))?;
    let project = manifest_dir.join(&entry.output_root);
    let report = validation_report_path(entry, manifest_dir);
    let words: Vec<String> = words
        .iter()
        .map(|w| {
            w.replace("{project}", &project.to_string_lossy())
                .replace("{report}", &report.to_string_lossy())
        })
        .collect();
    let (program, args) = words
        .split_first()
        .ok_or_else(|| BenchError::RunnerCommand("empty command".into()))?;
    let status = Command::new(program)
        .args(args)
        .stdin(Stdio::null())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .status()
        .map_err(|e| match e.kind() {
            ErrorKind::NotFound => BenchError::RunnerNotFound(program.clone()),
            _ => BenchError::RunnerCommand(format!("{program}: {e}")),
        })?;
    match status.code() {
        Some(0) => Ok(ValidationOutcome::Passed),
        Some(1) => Ok(ValidationOutcome::Failed),
        code => Err(BenchError::NonZeroExit(code)),
    }
}

fn outcome(entry: &ManifestEntry, manifest_dir: &Path, template: &str) -> ValidationOutcome {
    if let Some(e) = &entry.error {
        return ValidationOutcome::Error {
            message: format!("not generated: {e}"),
        };
    }
    external_validate(entry, manifest_dir, template).unwrap_or_else(|e| ValidationOutcome::Error { message: e.to_string() })
}

/// Validates every entry and records the outcome in it. Runs one entry at
/// a time unless `jobs` is above one.
pub fn validate_manifest(manifest: &mut BenchmarkManifest, manifest_dir: &Path, template: &str, jobs: usize) {
    let jobs = jobs.max(1);
    if jobs == 1 {
        for e in &mut manifest.entries {
            e.validation = Some(outcome(e, manifest_dir, template));
        }
        return;
    }
    let chunk = manifest.entries.len().div_ceil(jobs).max(1);
    std::thread::scope(|s| {
        for part in manifest.entries.chunks_mut(chunk) {
            s.spawn(move || {
                for e in part {
                    e.validation = Some(outcome(e, manifest_dir, template));
                }
            });
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{VariantKind, VulnRecord};
    use crate::span::LineRange;

    fn entry() -> ManifestEntry {
        ManifestEntry {
            record: VulnRecord {
                id: "P-1".into(),
                project_root: "p".into(),
                buggy_file: "A.java".into(),
                buggy_lines: LineRange::new(1, 1),
                cwe: None,
                developer_patch: None,
            },
            variant: VariantKind::RenameOnly,
            output_root: "P-1/rename".into(),
            buggy_file: "A.java".into(),
            buggy_lines: LineRange::new(1, 1),
            dictionary: None,
            report: None,
            equivalence: None,
            error: None,
            warnings: Vec::new(),
            validation: None,
        }
    }

    #[test]
    fn exit_codes_map_to_outcomes() {
        let dir = Path::new("/tmp");
        assert_eq!(external_validate(&entry(), dir, "sh -c 'exit 0' {project}").unwrap(), ValidationOutcome::Passed);
        assert_eq!(external_validate(&entry(), dir, "sh -c 'exit 1' {project}").unwrap(), ValidationOutcome::Failed);
        assert!(matches!(
            external_validate(&entry(), dir, "sh -c 'exit 3' {project}"),
            Err(BenchError::NonZeroExit(Some(3)))
        ));
    }

    #[test]
    fn missing_runner() {
        assert!(matches!(
            external_validate(&entry(), Path::new("/tmp"), "vmorph-no-such-runner {project}"),
            Err(BenchError::RunnerNotFound(_))
        ));
    }

    #[test]
    fn placeholders_are_substituted() {
        let dir = tempfile::tempdir().unwrap();
        let e = entry();
        std::fs::create_dir_all(dir.path().join("P-1/rename")).unwrap();
        let cmd = "sh -c 'test -d \"$0\" && echo ok > \"$1\"' {project} {report}";
        assert_eq!(external_validate(&e, dir.path(), cmd).unwrap(), ValidationOutcome::Passed);
        let log = std::fs::read_to_string(dir.path().join("P-1/rename.validation.log")).unwrap();
        assert_eq!(log, "ok\n");
    }

    #[test]
    fn manifest_outcomes_recorded_in_order() {
        let mut m = BenchmarkManifest::default();
        for (i, code) in [0, 1, 0, 1].into_iter().enumerate() {
            let mut e = entry();
            e.record.id = format!("P-{code}-{i}");
            m.entries.push(e);
        }
        m.entries[2].error = Some("broken".into());
        let tmpl = "sh -c 'case \"$0\" in *) exit 0;; esac' {project}";
        validate_manifest(&mut m, Path::new("/tmp"), tmpl, 2);
        let got: Vec<_> = m.entries.iter().map(|e| e.validation.clone().unwrap()).collect();
        assert_eq!(got[0], ValidationOutcome::Passed);
        assert!(matches!(got[2], ValidationOutcome::Error { .. }));
    }
}
