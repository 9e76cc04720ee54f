use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use vmorph_core::bench::{
    build_prompt, generate_variants, load_records, margin_of_error, validate_manifest, BenchmarkManifest, GenerateOptions,
    PromptFormat, PromptSpec, ValidationOutcome, VariantKind,
};
use vmorph_core::ident::StdlibIndex;
use vmorph_core::rename::{recover_patch, RenameDictionary, SynonymLexicon};
use vmorph_core::syntax::parse;
use vmorph_core::LineRange;

#[derive(Parser)]
#[command(name = "vmorph", version, about = "Semantics-preserving transformations of Java vulnerability benchmarks")]
struct Cli {
    /// Stdlib name list used instead of the bundled one.
    #[arg(long, env = "VMORPH_STDLIB_INDEX", global = true)]
    stdlib_index: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Rename,
    Structure,
    Both,
    All,
}

impl Mode {
    fn kinds(self) -> Vec<VariantKind> {
        match self {
            Mode::Rename => vec![VariantKind::RenameOnly],
            Mode::Structure => vec![VariantKind::StructureOnly],
            Mode::Both => vec![VariantKind::Both],
            Mode::All => VariantKind::ALL.to_vec(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write transformed variants of every record and a manifest.
    Transform {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Benchmark directory.
        #[arg(long)]
        project: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Synonym lexicon (TSV); the bundled one by default.
        #[arg(long)]
        lexicon: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        manifest: PathBuf,
        /// Vulnerability records; defaults to records.json in the project.
        #[arg(long)]
        records: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the model input for the buggy lines of a method as JSON.
    Prompt {
        #[arg(long)]
        format: PromptFormat,
        #[arg(long)]
        file: PathBuf,
        /// Buggy lines, as A:B.
        #[arg(long)]
        lines: LineRange,
        #[arg(long)]
        max_window: Option<usize>,
    },
    /// Map a patch written against renamed code back to the original names.
    Recover {
        #[arg(long)]
        dict: PathBuf,
        #[arg(long)]
        patch: PathBuf,
    },
    /// Run an external test command on every variant and record the outcome.
    Validate {
        #[arg(long)]
        manifest: PathBuf,
        /// Command template; {project} and {report} are substituted.
        #[arg(long)]
        runner: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    Stats {
        #[command(subcommand)]
        what: Stats,
    },
}

#[derive(Subcommand)]
enum Stats {
    /// Margin of error of the samples on stdin, one or more per line.
    Moe {
        #[arg(long, default_value_t = 0.95)]
        confidence: f64,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn stdlib(path: Option<&Path>) -> Result<StdlibIndex> {
    match path {
        Some(p) => StdlibIndex::load(p).with_context(|| format!("reading {}", p.display())),
        None => Ok(StdlibIndex::bundled()),
    }
}

fn dir_of(path: &Path) -> PathBuf {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Transform {
            mode,
            project,
            out,
            lexicon,
            seed,
            manifest,
            records,
            trials,
            jobs,
        } => {
            let records_path = records.unwrap_or_else(|| project.join("records.json"));
            let records = load_records(&records_path)?;
            let lexicon = match lexicon {
                Some(p) => SynonymLexicon::load(&p)?,
                None => SynonymLexicon::bundled(),
            };
            let mut opts = GenerateOptions {
                kinds: mode.kinds(),
                seed,
                trials,
                stdlib: stdlib(cli.stdlib_index.as_deref())?,
                source_benchmark: project
                    .file_name()
                    .map_or_else(|| project.display().to_string(), |n| n.to_string_lossy().into_owned()),
                manifest_dir: Some(dir_of(&manifest)),
                ..GenerateOptions::default()
            };
            if let Some(j) = jobs {
                opts.jobs = j;
            }
            let m = generate_variants(&records, &lexicon, &out, &opts)?;
            m.save(&manifest)?;
            let failed = m.failures().count();
            for e in m.failures() {
                eprintln!("{}", e.error.as_deref().unwrap_or_default());
            }
            eprintln!("{} entries, {failed} failed", m.entries.len());
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Prompt {
            format,
            file,
            lines,
            max_window,
        } => {
            let text = read(&file)?;
            let source = parse(&text, &file.to_string_lossy()).map_err(|e| anyhow::anyhow!("{}: {e}", file.display()))?;
            let Some((_, method)) = source.methods().find(|(_, m)| m.span.contains_lines(lines)) else {
                bail!("no method of {} covers lines {lines}", file.display());
            };
            let bundle = build_prompt(PromptSpec { format, max_window }, &text, method, lines)?;
            println!("{}", serde_json::to_string_pretty(&bundle)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Recover { dict, patch } => {
            let dict = RenameDictionary::from_json(&read(&dict)?)?;
            print!("{}", recover_patch(&read(&patch)?, &dict));
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { manifest, runner, jobs } => {
            let mut m = BenchmarkManifest::load(&manifest)?;
            validate_manifest(&mut m, &dir_of(&manifest), &runner, jobs);
            m.save(&manifest)?;
            let mut code = ExitCode::SUCCESS;
            for e in &m.entries {
                let status = match e.validation.as_ref() {
                    Some(ValidationOutcome::Passed) => "passed".to_string(),
                    Some(ValidationOutcome::Failed) => "failed".to_string(),
                    Some(ValidationOutcome::Error { message }) => {
                        code = ExitCode::from(2);
                        format!("error: {message}")
                    }
                    None => "skipped".to_string(),
                };
                println!("{} {} {status}", e.record.id, e.variant);
            }
            Ok(code)
        }
        Command::Stats {
            what: Stats::Moe { confidence },
        } => {
            let mut input = String::new();
            std::io::stdin().read_to_string(&mut input)?;
            let samples = input
                .split_whitespace()
                .map(|w| w.parse::<f64>().with_context(|| format!("not a number: {w:?}")))
                .collect::<Result<Vec<_>>>()?;
            println!("{}", margin_of_error(&samples, confidence)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("vmorph: {e:#}");
            ExitCode::FAILURE
        }
    }
}
