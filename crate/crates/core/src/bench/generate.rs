use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use walkdir::WalkDir;

use super::{BenchError, BenchmarkManifest, Equivalence, ManifestEntry, VariantKind, VulnRecord};
use crate::ident::{collect_identifiers, ProjectSymbols, StdlibIndex};
use crate::oracle::{check_equivalence_with, Context, DEFAULT_FUEL};
use crate::rename::{apply_rename_text, build_rename_plan, PlanContext, RenameDictionary, SynonymLexicon};
use crate::span::LineRange;
use crate::syntax::printer::{print_method_with_origins, StmtOrigin};
use crate::syntax::{parse, ClassDecl, MethodDecl, SourceFile};
use crate::transform::{apply_all_with, MethodEnv, TransformReport};

#[derive(Clone, Debug)]
pub struct GenerateOptions {
    pub kinds: Vec<VariantKind>,
    /// Seeds the equivalence trials.
    pub seed: u64,
    pub trials: u32,
    pub fuel: u64,
    pub stdlib: StdlibIndex,
    pub source_benchmark: String,
    /// Where the manifest will live; its paths are relative to this
    /// directory. Defaults to the output directory.
    pub manifest_dir: Option<PathBuf>,
    /// Records processed concurrently.
    pub jobs: usize,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            kinds: VariantKind::ALL.to_vec(),
            seed: 0,
            trials: 100,
            fuel: DEFAULT_FUEL,
            stdlib: StdlibIndex::bundled(),
            source_benchmark: String::new(),
            manifest_dir: None,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Clone, Debug)]
struct JavaFile {
    rel: PathBuf,
    text: String,
}

/// A project snapshot: Java sources in memory, other files by path.
#[derive(Clone, Debug)]
struct Tree {
    java: Vec<JavaFile>,
    other: Vec<PathBuf>,
    buggy: usize,
    lines: LineRange,
    warnings: Vec<String>,
}

/// Forward-slash form of a relative path, used as the file name in spans.
fn key(rel: &Path) -> String {
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

fn load_tree(rec: &VulnRecord) -> Result<Tree, BenchError> {
    let root = &rec.project_root;
    let mut java = Vec::new();
    let mut other = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = entry.map_err(|e| BenchError::io(root, e.into()))?;
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = entry.path().strip_prefix(root).expect("walk stays under root").to_path_buf();
        if rel.extension().is_some_and(|e| e == "java") {
            let text = fs::read_to_string(entry.path()).map_err(|e| BenchError::io(entry.path(), e))?;
            java.push(JavaFile { rel, text });
        } else {
            other.push(rel);
        }
    }
    let want = key(&rec.buggy_file);
    let buggy = java
        .iter()
        .position(|f| key(&f.rel) == want)
        .ok_or_else(|| BenchError::Parse(format!("buggy file {want} not found")))?;
    Ok(Tree {
        java,
        other,
        buggy,
        lines: rec.buggy_lines,
        warnings: Vec::new(),
    })
}

fn parse_all(tree: &Tree) -> Vec<Option<SourceFile>> {
    tree.java.iter().map(|f| parse(&f.text, &key(&f.rel)).ok()).collect()
}

fn buggy_file(tree: &Tree, parsed: &[Option<SourceFile>]) -> Result<SourceFile, BenchError> {
    parsed[tree.buggy].clone().ok_or_else(|| {
        let f = &tree.java[tree.buggy];
        match parse(&f.text, &key(&f.rel)) {
            Err(e) => BenchError::Parse(e.to_string()),
            Ok(_) => unreachable!("parse is deterministic"),
        }
    })
}

fn covering(file: &SourceFile, lines: LineRange) -> Result<(&ClassDecl, &MethodDecl), BenchError> {
    file.methods()
        .find(|(_, m)| m.span.contains_lines(lines))
        .ok_or_else(|| BenchError::MethodNotFound {
            id: file.path.to_string(),
            lines,
        })
}

fn rename_tree(tree: &Tree, lexicon: &SynonymLexicon, stdlib: &StdlibIndex) -> Result<(Tree, RenameDictionary), BenchError> {
    let parsed = parse_all(tree);
    let target = buggy_file(tree, &parsed)?;
    let (_, method) = covering(&target, tree.lines)?;
    let idx: Vec<usize> = (0..parsed.len()).filter(|i| parsed[*i].is_some()).collect();
    let files: Vec<SourceFile> = parsed.into_iter().flatten().collect();
    let focus = collect_identifiers(&files, Some(&method.span), stdlib);
    let ctx = PlanContext::new(&collect_identifiers(&files, None, stdlib), stdlib);
    let dict = build_rename_plan(&focus, lexicon, &ctx, None)?;
    let texts: Vec<&str> = idx.iter().map(|&i| tree.java[i].text.as_str()).collect();
    let renamed = apply_rename_text(&files, &texts, &dict, stdlib)?;
    let mut out = tree.clone();
    for (&i, text) in idx.iter().zip(renamed) {
        let f = &mut out.java[i];
        f.text = text;
        if let Some(name) = f.rel.file_name().and_then(|n| n.to_str()) {
            f.rel = f.rel.with_file_name(dict.renamed_file_name(name));
        }
    }
    for (i, f) in tree.java.iter().enumerate() {
        if !idx.contains(&i) {
            out.warnings.push(format!("{}: copied unchanged, does not parse", key(&f.rel)));
        }
    }
    Ok((out, dict))
}

/// Lines of the reprinted method that stand for the original `buggy`
/// lines: statements inside the range map to all their printed lines, a
/// compound statement whose header is buggy maps to its first line.
fn map_lines(origins: &[StmtOrigin], buggy: LineRange) -> Option<LineRange> {
    let mut hit: Vec<LineRange> = Vec::new();
    for o in origins {
        let s = o.span.lines();
        if buggy.contains(s) {
            hit.push(o.lines);
        } else if buggy.contains(LineRange::new(s.start, s.start)) {
            hit.push(LineRange::new(o.lines.start, o.lines.start));
        }
    }
    if hit.is_empty() {
        return origins
            .iter()
            .filter(|o| o.span.lines().overlaps(buggy))
            .min_by_key(|o| o.span.lines().len())
            .map(|o| o.lines);
    }
    let start = hit.iter().map(|r| r.start).min()?;
    let end = hit.iter().map(|r| r.end).max()?;
    Some(LineRange::new(start, end))
}

/// Replaces the lines of `method` in `text` with the printed `new` method,
/// keeping the original indentation. Returns the new text and the new
/// location of `buggy`.
fn splice(text: &str, method: &MethodDecl, new: &MethodDecl, buggy: LineRange) -> (String, LineRange) {
    let lines: Vec<&str> = text.split_inclusive('\n').collect();
    let (start, end) = (method.span.start_line as usize, method.span.end_line as usize);
    let indent: String = lines[start - 1]
        .chars()
        .take_while(|c| *c == ' ' || *c == '\t')
        .collect();
    let bare = MethodDecl {
        comments: Vec::new(),
        ..new.clone()
    };
    let (printed, origins) = print_method_with_origins(&bare, 0);
    let mut out: String = lines[..start - 1].concat();
    for l in printed.lines() {
        if !l.is_empty() {
            out.push_str(&indent);
            out.push_str(l);
        }
        out.push('\n');
    }
    out.push_str(&lines[end..].concat());
    let shift = start as u32 - 1;
    let mapped = map_lines(&origins, buggy)
        .map(|r| LineRange::new(r.start + shift, r.end + shift))
        .unwrap_or(LineRange::new(start as u32, start as u32));
    (out, mapped)
}

fn restructure_tree(tree: &Tree) -> Result<(Tree, TransformReport), BenchError> {
    let parsed = parse_all(tree);
    let target = buggy_file(tree, &parsed)?;
    let files: Vec<SourceFile> = parsed.into_iter().flatten().collect();
    let symbols = ProjectSymbols::build(&files);
    let (class, method) = covering(&target, tree.lines)?;
    let mut env = MethodEnv::for_method(class, method, Some(&symbols));
    let (new_method, report) = apply_all_with(method, &mut env);
    let (text, lines) = splice(&tree.java[tree.buggy].text, method, &new_method, tree.lines);
    let file_key = key(&tree.java[tree.buggy].rel);
    parse(&text, &file_key).map_err(|e| BenchError::Parse(format!("transformed {file_key}: {e}")))?;
    let mut out = tree.clone();
    out.java[tree.buggy].text = text;
    out.lines = lines;
    Ok((out, report))
}

fn equivalence(before: &Tree, after: &Tree, opts: &GenerateOptions) -> Equivalence {
    let pending = |reason: String| Equivalence::ExternalPending { reason };
    let parse_buggy = |t: &Tree| {
        let f = &t.java[t.buggy];
        parse(&f.text, &key(&f.rel)).map_err(|e| e.to_string())
    };
    let (f1, f2) = match (parse_buggy(before), parse_buggy(after)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return pending(e),
    };
    let (Ok((_, m1)), Ok((_, m2))) = (covering(&f1, before.lines), covering(&f2, after.lines)) else {
        return pending("buggy method not found".into());
    };
    let (c1, c2) = (Context::from_file(&f1), Context::from_file(&f2));
    match check_equivalence_with((&c1, m1), (&c2, m2), opts.trials, opts.seed, opts.fuel) {
        Ok(v) => Equivalence::Checked(v),
        Err(e) => pending(e.to_string()),
    }
}

#[derive(Serialize)]
struct ReportFile<'r> {
    #[serde(flatten)]
    transform: &'r TransformReport,
    equivalence: &'r Equivalence,
}

fn write(path: &Path, contents: &str) -> Result<(), BenchError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| BenchError::io(path, e))
}

struct Layout<'p> {
    out_dir: &'p Path,
    manifest_dir: &'p Path,
}

impl Layout<'_> {
    fn record_dir(&self, rec: &VulnRecord) -> PathBuf {
        self.out_dir.join(rec.id.replace(['/', '\\'], "_"))
    }

    fn rel(&self, p: &Path) -> PathBuf {
        pathdiff::diff_paths(p, self.manifest_dir).unwrap_or_else(|| p.to_path_buf())
    }
}

struct Variant {
    tree: Tree,
    dict: Option<RenameDictionary>,
    report: TransformReport,
}

fn write_variant(
    rec: &VulnRecord,
    kind: VariantKind,
    base: &Tree,
    v: Variant,
    layout: &Layout,
    opts: &GenerateOptions,
) -> Result<ManifestEntry, BenchError> {
    let dir = layout.record_dir(rec);
    let root = dir.join(kind.dir_name());
    if root.exists() {
        fs::remove_dir_all(&root).map_err(|e| BenchError::io(&root, e))?;
    }
    for other in &v.tree.other {
        let (from, to) = (rec.project_root.join(other), root.join(other));
        if let Some(parent) = to.parent() {
            fs::create_dir_all(parent).map_err(|e| BenchError::io(parent, e))?;
        }
        fs::copy(&from, &to).map_err(|e| BenchError::io(&from, e))?;
    }
    for f in &v.tree.java {
        write(&root.join(&f.rel), &f.text)?;
    }
    let dictionary = match &v.dict {
        Some(d) => {
            let p = dir.join(format!("{}.dictionary.json", kind.dir_name()));
            write(&p, &(d.to_json() + "\n"))?;
            Some(layout.rel(&p))
        }
        None => None,
    };
    let eq = equivalence(base, &v.tree, opts);
    let report_path = dir.join(format!("{}.report.json", kind.dir_name()));
    let report = ReportFile {
        transform: &v.report,
        equivalence: &eq,
    };
    write(&report_path, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    Ok(ManifestEntry {
        record: rec.clone(),
        variant: kind,
        output_root: layout.rel(&root),
        buggy_file: v.tree.java[v.tree.buggy].rel.clone(),
        buggy_lines: v.tree.lines,
        dictionary,
        report: Some(layout.rel(&report_path)),
        equivalence: Some(eq),
        error: None,
        warnings: v.tree.warnings,
        validation: None,
    })
}

fn failed(rec: &VulnRecord, kind: VariantKind, cause: &str, layout: &Layout) -> ManifestEntry {
    ManifestEntry {
        record: rec.clone(),
        variant: kind,
        output_root: layout.rel(&layout.record_dir(rec).join(kind.dir_name())),
        buggy_file: rec.buggy_file.clone(),
        buggy_lines: rec.buggy_lines,
        dictionary: None,
        report: None,
        equivalence: None,
        error: Some(format!("{} ({kind}): {cause}", rec.id)),
        warnings: Vec::new(),
        validation: None,
    }
}

fn record_entries(rec: &VulnRecord, lexicon: &SynonymLexicon, layout: &Layout, opts: &GenerateOptions) -> Vec<ManifestEntry> {
    let base = match load_tree(rec) {
        Ok(t) => t,
        Err(e) => return opts.kinds.iter().map(|&k| failed(rec, k, &e.to_string(), layout)).collect(),
    };
    let renamed = if opts.kinds.iter().any(|k| k.renames()) {
        rename_tree(&base, lexicon, &opts.stdlib).map_err(|e| e.to_string())
    } else {
        Err(String::new())
    };
    opts.kinds
        .iter()
        .map(|&kind| {
            let variant = match kind {
                VariantKind::RenameOnly => renamed.clone().map(|(tree, d)| Variant {
                    tree,
                    dict: Some(d),
                    report: TransformReport::default(),
                }),
                VariantKind::StructureOnly => restructure_tree(&base)
                    .map(|(tree, report)| Variant {
                        tree,
                        dict: None,
                        report,
                    })
                    .map_err(|e| e.to_string()),
                VariantKind::Both => renamed.clone().and_then(|(t, d)| {
                    restructure_tree(&t)
                        .map(|(tree, report)| Variant {
                            tree,
                            dict: Some(d),
                            report,
                        })
                        .map_err(|e| e.to_string())
                }),
            };
            match variant.and_then(|v| write_variant(rec, kind, &base, v, layout, opts).map_err(|e| e.to_string())) {
                Ok(entry) => entry,
                Err(cause) => failed(rec, kind, &cause, layout),
            }
        })
        .collect()
}

/// Writes the requested variants of every record below `out_dir` and
/// returns the manifest describing them. A failing record or variant is
/// kept in the manifest with its cause; the others go ahead.
pub fn generate_variants(
    records: &[VulnRecord],
    lexicon: &SynonymLexicon,
    out_dir: &Path,
    opts: &GenerateOptions,
) -> Result<BenchmarkManifest, BenchError> {
    fs::create_dir_all(out_dir).map_err(|e| BenchError::io(out_dir, e))?;
    let out_dir = std::path::absolute(out_dir).map_err(|e| BenchError::io(out_dir, e))?;
    let manifest_dir = match &opts.manifest_dir {
        Some(d) => std::path::absolute(d).map_err(|e| BenchError::io(d, e))?,
        None => out_dir.clone(),
    };
    let layout = Layout {
        out_dir: &out_dir,
        manifest_dir: &manifest_dir,
    };
    let chunk = records.len().div_ceil(opts.jobs.max(1)).max(1);
    let entries = std::thread::scope(|s| {
        let handles: Vec<_> = records
            .chunks(chunk)
            .map(|part| {
                let layout = &layout;
                s.spawn(move || {
                    part.iter()
                        .flat_map(|r| record_entries(r, lexicon, layout, opts))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("generation worker panicked"))
            .collect()
    });
    Ok(BenchmarkManifest {
        source_benchmark: opts.source_benchmark.clone(),
        seed: opts.seed,
        entries,
    })
}
