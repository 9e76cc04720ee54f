//! Acceptance criteria. Runs as a plain binary and prints one line per
//! criterion; exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use vmorph_core::bench::{build_prompt, generate_variants, load_records, margin_of_error, GenerateOptions, PromptFormat, PromptSpec, VariantKind};
use vmorph_core::ident::{collect_identifiers, StdlibIndex};
use vmorph_core::oracle::{check_equivalence_with, Context, Verdict, DEFAULT_FUEL};
use vmorph_core::rename::{apply_rename_text, build_rename_plan, PlanContext, RenameDictionary, SynonymLexicon};
use vmorph_core::syntax::{parse, print, print_stmt, structurally_equal, MethodDecl, SourceFile, StmtKind, TypeRef};
use vmorph_core::transform::{
    apply_all_with, apply_rule, argument_pass, chain_functions, flip_if, reorder_statements, ArgDirection, ChainDirection,
    MethodEnv, TransformRule,
};
use vmorph_core::LineRange;

type Outcome = Result<String, String>;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn variant_cardinality() -> Outcome {
    let records = load_records(&fixtures().join("benchmark/records.json")).map_err(|e| e.to_string())?;
    ensure(records.len() == 50, || format!("{} records", records.len()))?;
    let dir = tempfile::tempdir().unwrap();
    let opts = GenerateOptions {
        seed: 3,
        manifest_dir: Some(dir.path().to_path_buf()),
        ..GenerateOptions::default()
    };
    let m = generate_variants(&records, &SynonymLexicon::bundled(), &dir.path().join("out"), &opts).map_err(|e| e.to_string())?;
    ensure(m.entries.len() == 150, || format!("{} entries", m.entries.len()))?;
    let failed = m.failures().count();
    ensure(failed == 0, || format!("{failed} failed entries"))?;
    for rec in &records {
        let kinds: BTreeSet<VariantKind> = m.entries.iter().filter(|e| e.record.id == rec.id).map(|e| e.variant).collect();
        ensure(kinds.len() == 3, || format!("{} has {} variants", rec.id, kinds.len()))?;
    }
    for e in &m.entries {
        let root = dir.path().join(&e.output_root);
        ensure(root.join(&e.buggy_file).is_file(), || format!("{}: missing buggy file", e.record.id))?;
        ensure(dir.path().join(e.report.as_ref().unwrap()).is_file(), || format!("{}: missing report", e.record.id))?;
    }
    Ok("150 entries from 50 records".into())
}

fn corpus() -> SourceFile {
    parse(&read(&fixtures().join("corpus/Corpus.java")), "Corpus.java").unwrap()
}

fn equivalent(ctx: &Context, a: &MethodDecl, b: &MethodDecl) -> Result<(), String> {
    let v = check_equivalence_with((ctx, a), (ctx, b), 100, 42, DEFAULT_FUEL).map_err(|e| format!("{}: {e}", a.name.name))?;
    ensure(v.verdict == Verdict::Equivalent, || format!("{}: {:?} {:?}", a.name.name, v.verdict, v.counterexample))
}

fn semantic_preservation() -> Outcome {
    let file = corpus();
    let ctx = Context::from_file(&file);
    let mut fired = BTreeSet::new();
    let (mut methods, mut checks) = (0, 0);
    for (class, m) in file.methods() {
        methods += 1;
        for rule in TransformRule::ALL {
            let mut env = MethodEnv::for_method(class, m, None);
            let (out, report) = apply_rule(m, rule, &mut env);
            if !report.applied.is_empty() {
                fired.insert(rule);
                equivalent(&ctx, m, &out).map_err(|e| format!("{rule}: {e}"))?;
                checks += 1;
            }
        }
        let mut env = MethodEnv::for_method(class, m, None);
        let (out, _) = apply_all_with(m, &mut env);
        equivalent(&ctx, m, &out).map_err(|e| format!("apply_all: {e}"))?;
        checks += 1;
    }
    ensure(methods >= 30, || format!("only {methods} methods"))?;
    ensure(fired.len() == 6, || format!("rules exercised: {fired:?}"))?;
    Ok(format!("{methods} methods, {checks} checks, 0 divergences"))
}

fn figure(name: &str) -> SourceFile {
    parse(&read(&fixtures().join("figures").join(name)), name).unwrap()
}

fn worked_examples() -> Outcome {
    let cases = [
        ("chain_before.java", "chain_after.java", TransformRule::FunctionChain, "value_class"),
        ("argument_before.java", "argument_after.java", TransformRule::ArgumentPass, "normalizedParentPath"),
        ("order_before.java", "order_after.java", TransformRule::CodeOrder, "n"),
    ];
    for (before, after, rule, local) in cases {
        let file = figure(before);
        let (class, m) = file.methods().next().unwrap();
        let mut env = MethodEnv::for_method(class, m, None);
        let (out, _) = apply_rule(m, rule, &mut env);
        let expected_file = figure(after);
        let expected = expected_file.methods().next().unwrap().1;
        ensure(structurally_equal(&out, expected), || format!("{before}: got\n{}", print_stmt_list(&out)))?;
        let declared: Vec<&str> = out
            .body
            .stmts
            .iter()
            .filter_map(|s| match &s.kind {
                StmtKind::LocalVar(v) => Some(v.name.name.as_str()),
                _ => None,
            })
            .collect();
        ensure(declared.contains(&local), || format!("{before}: no local {local}"))?;
    }
    let file = figure("chain_before.java");
    let (class, m) = file.methods().next().unwrap();
    let (out, _) = apply_rule(m, TransformRule::FunctionChain, &mut MethodEnv::for_method(class, m, None));
    let StmtKind::LocalVar(v) = &out.body.stmts[1].kind else { return Err("split did not declare".into()) };
    ensure(matches!(&v.ty, TypeRef::Named(t) if t.name == "Class"), || format!("{:?}", v.ty))?;
    Ok("chain split, argument extraction and code order match".into())
}

fn print_stmt_list(m: &MethodDecl) -> String {
    m.body.stmts.iter().map(print_stmt).collect()
}

fn rename_laws() -> Outcome {
    let dir = fixtures().join("rename_project/src");
    let names = ["FileUtils.java", "PathChecker.java"];
    let texts: Vec<String> = names.iter().map(|n| read(&dir.join(n))).collect();
    let stdlib = StdlibIndex::bundled();
    let run = |texts: &[String], dict: &RenameDictionary| {
        let files: Vec<SourceFile> = texts.iter().zip(names).map(|(t, n)| parse(t, n).unwrap()).collect();
        let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
        apply_rename_text(&files, &refs, dict, &stdlib).unwrap()
    };
    let files: Vec<SourceFile> = texts.iter().zip(names).map(|(t, n)| parse(t, n).unwrap()).collect();
    let table = collect_identifiers(&files, None, &stdlib);
    let dict = build_rename_plan(&table, &SynonymLexicon::bundled(), &PlanContext::new(&table, &stdlib), None).map_err(|e| e.to_string())?;
    dict.validate().map_err(|e| e.to_string())?;
    let targets: BTreeSet<&String> = dict.forward.values().collect();
    ensure(targets.len() == dict.forward.len(), || "dictionary not injective".into())?;
    let renamed = run(&texts, &dict);
    ensure(renamed != texts, || "nothing renamed".into())?;
    let restored = run(&renamed, &dict.inverse());
    ensure(restored == texts, || "backward application differs".into())?;
    for name in ["startsWith", "normalize"] {
        let count = |ts: &[String]| ts.iter().map(|t| t.matches(name).count()).sum::<usize>();
        ensure(dict.get(name).is_none() && count(&renamed) == count(&texts), || format!("{name} altered"))?;
    }
    let altered = dict.forward.keys().filter(|k| stdlib.contains(k)).count();
    ensure(altered == 0, || format!("{altered} stdlib names renamed"))?;
    Ok(format!("{} names renamed and restored", dict.len()))
}

fn config() -> Config {
    Config {
        failure_persistence: None,
        ..Config::with_cases(128)
    }
}

fn involutions() -> Outcome {
    let method = |body: &str| {
        let src = format!("class T {{\n    int f(int a, String s, boolean p) {{\n{body}    }}\n}}\n");
        let file = parse(&src, "T.java").unwrap();
        let m = file.methods().next().unwrap().1.clone();
        m
    };
    let atom = || prop_oneof![Just("a".to_string()), Just("s".to_string()), (0i32..9).prop_map(|n| n.to_string())];
    let cond = (atom(), atom(), 0..4usize).prop_map(|(x, y, k)| match k {
        0 => format!("{x} < {y}"),
        1 => format!("!p && {x} == {y}"),
        2 => format!("!(!(p))"),
        _ => format!("s.equals({x}) || p"),
    });
    let mut runner = TestRunner::new(config());
    runner
        .run(&(cond, atom(), atom()), |(c, x, y)| {
            let m = method(&format!("        if ({c}) {{\n            g({x});\n        }} else {{\n            return {y};\n        }}\n"));
            let s = &m.body.stmts[0];
            let twice = flip_if(&flip_if(s).unwrap()).unwrap();
            prop_assert!(structurally_equal(&twice, s));
            Ok(())
        })
        .map_err(|e| format!("flip: {e}"))?;

    let link = prop::sample::select(vec!["trim()", "getParent()", "append(a)", "build()", "concat(s)"]);
    let chain = (prop::sample::select(vec!["s", "node"]), prop::collection::vec(link, 2..5)).prop_map(|(b, ls)| format!("{b}.{}", ls.join(".")));
    let mut runner = TestRunner::new(config());
    runner
        .run(&(chain, 0..3usize), |(c, k)| {
            let stmt = match k {
                0 => format!("{c};"),
                1 => format!("String r = {c};"),
                _ => format!("return {c};"),
            };
            let m = method(&format!("        {stmt}\n"));
            let mut env = MethodEnv::new(&m);
            let split = chain_functions(&m.body, ChainDirection::Split, &mut env).unwrap();
            let merged = chain_functions(&split, ChainDirection::Merge, &mut env).unwrap();
            prop_assert!(structurally_equal(&merged, &m.body));
            Ok(())
        })
        .map_err(|e| format!("chain: {e}"))?;

    let inner = (prop::sample::select(vec!["h", "k"]), prop::collection::vec(atom(), 0..3)).prop_map(|(f, a)| format!("{f}({})", a.join(", ")));
    let args = prop::collection::vec(prop_oneof![atom(), inner.clone(), inner.prop_map(|c| format!("w({c})"))], 1..4);
    let mut runner = TestRunner::new(config());
    runner
        .run(&(args, atom()), |(args, x)| {
            // the last argument is always a call, so there is something to extract
            let call = format!("g({}, v({x}))", args.join(", "));
            let m = method(&format!("        int r = {call};\n        return r;\n"));
            let mut env = MethodEnv::new(&m);
            let extracted = argument_pass(&m.body, ArgDirection::Extract, &mut env).unwrap();
            let inlined = argument_pass(&extracted, ArgDirection::Inline, &mut env).unwrap();
            prop_assert!(structurally_equal(&inlined, &m.body));
            Ok(())
        })
        .map_err(|e| format!("argument: {e}"))?;

    let var = prop::sample::select(vec!["x", "y", "z"]);
    let stmt = (var.clone(), var, 0..5i32).prop_map(|(v, w, n)| format!("{v} = {w} + {n};"));
    let mut runner = TestRunner::new(config());
    runner
        .run(&prop::collection::vec(stmt, 1..7), |stmts| {
            let body: String = ["int x = a;", "g(a);", "int y = 1;", "int z = 2;"]
                .iter()
                .map(|s| s.to_string())
                .chain(stmts)
                .map(|s| format!("        {s}\n"))
                .collect();
            let m = method(&format!("{body}        return x + y + z;\n"));
            let env = MethodEnv::new(&m);
            let out = reorder_statements(&m.body, &env).unwrap();
            let mut before: Vec<String> = m.body.stmts.iter().map(print_stmt).collect();
            let mut after: Vec<String> = out.stmts.iter().map(print_stmt).collect();
            before.sort();
            after.sort();
            prop_assert_eq!(before, after);
            Ok(())
        })
        .map_err(|e| format!("reorder: {e}"))?;
    Ok(format!("{} cases each for flip, chain, argument and reorder", config().cases))
}

fn java_files(dir: &Path, out: &mut Vec<PathBuf>) {
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            java_files(&path, out);
        } else if path.extension().is_some_and(|e| e == "java") {
            out.push(path);
        }
    }
}

fn round_trip() -> Outcome {
    let mut files = Vec::new();
    java_files(&fixtures(), &mut files);
    files.sort();
    for path in &files {
        let name = path.to_string_lossy();
        let first = parse(&read(path), &name).map_err(|e| format!("{name}: {e}"))?;
        let second = parse(&print(&first), &name).map_err(|e| format!("{name} reprinted: {e}"))?;
        ensure(structurally_equal(&first, &second), || format!("{name} differs after reprinting"))?;
    }
    Ok(format!("{} files", files.len()))
}

fn prompt_formats() -> Outcome {
    let dir = fixtures().join("prompts");
    let text = read(&dir.join("FileUtils.java"));
    let file = parse(&text, "FileUtils.java").unwrap();
    let m = file.methods().next().unwrap().1;
    let lines: Vec<&str> = text.split_inclusive('\n').collect();
    let method_text: String = lines[2..10].concat();
    for format in PromptFormat::ALL {
        let b = build_prompt(PromptSpec { format, max_window: None }, &text, m, LineRange::new(6, 6)).map_err(|e| e.to_string())?;
        ensure(b.prefix == read(&dir.join(format!("{format}.prefix.txt"))), || format!("{format}: prefix differs"))?;
        let suffix = (format == PromptFormat::CodexInsert).then(|| read(&dir.join("codex-insert.suffix.txt")));
        ensure(b.suffix == suffix, || format!("{format}: suffix differs"))?;
    }
    for format in [PromptFormat::Codet5Mask, PromptFormat::PlbartMask, PromptFormat::IncoderMask] {
        for (a, z) in [(4, 4), (4, 5), (6, 8), (9, 9)] {
            let b = build_prompt(PromptSpec { format, max_window: None }, &text, m, LineRange::new(a, z)).map_err(|e| e.to_string())?;
            let buggy: String = lines[a as usize - 1..z as usize].concat();
            let token = format.mask_token().unwrap();
            let restored = b.prefix.replacen(token, buggy.strip_suffix('\n').unwrap(), 1);
            ensure(restored == method_text, || format!("{format} {a}:{z} not reversible"))?;
        }
    }
    Ok("6 formats match goldens; masks reverse byte for byte".into())
}

fn samples(name: &str) -> Vec<f64> {
    read(&fixtures().join("stats").join(name)).split_whitespace().map(|w| w.parse().unwrap()).collect()
}

fn sample_sd(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

/// Two-sided t quantile for even df by bisection on a Simpson-integrated
/// density with the exact gamma ratio.
fn t_quantile(confidence: f64, df: u32) -> f64 {
    let v = f64::from(df);
    let k = df / 2;
    let ratio = (1..=k).map(|i| (2 * i - 1) as f64 / 2.0).product::<f64>() * PI.sqrt() / (1..k).map(f64::from).product::<f64>();
    let density = |x: f64| ratio / (v * PI).sqrt() * (1.0 + x * x / v).powf(-(v + 1.0) / 2.0);
    let mass = |x: f64| {
        let n = 4000;
        let h = x / n as f64;
        let inner: f64 = (1..n).map(|i| density(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
        (density(0.0) + density(x) + inner) * h / 3.0
    };
    let (mut lo, mut hi) = (0.0, 50.0);
    for _ in 0..80 {
        let mid = (lo + hi) / 2.0;
        if 2.0 * mass(mid) < confidence {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / 2.0
}

fn statistics() -> Outcome {
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let zero = margin_of_error(&[4.0; 25], 0.95).map_err(|e| e.to_string())?;
    ensure(zero == 0.0, || format!("constant samples gave {zero}"))?;
    let three = samples("three.txt");
    let c: f64 = 0.95;
    let want = (2.0 * c * c / (1.0 - c * c)).sqrt() * sample_sd(&three) / 3f64.sqrt();
    let got = margin_of_error(&three, c).map_err(|e| e.to_string())?;
    ensure(rel(got, want) <= 1e-9, || format!("three samples: {got} vs {want}"))?;
    let xs = samples("samples.txt");
    let want = t_quantile(c, 24) * sample_sd(&xs) / 5.0;
    let got = margin_of_error(&xs, c).map_err(|e| e.to_string())?;
    ensure(rel(got, want) <= 1e-9, || format!("25 samples: {got} vs {want}"))?;
    Ok(format!("moe {got:.9} matches to 1e-9"))
}

fn tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.insert(path.strip_prefix(root).unwrap().to_path_buf(), std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

fn determinism() -> Outcome {
    let run = |dir: &Path| {
        let status = Command::new(env!("CARGO_BIN_EXE_vmorph"))
            .args(["transform", "--mode", "all", "--seed", "17"])
            .arg("--project")
            .arg(fixtures().join("benchmark"))
            .arg("--out")
            .arg(dir.join("out"))
            .arg("--manifest")
            .arg(dir.join("manifest.json"))
            .stderr(Stdio::null())
            .status()
            .expect("vmorph runs");
        ensure(status.success(), || format!("vmorph exited with {status}"))?;
        Ok::<_, String>(tree(dir))
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let (ta, tb) = (run(a.path())?, run(b.path())?);
    ensure(ta.len() > 150, || format!("only {} files written", ta.len()))?;
    if let Some((path, _)) = ta.iter().find(|(p, bytes)| tb.get(*p) != Some(*bytes)) {
        return Err(format!("{} differs", path.display()));
    }
    ensure(ta.len() == tb.len(), || "file sets differ".into())?;
    Ok(format!("{} files byte-identical across runs", ta.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("variant cardinality", variant_cardinality, Duration::from_secs(60)),
        ("semantic preservation", semantic_preservation, Duration::from_secs(120)),
        ("worked examples", worked_examples, Duration::MAX),
        ("rename laws", rename_laws, Duration::MAX),
        ("involutions and inverses", involutions, Duration::MAX),
        ("round trip", round_trip, Duration::MAX),
        ("prompt formats", prompt_formats, Duration::MAX),
        ("statistics", statistics, Duration::MAX),
        ("determinism", determinism, Duration::MAX),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        let result = result.and_then(|detail| {
            if took > limit {
                Err(format!("{detail}, but took {took:.1?} (limit {limit:?})"))
            } else {
                Ok(detail)
            }
        });
        match result {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
