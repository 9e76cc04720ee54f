use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use vmorph_bench::{synthetic_class, CORPUS};
use vmorph_core::ident::{collect_identifiers, StdlibIndex};
use vmorph_core::oracle::{check_equivalence_with, Context, DEFAULT_FUEL};
use vmorph_core::rename::{apply_rename_text, build_rename_plan, PlanContext, SynonymLexicon};
use vmorph_core::syntax::{parse, print};
use vmorph_core::transform::{apply_all_with, MethodEnv};

fn parse_print(c: &mut Criterion) {
    let mut group = c.benchmark_group("parse_print");
    for n in [10, 100] {
        let src = synthetic_class(n);
        group.throughput(Throughput::Bytes(src.len() as u64));
        group.bench_with_input(BenchmarkId::new("parse", n), &src, |b, src| b.iter(|| parse(black_box(src), "S.java").unwrap()));
        let file = parse(&src, "S.java").unwrap();
        group.bench_with_input(BenchmarkId::new("print", n), &file, |b, file| b.iter(|| print(black_box(file))));
    }
    group.finish();
}

fn apply_all(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_all");
    for n in [10, 100] {
        let file = parse(&synthetic_class(n), "S.java").unwrap();
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &file, |b, file| {
            b.iter(|| {
                for (class, m) in file.methods() {
                    let mut env = MethodEnv::for_method(class, m, None);
                    black_box(apply_all_with(m, &mut env));
                }
            })
        });
    }
    group.finish();
}

fn equivalence(c: &mut Criterion) {
    let file = parse(CORPUS, "Corpus.java").unwrap();
    let ctx = Context::from_file(&file);
    let pairs: Vec<_> = file
        .methods()
        .map(|(class, m)| {
            let mut env = MethodEnv::for_method(class, m, None);
            (m, apply_all_with(m, &mut env).0)
        })
        .collect();
    c.bench_function("equivalence/corpus_100_trials", |b| {
        b.iter(|| {
            for (m, t) in &pairs {
                black_box(check_equivalence_with((&ctx, m), (&ctx, t), 100, 1, DEFAULT_FUEL).unwrap());
            }
        })
    });
}

fn rename(c: &mut Criterion) {
    let src = synthetic_class(50);
    let files = vec![parse(&src, "S.java").unwrap()];
    let stdlib = StdlibIndex::bundled();
    let lexicon = SynonymLexicon::bundled();
    c.bench_function("rename/plan_and_apply_50_methods", |b| {
        b.iter(|| {
            let table = collect_identifiers(&files, None, &stdlib);
            let dict = build_rename_plan(&table, &lexicon, &PlanContext::new(&table, &stdlib), None).unwrap();
            black_box(apply_rename_text(&files, &[src.as_str()], &dict, &stdlib).unwrap())
        })
    });
}

criterion_group!(benches, parse_print, apply_all, equivalence, rename);
criterion_main!(benches);
