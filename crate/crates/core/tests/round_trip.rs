//! parse, print, parse again: the two trees agree on every fixture file.

use std::path::PathBuf;

use vmorph_core::syntax::{parse, print, structurally_equal};

fn fixture_files() -> Vec<PathBuf> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut out = Vec::new();
    let mut stack = vec![root];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|e| e == "java") {
                out.push(path);
            }
        }
    }
    out.sort();
    out
}

#[test]
fn fixture_corpus_round_trips() {
    let files = fixture_files();
    assert!(files.len() >= 20, "{}", files.len());
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let name = path.to_string_lossy();
        let first = parse(&text, &name).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = print(&first);
        let second = parse(&printed, &name).unwrap_or_else(|e| panic!("{name} reprinted: {e}\n{printed}"));
        assert!(structurally_equal(&first, &second), "{name}\n{printed}");
        // printing is a fixed point after one pass
        assert_eq!(print(&second), printed, "{name}");
    }
}
