use super::effects::{stmt_effects, Effects};
use super::env::MethodEnv;
use super::{TransformError, TransformRule};
use crate::syntax::*;

fn independent(a: &Effects, b: &Effects) -> bool {
    a.writes.is_disjoint(&b.reads)
        && a.writes.is_disjoint(&b.writes)
        && b.writes.is_disjoint(&a.reads)
        && !(a.effectful && b.effectful)
        && !(a.effectful && b.heap_read)
        && !(b.effectful && a.heap_read)
}

fn movable(s: &Stmt) -> bool {
    matches!(s.kind, StmtKind::LocalVar(_) | StmtKind::Expr(_))
}

/// Swaps adjacent independent statements in one left-to-right pass. A
/// statement that took part in a swap is not considered again.
pub fn reorder_statements(block: &Block, env: &MethodEnv) -> Result<Block, TransformError> {
    let mut stmts = block.stmts.clone();
    let mut changed = false;
    let mut i = 0;
    while i + 1 < stmts.len() {
        let (a, b) = (&stmts[i], &stmts[i + 1]);
        if movable(a) && movable(b) && independent(&stmt_effects(a, env), &stmt_effects(b, env)) {
            stmts.swap(i, i + 1);
            changed = true;
            i += 2;
        } else {
            i += 1;
        }
    }
    if !changed {
        return Err(TransformError::na(TransformRule::CodeOrder, "no-independent-pair"));
    }
    Ok(Block {
        stmts,
        ..block.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reordered(src: &str) -> Result<String, &'static str> {
        let m = parse(&format!("class T {{ {src} }}"), "T.java").unwrap().types[0]
            .methods()
            .next()
            .unwrap()
            .clone();
        let env = MethodEnv::new(&m);
        reorder_statements(&m.body, &env)
            .map(|b| b.stmts.iter().map(print_stmt).collect())
            .map_err(|e| e.reason())
    }

    #[test]
    fn moves_pure_declaration_past_call() {
        assert_eq!(reordered("void f() { funcA(); int n = 0; }").unwrap(), "int n = 0;\nfuncA();\n");
    }

    #[test]
    fn keeps_dependent_and_effectful_pairs() {
        assert_eq!(reordered("void f() { int n = 0; g(n); }"), Err("no-independent-pair"));
        assert_eq!(reordered("void f() { a(); b(); }"), Err("no-independent-pair"));
        // the call might change the field
        assert_eq!(reordered("void f() { a(); int n = count; }"), Err("no-independent-pair"));
        assert_eq!(reordered("void f() { int n = 0; return; }"), Err("no-independent-pair"));
    }

    #[test]
    fn swapped_statements_are_not_reused() {
        assert_eq!(
            reordered("void f() { int a = 1; int b = 2; int c = 3; }").unwrap(),
            "int b = 2;\nint a = 1;\nint c = 3;\n"
        );
    }
}
