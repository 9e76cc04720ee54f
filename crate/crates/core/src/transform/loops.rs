use std::collections::BTreeSet;

use super::{TransformError, TransformRule};
use crate::syntax::visit::{walk_expr, Visitor};
use crate::syntax::*;

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Jump {
    Break,
    Continue,
}

/// True if `stmts` contain a `break`/`continue` that binds to the construct
/// enclosing them, i.e. one not nested in an inner loop (or, for `break`, an
/// inner switch).
pub(crate) fn has_escaping(stmts: &[Stmt], jump: Jump) -> bool {
    stmts.iter().any(|s| match &s.kind {
        StmtKind::Break => jump == Jump::Break,
        StmtKind::Continue => jump == Jump::Continue,
        StmtKind::Block(b) => has_escaping(&b.stmts, jump),
        StmtKind::If {
            then_branch,
            else_branch,
            ..
        } => {
            has_escaping(&then_branch.stmts, jump)
                || else_branch.as_ref().is_some_and(|e| has_escaping(&e.stmts, jump))
        }
        StmtKind::Switch { cases, .. } => {
            jump == Jump::Continue && cases.iter().any(|c| has_escaping(&c.body, jump))
        }
        _ => false,
    })
}

/// Last statement transfers control away unconditionally.
pub(crate) fn ends_abruptly(stmts: &[Stmt]) -> bool {
    match stmts.last().map(|s| &s.kind) {
        Some(StmtKind::Return(_) | StmtKind::Throw(_) | StmtKind::Break | StmtKind::Continue) => true,
        Some(StmtKind::Block(b)) => ends_abruptly(&b.stmts),
        Some(StmtKind::If {
            then_branch,
            else_branch: Some(e),
            ..
        }) => ends_abruptly(&then_branch.stmts) && ends_abruptly(&e.stmts),
        _ => false,
    }
}

struct NameSet(BTreeSet<String>);

impl<'a> Visitor<'a> for NameSet {
    fn visit_expr(&mut self, e: &'a Expr) {
        if let ExprKind::Name(id) = &e.kind {
            self.0.insert(id.name.clone());
        }
        walk_expr(self, e);
    }
}

fn true_literal(span: &crate::span::Span) -> Expr {
    Expr::new(ExprKind::Literal(Literal::Bool(true)), span.clone())
}

/// `for (init; c; u) body` becomes `{ init; while (c) { body; u; } }`, or
/// just the `while` when there is no init. A missing condition becomes
/// `true`.
pub fn for_to_while(s: &Stmt) -> Result<Stmt, TransformError> {
    let StmtKind::For {
        init,
        cond,
        update,
        body,
    } = &s.kind
    else {
        return Err(TransformError::na(TransformRule::LoopConvert, "not-a-for"));
    };
    if init.len() > 1 {
        return Err(TransformError::na(TransformRule::LoopConvert, "multi-declaration-init"));
    }
    if has_escaping(&body.stmts, Jump::Continue) {
        return Err(TransformError::na(TransformRule::LoopConvert, "continue-in-body"));
    }
    let mut used = NameSet(BTreeSet::new());
    update.iter().for_each(|u| used.visit_expr(u));
    let shadowed = body.stmts.iter().any(|st| match &st.kind {
        StmtKind::LocalVar(v) => used.0.contains(&v.name.name),
        _ => false,
    });
    if shadowed {
        return Err(TransformError::na(TransformRule::LoopConvert, "update-shadowed"));
    }

    let mut stmts = body.stmts.clone();
    stmts.extend(update.iter().map(|u| Stmt::new(StmtKind::Expr(u.clone()), u.span.clone())));
    let while_stmt = Stmt {
        kind: StmtKind::While {
            cond: cond.clone().unwrap_or_else(|| true_literal(&s.span)),
            body: Block {
                stmts,
                trailing_comments: body.trailing_comments.clone(),
                span: body.span.clone(),
            },
        },
        span: s.span.clone(),
        comments: if init.is_empty() { s.comments.clone() } else { Vec::new() },
    };
    if init.is_empty() {
        return Ok(while_stmt);
    }
    Ok(Stmt {
        kind: StmtKind::Block(Block::new(vec![init[0].clone(), while_stmt], s.span.clone())),
        span: s.span.clone(),
        comments: s.comments.clone(),
    })
}

/// `while (c) body` becomes `for (; c; ) body`.
pub fn while_to_for(s: &Stmt) -> Result<Stmt, TransformError> {
    let StmtKind::While { cond, body } = &s.kind else {
        return Err(TransformError::na(TransformRule::LoopConvert, "not-a-while"));
    };
    Ok(Stmt {
        kind: StmtKind::For {
            init: Vec::new(),
            cond: Some(cond.clone()),
            update: Vec::new(),
            body: body.clone(),
        },
        span: s.span.clone(),
        comments: s.comments.clone(),
    })
}

/// Whichever direction applies to `s`.
pub fn convert_loop(s: &Stmt) -> Result<Stmt, TransformError> {
    match &s.kind {
        StmtKind::For { .. } => for_to_while(s),
        StmtKind::While { .. } => while_to_for(s),
        _ => Err(TransformError::na(TransformRule::LoopConvert, "not-a-loop")),
    }
}

/// Inverse of [`for_to_while`]: folds `{ init; while (c) { body; u1..un } }`
/// (or a bare `while`) back into a `for` whose update is the last `updates`
/// statements of the body. A `true` condition folds to an empty one.
pub fn fold_for(s: &Stmt, updates: usize) -> Result<Stmt, TransformError> {
    let na = |r| TransformError::na(TransformRule::LoopConvert, r);
    let (init, w) = match &s.kind {
        StmtKind::Block(b) if b.stmts.len() == 2 => (vec![b.stmts[0].clone()], &b.stmts[1]),
        StmtKind::While { .. } => (Vec::new(), s),
        _ => return Err(na("not-a-converted-loop")),
    };
    let StmtKind::While { cond, body } = &w.kind else {
        return Err(na("not-a-converted-loop"));
    };
    if body.stmts.len() < updates {
        return Err(na("too-few-statements"));
    }
    let split = body.stmts.len() - updates;
    let mut update = Vec::new();
    for st in &body.stmts[split..] {
        match &st.kind {
            StmtKind::Expr(e) => update.push(e.clone()),
            _ => return Err(na("update-not-expression")),
        }
    }
    let cond = match &cond.kind {
        ExprKind::Literal(Literal::Bool(true)) => None,
        _ => Some(cond.clone()),
    };
    Ok(Stmt {
        kind: StmtKind::For {
            init,
            cond,
            update,
            body: Block {
                stmts: body.stmts[..split].to_vec(),
                trailing_comments: body.trailing_comments.clone(),
                span: body.span.clone(),
            },
        },
        span: s.span.clone(),
        comments: s.comments.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stmt(src: &str) -> Stmt {
        parse_stmts(src).unwrap().remove(0)
    }

    #[test]
    fn for_becomes_scoped_while() {
        let out = for_to_while(&stmt("for (int i = 0; i < n; i = i + 1) { s = s + i; }")).unwrap();
        let expected = stmt("{ int i = 0; while (i < n) { s = s + i; i = i + 1; } }");
        assert!(structurally_equal(&out, &expected), "{}", print_stmt(&out));
    }

    #[test]
    fn while_becomes_for() {
        let out = while_to_for(&stmt("while (it.hasNext()) { use(it.next()); }")).unwrap();
        assert_eq!(print_stmt(&out), "for (; it.hasNext(); ) {\n    use(it.next());\n}\n");
    }

    #[test]
    fn refuses_continue_and_multi_init() {
        let e = for_to_while(&stmt("for (int i = 0; i < n; i = i + 1) { if (i == 2) { continue; } a(); }"));
        assert_eq!(e.unwrap_err().reason(), "continue-in-body");
        // continue inside a nested loop is fine
        assert!(for_to_while(&stmt("for (; a; ) { while (b) { continue; } }")).is_ok());
        let e = for_to_while(&stmt("for (int i = 0, j = 1; i < j; i = i + 1) { }"));
        assert_eq!(e.unwrap_err().reason(), "multi-declaration-init");
    }

    #[test]
    fn empty_condition_becomes_true_and_folds_back() {
        let s = stmt("for (;;) { if (x) { break; } }");
        let w = for_to_while(&s).unwrap();
        assert!(print_stmt(&w).starts_with("while (true)"));
        assert!(structurally_equal(&fold_for(&w, 0).unwrap(), &s));
    }

    #[test]
    fn fold_inverts_conversion() {
        let s = stmt("for (int i = 0; i < 3; i = i + 1) { a(i); }");
        let back = fold_for(&for_to_while(&s).unwrap(), 1).unwrap();
        assert!(structurally_equal(&back, &s));
    }
}
