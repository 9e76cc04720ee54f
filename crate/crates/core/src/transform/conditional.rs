use std::collections::BTreeSet;

use super::env::MethodEnv;
use super::loops::{ends_abruptly, has_escaping, Jump};
use super::{TransformError, TransformRule};
use crate::span::Span;
use crate::syntax::visit::{walk_expr, walk_stmt, Visitor};
use crate::syntax::*;

fn na(reason: &'static str) -> TransformError {
    TransformError::na(TransformRule::CondConvert, reason)
}

fn contains_ternary(s: &Stmt) -> bool {
    struct Find(bool);
    impl<'a> Visitor<'a> for Find {
        fn visit_expr(&mut self, e: &'a Expr) {
            if matches!(e.kind, ExprKind::Ternary { .. }) {
                self.0 = true;
            }
            walk_expr(self, e);
        }
    }
    let mut f = Find(false);
    f.visit_stmt(s);
    f.0
}

fn assign_stmt(target: &Expr, value: &Expr) -> Stmt {
    let e = Expr::new(
        ExprKind::Assign {
            target: Box::new(target.clone()),
            value: Box::new(value.clone()),
        },
        value.span.clone(),
    );
    Stmt::new(StmtKind::Expr(e), value.span.clone())
}

fn if_else(cond: &Expr, then_stmt: Stmt, else_stmt: Stmt, span: &Span) -> Stmt {
    let then_span = then_stmt.span.clone();
    let else_span = else_stmt.span.clone();
    Stmt::new(
        StmtKind::If {
            cond: cond.clone(),
            then_branch: Block::new(vec![then_stmt], then_span),
            else_branch: Some(Block::new(vec![else_stmt], else_span)),
        },
        span.clone(),
    )
}

/// `v = c ? a : b;` becomes `if (c) { v = a; } else { v = b; }`. A
/// declaration `T v = c ? a : b;` becomes `T v;` followed by that `if`.
pub fn ternary_to_if(s: &Stmt, env: &MethodEnv) -> Result<Vec<Stmt>, TransformError> {
    let not_whole = || {
        if contains_ternary(s) {
            na("nested-ternary-position")
        } else {
            na("no-ternary")
        }
    };
    match &s.kind {
        StmtKind::Expr(Expr {
            kind: ExprKind::Assign { target, value },
            ..
        }) => {
            let ExprKind::Ternary {
                cond,
                then_expr,
                else_expr,
            } = &value.kind
            else {
                return Err(not_whole());
            };
            let stable_target = match &target.kind {
                ExprKind::Name(_) => true,
                ExprKind::FieldAccess { target: obj, .. } => match &obj.kind {
                    ExprKind::This => true,
                    ExprKind::Name(id) => env.is_local(&id.name),
                    _ => false,
                },
                _ => false,
            };
            if !stable_target {
                return Err(na("complex-assignment-target"));
            }
            let mut out = if_else(
                cond,
                assign_stmt(target, then_expr),
                assign_stmt(target, else_expr),
                &s.span,
            );
            out.comments = s.comments.clone();
            Ok(vec![out])
        }
        StmtKind::LocalVar(v) => {
            let Some(Expr {
                kind:
                    ExprKind::Ternary {
                        cond,
                        then_expr,
                        else_expr,
                    },
                ..
            }) = &v.init
            else {
                return Err(not_whole());
            };
            if v.ty == TypeRef::Inferred {
                return Err(na("inferred-type"));
            }
            let decl = Stmt {
                kind: StmtKind::LocalVar(LocalVar {
                    is_final: v.is_final,
                    ty: v.ty.clone(),
                    name: v.name.clone(),
                    init: None,
                }),
                span: s.span.clone(),
                comments: s.comments.clone(),
            };
            let target = Expr::new(ExprKind::Name(v.name.clone()), v.name.span.clone());
            let branch = if_else(
                cond,
                assign_stmt(&target, then_expr),
                assign_stmt(&target, else_expr),
                &s.span,
            );
            Ok(vec![decl, branch])
        }
        _ => Err(not_whole()),
    }
}

fn guard(scrutinee: &Expr, label: &Literal, span: &Span) -> Expr {
    let lit = Expr::new(ExprKind::Literal(label.clone()), span.clone());
    match label {
        Literal::Str(_) => Expr::new(
            ExprKind::Call {
                receiver: Some(Box::new(scrutinee.clone())),
                method: Ident::new("equals", span.clone()),
                args: vec![lit],
            },
            span.clone(),
        ),
        _ => Expr::new(
            ExprKind::Binary {
                op: BinaryOp::Eq,
                lhs: Box::new(scrutinee.clone()),
                rhs: Box::new(lit),
            },
            span.clone(),
        ),
    }
}

fn declared_names(stmts: &[Stmt]) -> BTreeSet<String> {
    struct Decls(BTreeSet<String>);
    impl<'a> Visitor<'a> for Decls {
        fn visit_stmt(&mut self, s: &'a Stmt) {
            if let StmtKind::LocalVar(v) = &s.kind {
                self.0.insert(v.name.name.clone());
            }
            walk_stmt(self, s);
        }
    }
    let mut d = Decls(BTreeSet::new());
    stmts.iter().for_each(|s| d.visit_stmt(s));
    d.0
}

fn used_names(stmts: &[Stmt]) -> BTreeSet<String> {
    struct Uses(BTreeSet<String>);
    impl<'a> Visitor<'a> for Uses {
        fn visit_ident(&mut self, id: &'a Ident) {
            self.0.insert(id.name.clone());
        }
    }
    let mut u = Uses(BTreeSet::new());
    stmts.iter().for_each(|s| u.visit_stmt(s));
    u.0
}

/// A switch without fall-through on a variable becomes an if/else-if chain
/// with the default arm as the final else.
pub fn switch_to_if_chain(s: &Stmt) -> Result<Stmt, TransformError> {
    let StmtKind::Switch { scrutinee, cases } = &s.kind else {
        return Err(na("not-a-switch"));
    };
    if scrutinee.as_name().is_none() {
        return Err(na("non-name-scrutinee"));
    }
    let last = cases.len().saturating_sub(1);
    for (i, c) in cases.iter().enumerate() {
        if i < last && !c.terminated && !ends_abruptly(&c.body) {
            return Err(na("fallthrough"));
        }
        if has_escaping(&c.body, Jump::Break) {
            return Err(na("inner-break"));
        }
    }
    for (i, c) in cases.iter().enumerate() {
        let decls = declared_names(&c.body);
        let shared = cases
            .iter()
            .enumerate()
            .any(|(j, o)| j != i && !used_names(&o.body).is_disjoint(&decls));
        if shared {
            return Err(na("shared-case-local"));
        }
    }
    let is_default = |c: &SwitchCase| c.labels.contains(&CaseLabel::Default);
    let guarded: Vec<&SwitchCase> = cases.iter().filter(|c| !is_default(c)).collect();
    if guarded.is_empty() {
        return Err(na("default-only"));
    }
    let block_of = |c: &SwitchCase| Block::new(c.body.clone(), c.span.clone());
    let mut else_branch = cases.iter().find(|c| is_default(c)).map(block_of);
    let mut chain = None;
    for (i, c) in guarded.iter().enumerate().rev() {
        let cond = c
            .labels
            .iter()
            .filter_map(|l| match l {
                CaseLabel::Literal(lit) => Some(guard(scrutinee, lit, &c.span)),
                CaseLabel::Default => None,
            })
            .reduce(|acc, g| {
                Expr::new(
                    ExprKind::Binary {
                        op: BinaryOp::Or,
                        lhs: Box::new(acc),
                        rhs: Box::new(g),
                    },
                    c.span.clone(),
                )
            })
            .expect("guarded case has a label");
        let span = if i == 0 { s.span.clone() } else { c.span.clone() };
        let mut stmt = Stmt::new(
            StmtKind::If {
                cond,
                then_branch: block_of(c),
                else_branch: else_branch.take(),
            },
            span.clone(),
        );
        stmt.comments = if i == 0 {
            s.comments.iter().chain(&c.comments).cloned().collect()
        } else {
            c.comments.clone()
        };
        else_branch = Some(Block::new(vec![stmt.clone()], span));
        chain = Some(stmt);
    }
    Ok(chain.expect("at least one guarded case"))
}

/// Labels tested by `cond` if it is `x == lit`, `x.equals("lit")` or a
/// disjunction of those on one variable.
fn guard_labels(cond: &Expr) -> Option<(String, Vec<Literal>)> {
    match &cond.kind {
        ExprKind::Binary {
            op: BinaryOp::Or,
            lhs,
            rhs,
        } => {
            let (a, mut la) = guard_labels(lhs)?;
            let (b, lb) = guard_labels(rhs)?;
            (a == b).then(|| {
                la.extend(lb);
                (a, la)
            })
        }
        ExprKind::Binary {
            op: BinaryOp::Eq,
            lhs,
            rhs,
        } => match (&lhs.kind, &rhs.kind) {
            (ExprKind::Name(id), ExprKind::Literal(lit @ Literal::Int(_))) => Some((id.name.clone(), vec![lit.clone()])),
            _ => None,
        },
        ExprKind::Call {
            receiver: Some(r),
            method,
            args,
        } if method.name == "equals" && args.len() == 1 => match (&r.kind, &args[0].kind) {
            (ExprKind::Name(id), ExprKind::Literal(lit @ Literal::Str(_))) => Some((id.name.clone(), vec![lit.clone()])),
            _ => None,
        },
        _ => None,
    }
}

fn switchable(ty: Option<TypeRef>, string_labels: bool) -> bool {
    match ty {
        Some(TypeRef::Primitive(p)) => {
            !string_labels && matches!(p, PrimitiveType::Int | PrimitiveType::Short | PrimitiveType::Byte | PrimitiveType::Char)
        }
        Some(TypeRef::Named(id)) => {
            if string_labels {
                id.name == "String"
            } else {
                matches!(id.name.as_str(), "Integer" | "Short" | "Byte" | "Character")
            }
        }
        _ => false,
    }
}

fn case_body(block: &Block) -> Vec<Stmt> {
    if declared_names(&block.stmts).is_empty() {
        block.stmts.clone()
    } else {
        vec![Stmt::new(StmtKind::Block(block.clone()), block.span.clone())]
    }
}

/// An if/else-if chain of at least two equality guards on one variable
/// becomes a switch; a trailing else (or an arm that is not a guard) becomes
/// the default case.
pub fn if_chain_to_switch(s: &Stmt, env: &MethodEnv) -> Result<Stmt, TransformError> {
    let mut arms: Vec<(Vec<Literal>, &Block, &Span)> = Vec::new();
    let mut default: Option<Block> = None;
    let mut scrutinee: Option<String> = None;
    let mut cur = s;
    loop {
        let StmtKind::If {
            cond,
            then_branch,
            else_branch,
        } = &cur.kind
        else {
            return Err(na("not-an-if"));
        };
        let labels = guard_labels(cond).filter(|(name, _)| scrutinee.as_ref().map_or(true, |s| s == name));
        let Some((name, labels)) = labels else {
            if arms.is_empty() {
                return Err(na("non-literal-guards"));
            }
            default = Some(Block::new(vec![cur.clone()], cur.span.clone()));
            break;
        };
        scrutinee = Some(name);
        arms.push((labels, then_branch, &cur.span));
        match else_branch {
            Some(b) if b.stmts.len() == 1 && b.trailing_comments.is_empty() && matches!(b.stmts[0].kind, StmtKind::If { .. }) => {
                cur = &b.stmts[0];
            }
            Some(b) => {
                default = Some(b.clone());
                break;
            }
            None => break,
        }
    }
    if arms.len() < 2 {
        return Err(na("single-guard"));
    }
    let all: Vec<&Literal> = arms.iter().flat_map(|a| &a.0).collect();
    let distinct: BTreeSet<String> = all.iter().map(|l| format!("{l:?}")).collect();
    if distinct.len() != all.len() {
        return Err(na("duplicate-label"));
    }
    let string_labels = matches!(all[0], Literal::Str(_));
    if all.iter().any(|l| matches!(l, Literal::Str(_)) != string_labels) {
        return Err(na("mixed-labels"));
    }
    let name = scrutinee.expect("at least one arm");
    let scrutinee_expr = Expr::name(&name, s.span.clone());
    if !switchable(env.type_of(&scrutinee_expr), string_labels) {
        return Err(na("unknown-scrutinee-type"));
    }
    let bodies = arms.iter().map(|a| a.1).chain(default.as_ref());
    if bodies.clone().any(|b| has_escaping(&b.stmts, Jump::Break)) {
        return Err(na("inner-break"));
    }
    let mut cases: Vec<SwitchCase> = arms
        .iter()
        .map(|(labels, body, span)| SwitchCase {
            comments: Vec::new(),
            labels: labels.iter().cloned().map(CaseLabel::Literal).collect(),
            body: case_body(body),
            terminated: !ends_abruptly(&body.stmts),
            span: (*span).clone(),
        })
        .collect();
    if let Some(d) = default.filter(|d| !d.stmts.is_empty()) {
        cases.push(SwitchCase {
            comments: Vec::new(),
            labels: vec![CaseLabel::Default],
            body: case_body(&d),
            terminated: !ends_abruptly(&d.stmts),
            span: d.span.clone(),
        });
    }
    Ok(Stmt {
        kind: StmtKind::Switch {
            scrutinee: scrutinee_expr,
            cases,
        },
        span: s.span.clone(),
        comments: s.comments.clone(),
    })
}

/// Whichever conditional conversion applies to `s`.
pub fn convert_conditional(s: &Stmt, env: &MethodEnv) -> Result<Vec<Stmt>, TransformError> {
    match &s.kind {
        StmtKind::Switch { .. } => switch_to_if_chain(s).map(|x| vec![x]),
        StmtKind::If { .. } => if_chain_to_switch(s, env).map(|x| vec![x]),
        _ => ternary_to_if(s, env),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn method(src: &str) -> MethodDecl {
        parse(&format!("class T {{ {src} }}"), "T.java").unwrap().types[0]
            .methods()
            .next()
            .unwrap()
            .clone()
    }

    fn first(m: &MethodDecl) -> &Stmt {
        &m.body.stmts[0]
    }

    fn printed(stmts: &[Stmt]) -> String {
        stmts.iter().map(print_stmt).collect()
    }

    #[test]
    fn ternary_assignment_schema() {
        let m = method("void f(boolean cond, int a, int b) { v = cond ? a : b; }");
        let out = ternary_to_if(first(&m), &MethodEnv::new(&m)).unwrap();
        let expected = parse_stmts("if (cond) { v = a; } else { v = b; }").unwrap();
        assert!(structurally_equal(&out, &expected), "{}", printed(&out));
    }

    #[test]
    fn ternary_initializer_splits_declaration() {
        let m = method("void f(boolean c) { int v = c ? 1 : 2; }");
        let out = ternary_to_if(first(&m), &MethodEnv::new(&m)).unwrap();
        assert_eq!(printed(&out), "int v;\nif (c) {\n    v = 1;\n} else {\n    v = 2;\n}\n");
        let m = method("void f(boolean c) { var v = c ? 1 : 2; }");
        assert_eq!(ternary_to_if(first(&m), &MethodEnv::new(&m)).unwrap_err().reason(), "inferred-type");
        let m = method("int f(boolean c) { return g(c ? 1 : 2); }");
        assert_eq!(
            ternary_to_if(first(&m), &MethodEnv::new(&m)).unwrap_err().reason(),
            "nested-ternary-position"
        );
    }

    #[test]
    fn switch_schema() {
        let m = method("void f(int k) { switch (k) { case 1: a(); break; default: b(); } }");
        let out = switch_to_if_chain(first(&m)).unwrap();
        let expected = parse_stmts("if (k == 1) { a(); } else { b(); }").unwrap().remove(0);
        assert!(structurally_equal(&out, &expected), "{}", print_stmt(&out));
    }

    #[test]
    fn switch_with_grouped_string_labels() {
        let m = method(
            "void f(String s) { switch (s) { case \"a\": case \"b\": x(); break; case \"c\": return; } }",
        );
        let out = switch_to_if_chain(first(&m)).unwrap();
        assert_eq!(
            print_stmt(&out),
            "if (s.equals(\"a\") || s.equals(\"b\")) {\n    x();\n} else if (s.equals(\"c\")) {\n    return;\n}\n"
        );
    }

    #[test]
    fn switch_preconditions() {
        let reason = |src: &str| switch_to_if_chain(first(&method(src))).unwrap_err().reason();
        assert_eq!(reason("void f(int k) { switch (k) { case 1: a(); case 2: b(); break; } }"), "fallthrough");
        assert_eq!(
            reason("void f(int k) { switch (k) { case 1: if (z) { break; } a(); break; } }"),
            "inner-break"
        );
        assert_eq!(
            reason("void f(int k) { switch (k) { case 1: int q = 1; break; case 2: q = 2; g(q); break; } }"),
            "shared-case-local"
        );
        assert_eq!(reason("void f(int k) { switch (g()) { case 1: a(); break; } }"), "non-name-scrutinee");
    }

    #[test]
    fn if_chain_becomes_switch_and_back() {
        let m = method("void f(int k) { if (k == 1) { a(); } else if (k == 2 || k == 3) { b(); } else { c(); } }");
        let env = MethodEnv::new(&m);
        let sw = if_chain_to_switch(first(&m), &env).unwrap();
        assert_eq!(
            print_stmt(&sw),
            "switch (k) {\n    case 1:\n        a();\n        break;\n    case 2:\n    case 3:\n        b();\n        break;\n    default:\n        c();\n        break;\n}\n"
        );
        let back = switch_to_if_chain(&sw).unwrap();
        assert!(structurally_equal(&back, first(&m)), "{}", print_stmt(&back));
    }

    #[test]
    fn if_chain_preconditions() {
        let reason = |src: &str| {
            let m = method(src);
            let env = MethodEnv::new(&m);
            if_chain_to_switch(first(&m), &env).unwrap_err().reason()
        };
        assert_eq!(reason("void f(int k) { if (k == 1) { a(); } else { b(); } }"), "single-guard");
        assert_eq!(reason("void f(int k) { if (k > 1) { a(); } }"), "non-literal-guards");
        assert_eq!(
            reason("void f(int k) { if (k == 1) { a(); } else if (k == 1) { b(); } }"),
            "duplicate-label"
        );
        assert_eq!(
            reason("void f(long k) { if (k == 1) { a(); } else if (k == 2) { b(); } }"),
            "unknown-scrutinee-type"
        );
        assert_eq!(
            reason("void f(int k) { while (true) { if (k == 1) { break; } else if (k == 2) { b(); } } }"),
            "not-an-if"
        );
    }
}
