use std::collections::BTreeSet;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use super::env::MethodEnv;
use crate::syntax::*;

const BUNDLED_PURITY: &str = include_str!("../../data/purity.txt");

/// Calls known to have no side effects.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PurityIndex {
    exact: BTreeSet<(String, String)>,
    any_receiver: BTreeSet<String>,
}

impl PurityIndex {
    /// One `Type.method` per line; `*.method` matches any receiver.
    pub fn from_text(text: &str) -> Self {
        let mut idx = PurityIndex::default();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line.rsplit_once('.') {
                Some(("*", m)) => {
                    idx.any_receiver.insert(m.to_string());
                }
                Some((t, m)) => {
                    idx.exact.insert((t.to_string(), m.to_string()));
                }
                None => {
                    idx.any_receiver.insert(line.to_string());
                }
            }
        }
        idx
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        Ok(Self::from_text(&std::fs::read_to_string(path)?))
    }

    pub fn bundled() -> Arc<PurityIndex> {
        static CELL: OnceLock<Arc<PurityIndex>> = OnceLock::new();
        CELL.get_or_init(|| Arc::new(PurityIndex::from_text(BUNDLED_PURITY)))
            .clone()
    }

    pub fn is_pure(&self, receiver_class: Option<&str>, method: &str) -> bool {
        self.any_receiver.contains(method)
            || receiver_class.is_some_and(|c| self.exact.contains(&(c.to_string(), method.to_string())))
    }
}

/// What a statement may read, write and otherwise do.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Effects {
    /// Local names read.
    pub reads: BTreeSet<String>,
    /// Local names assigned or declared.
    pub writes: BTreeSet<String>,
    /// Calls something impure, allocates, writes the heap or may throw.
    pub effectful: bool,
    /// Reads state that an effectful statement could change.
    pub heap_read: bool,
}

struct Scan<'e, 'a> {
    env: &'e MethodEnv<'a>,
    fx: Effects,
}

impl Scan<'_, '_> {
    fn name_read(&mut self, name: &str) {
        self.fx.reads.insert(name.to_string());
        if !self.env.is_local(name) {
            self.fx.heap_read = true;
        }
    }

    fn expr(&mut self, e: &Expr) {
        match &e.kind {
            ExprKind::Name(id) => self.name_read(&id.name),
            ExprKind::Literal(_) | ExprKind::This => {}
            ExprKind::Unary { operand, .. } => self.expr(operand),
            ExprKind::Binary { op, lhs, rhs } => {
                self.expr(lhs);
                self.expr(rhs);
                if matches!(op, BinaryOp::Div | BinaryOp::Rem) && !nonzero_literal(rhs) {
                    self.fx.effectful = true;
                }
            }
            ExprKind::Ternary {
                cond,
                then_expr,
                else_expr,
            } => {
                self.expr(cond);
                self.expr(then_expr);
                self.expr(else_expr);
            }
            ExprKind::Call {
                receiver,
                method,
                args,
            } => {
                self.fx.heap_read = true;
                let recv_class = match receiver {
                    Some(r) => {
                        self.expr(r);
                        if !never_null(r, self.env) {
                            self.fx.effectful = true;
                        }
                        self.env.class_of(r)
                    }
                    None => self.env.class_name().map(str::to_string),
                };
                if !self.env.purity().is_pure(recv_class.as_deref(), &method.name) {
                    self.fx.effectful = true;
                }
                for a in args {
                    self.expr(a);
                }
            }
            ExprKind::FieldAccess { target, .. } => {
                self.expr(target);
                self.fx.heap_read = true;
                if !matches!(target.kind, ExprKind::This) && !never_null(target, self.env) {
                    self.fx.effectful = true;
                }
            }
            ExprKind::Assign { target, value } => {
                match &target.kind {
                    ExprKind::Name(id) => {
                        self.fx.writes.insert(id.name.clone());
                        if !self.env.is_local(&id.name) {
                            self.fx.effectful = true;
                        }
                    }
                    ExprKind::FieldAccess { target: obj, .. } => {
                        self.expr(obj);
                        self.fx.effectful = true;
                    }
                    _ => self.expr(target),
                }
                self.expr(value);
            }
            ExprKind::New { args, .. } => {
                self.fx.effectful = true;
                for a in args {
                    self.expr(a);
                }
            }
        }
    }

    fn stmt(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::LocalVar(v) => {
                if let Some(init) = &v.init {
                    self.expr(init);
                }
                self.fx.writes.insert(v.name.name.clone());
            }
            StmtKind::Expr(e) | StmtKind::Throw(e) | StmtKind::Return(Some(e)) => self.expr(e),
            StmtKind::Block(b) => b.stmts.iter().for_each(|s| self.stmt(s)),
            StmtKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                self.expr(cond);
                then_branch.stmts.iter().for_each(|s| self.stmt(s));
                if let Some(e) = else_branch {
                    e.stmts.iter().for_each(|s| self.stmt(s));
                }
            }
            StmtKind::While { cond, body } => {
                self.expr(cond);
                body.stmts.iter().for_each(|s| self.stmt(s));
            }
            StmtKind::For {
                init,
                cond,
                update,
                body,
            } => {
                init.iter().for_each(|s| self.stmt(s));
                if let Some(c) = cond {
                    self.expr(c);
                }
                update.iter().for_each(|u| self.expr(u));
                body.stmts.iter().for_each(|s| self.stmt(s));
            }
            StmtKind::Switch { scrutinee, cases } => {
                self.expr(scrutinee);
                for c in cases {
                    c.body.iter().for_each(|s| self.stmt(s));
                }
            }
            StmtKind::Return(None) | StmtKind::Break | StmtKind::Continue => {}
        }
    }
}

fn nonzero_literal(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Literal(Literal::Int(v)) => *v != 0,
        ExprKind::Unary {
            op: UnaryOp::Neg,
            operand,
        } => nonzero_literal(operand),
        _ => false,
    }
}

/// Receivers that cannot be null: `this`, string literals, fresh objects and
/// class names used for static calls.
fn never_null(e: &Expr, env: &MethodEnv) -> bool {
    match &e.kind {
        ExprKind::This | ExprKind::Literal(Literal::Str(_)) | ExprKind::New { .. } => true,
        ExprKind::Name(id) => env.is_static_ref(&id.name),
        _ => false,
    }
}

pub fn stmt_effects(s: &Stmt, env: &MethodEnv) -> Effects {
    let mut scan = Scan {
        env,
        fx: Effects::default(),
    };
    scan.stmt(s);
    scan.fx
}

pub(crate) fn expr_effects(e: &Expr, env: &MethodEnv) -> Effects {
    let mut scan = Scan {
        env,
        fx: Effects::default(),
    };
    scan.expr(e);
    scan.fx
}

/// Evaluating `e` cannot throw, has no effects and reads only locals.
pub(crate) fn trivially_pure(e: &Expr, env: &MethodEnv) -> bool {
    let fx = expr_effects(e, env);
    !fx.effectful && !fx.heap_read && fx.writes.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fx(src: &str, env_src: &str) -> Effects {
        let m = parse(&format!("class T {{ void f({env_src}) {{ {src} }} }}"), "T.java").unwrap();
        let method = m.types[0].methods().next().unwrap().clone();
        let env = MethodEnv::new(&method);
        stmt_effects(&method.body.stmts[0], &env)
    }

    #[test]
    fn whitelist_parses_both_forms() {
        let p = PurityIndex::from_text("# c\nString.length\n*.equals\n");
        assert!(p.is_pure(Some("String"), "length"));
        assert!(!p.is_pure(None, "length"));
        assert!(p.is_pure(None, "equals"));
    }

    #[test]
    fn classifies_statements() {
        let e = fx("int n = 0;", "");
        assert!(!e.effectful && !e.heap_read);
        assert_eq!(e.writes, ["n".to_string()].into());
        assert!(fx("funcA();", "").effectful);
        let e = fx("int m = Math.max(a, 1);", "int a");
        assert!(!e.effectful && e.heap_read);
        assert!(fx("int q = a / b;", "int a, int b").effectful);
        assert!(!fx("int q = a / 2;", "int a").effectful);
        // may throw on a null receiver
        assert!(fx("int l = s.length();", "String s").effectful);
        assert!(!fx("int l = \"abc\".length();", "").effectful);
    }
}
