use super::calls::{argument_pass, chain_functions, ArgDirection, ChainDirection};
use super::conditional::convert_conditional;
use super::env::MethodEnv;
use super::ifflip::flip_if;
use super::loops::convert_loop;
use super::reorder::reorder_statements;
use super::{TransformError, TransformReport, TransformRule};
use crate::syntax::*;

/// Reasons that only say the statement is of the wrong kind.
const SILENT: &[&str] = &[
    "not-an-if",
    "not-a-loop",
    "not-a-switch",
    "no-ternary",
    "non-literal-guards",
];

type StmtRule<'r> = dyn Fn(&Stmt) -> Result<(Vec<Stmt>, &'static str), TransformError> + 'r;

struct StmtPass<'r> {
    rule: TransformRule,
    f: &'r StmtRule<'r>,
    /// Treat an `else if` chain as one statement rather than nesting.
    chain_unit: bool,
    report: &'r mut TransformReport,
}

impl StmtPass<'_> {
    fn block(&mut self, b: &Block) -> Block {
        Block {
            stmts: self.stmts(&b.stmts),
            ..b.clone()
        }
    }

    fn stmts(&mut self, stmts: &[Stmt]) -> Vec<Stmt> {
        stmts.iter().flat_map(|s| self.stmt(s)).collect()
    }

    /// Rewrites the children first, then `s`. Statements a rule produces are
    /// never offered to the same rule again.
    fn stmt(&mut self, s: &Stmt) -> Vec<Stmt> {
        let s = self.children(s);
        match (self.f)(&s) {
            Ok((out, note)) => {
                self.report.apply(self.rule, &s.span, note);
                out
            }
            Err(e) => {
                if !SILENT.contains(&e.reason()) {
                    self.report.skip(self.rule, &s.span, e.reason());
                }
                vec![s]
            }
        }
    }

    fn children(&mut self, s: &Stmt) -> Stmt {
        let kind = match &s.kind {
            StmtKind::Block(b) => StmtKind::Block(self.block(b)),
            StmtKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                let else_branch = else_branch.as_ref().map(|e| match e.stmts.as_slice() {
                    [link @ Stmt {
                        kind: StmtKind::If { .. },
                        ..
                    }] if self.chain_unit => Block {
                        stmts: vec![self.children(link)],
                        ..e.clone()
                    },
                    _ => self.block(e),
                });
                StmtKind::If {
                    cond: cond.clone(),
                    then_branch: self.block(then_branch),
                    else_branch,
                }
            }
            StmtKind::While { cond, body } => StmtKind::While {
                cond: cond.clone(),
                body: self.block(body),
            },
            StmtKind::For {
                init,
                cond,
                update,
                body,
            } => StmtKind::For {
                init: init.clone(),
                cond: cond.clone(),
                update: update.clone(),
                body: self.block(body),
            },
            StmtKind::Switch { scrutinee, cases } => StmtKind::Switch {
                scrutinee: scrutinee.clone(),
                cases: cases
                    .iter()
                    .map(|c| SwitchCase {
                        body: self.stmts(&c.body),
                        ..c.clone()
                    })
                    .collect(),
            },
            other => other.clone(),
        };
        Stmt { kind, ..s.clone() }
    }
}

fn run_stmt_rule(body: &Block, rule: TransformRule, env: &MethodEnv, report: &mut TransformReport) -> Block {
    let one = |r: Result<Stmt, TransformError>, note| r.map(|s| (vec![s], note));
    let f: Box<StmtRule> = match rule {
        TransformRule::IfFlip => Box::new(|s| one(flip_if(s), "flipped")),
        TransformRule::LoopConvert => Box::new(|s| {
            let note = match s.kind {
                StmtKind::For { .. } => "for-to-while",
                _ => "while-to-for",
            };
            one(convert_loop(s), note)
        }),
        _ => Box::new(|s| {
            let note = match s.kind {
                StmtKind::Switch { .. } => "switch-to-if",
                StmtKind::If { .. } => "if-to-switch",
                _ => "ternary-to-if",
            };
            convert_conditional(s, env).map(|out| (out, note))
        }),
    };
    let mut pass = StmtPass {
        rule,
        f: &*f,
        chain_unit: rule == TransformRule::CondConvert,
        report,
    };
    pass.block(body)
}

type BlockRule<'r, 'a> = dyn FnMut(&Block, &mut MethodEnv<'a>) -> Result<Block, TransformError> + 'r;

fn run_block_rule<'a>(
    b: &Block,
    rule: TransformRule,
    f: &mut BlockRule<'_, 'a>,
    env: &mut MethodEnv<'a>,
    report: &mut TransformReport,
) -> Block {
    let mut inner = |stmts: &[Stmt], env: &mut MethodEnv<'a>, report: &mut TransformReport| -> Vec<Stmt> {
        stmts
            .iter()
            .map(|s| {
                let mut s = s.clone();
                match &mut s.kind {
                    StmtKind::Block(inner) => *inner = run_block_rule(inner, rule, f, env, report),
                    StmtKind::If {
                        then_branch,
                        else_branch,
                        ..
                    } => {
                        *then_branch = run_block_rule(then_branch, rule, f, env, report);
                        if let Some(e) = else_branch {
                            *e = run_block_rule(e, rule, f, env, report);
                        }
                    }
                    StmtKind::While { body, .. } | StmtKind::For { body, .. } => {
                        *body = run_block_rule(body, rule, f, env, report)
                    }
                    StmtKind::Switch { cases, .. } => {
                        for c in cases {
                            let wrapped = Block::new(std::mem::take(&mut c.body), c.span.clone());
                            c.body = run_block_rule(&wrapped, rule, f, env, report).stmts;
                        }
                    }
                    _ => {}
                }
                s
            })
            .collect()
    };
    let here = Block {
        stmts: inner(&b.stmts, env, report),
        ..b.clone()
    };
    match f(&here, env) {
        Ok(out) => {
            let note = match rule {
                TransformRule::FunctionChain => "split",
                TransformRule::ArgumentPass => "extract",
                _ => "swap",
            };
            report.apply(rule, &b.span, note);
            out
        }
        Err(_) => here,
    }
}

/// Applies a single rule at every site of `method`.
pub fn apply_rule<'a>(method: &MethodDecl, rule: TransformRule, env: &mut MethodEnv<'a>) -> (MethodDecl, TransformReport) {
    let mut report = TransformReport::default();
    let body = match rule {
        TransformRule::IfFlip | TransformRule::LoopConvert | TransformRule::CondConvert => {
            run_stmt_rule(&method.body, rule, env, &mut report)
        }
        TransformRule::FunctionChain => {
            let mut f = |b: &Block, env: &mut MethodEnv<'a>| chain_functions(b, ChainDirection::Split, env);
            run_block_rule(&method.body, rule, &mut f, env, &mut report)
        }
        TransformRule::ArgumentPass => {
            let mut f = |b: &Block, env: &mut MethodEnv<'a>| argument_pass(b, ArgDirection::Extract, env);
            run_block_rule(&method.body, rule, &mut f, env, &mut report)
        }
        TransformRule::CodeOrder => {
            let mut f = |b: &Block, env: &mut MethodEnv<'a>| reorder_statements(b, env);
            run_block_rule(&method.body, rule, &mut f, env, &mut report)
        }
    };
    (
        MethodDecl {
            body,
            ..method.clone()
        },
        report,
    )
}

/// Applies every rule, in a fixed order, to `method`.
pub fn apply_all(method: &MethodDecl) -> (MethodDecl, TransformReport) {
    let mut env = MethodEnv::new(method);
    apply_all_with(method, &mut env)
}

/// [`apply_all`] with an environment that knows the enclosing class.
pub fn apply_all_with(method: &MethodDecl, env: &mut MethodEnv) -> (MethodDecl, TransformReport) {
    let mut cur = method.clone();
    let mut report = TransformReport::default();
    for rule in TransformRule::ALL {
        let (next, r) = apply_rule(&cur, rule, env);
        report.applied.extend(r.applied);
        report.skipped.extend(r.skipped);
        cur = next;
    }
    (cur, report)
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

    #[test]
    fn every_rule_fires_once_on_a_rich_method() {
        let m = method(
            "int f(int k, Object value) {
                int s = 0;
                int u = 5;
                for (int i = 0; i < k; i = i + 1) { s = s + i; }
                if (s > 3) { s = 1; } else { s = 2; }
                switch (k) { case 1: s = s + 1; break; default: s = s - 1; }
                int t = k > 0 ? 1 : 2;
                g(value.getClass().getName());
                return s + t + u;
            }",
        );
        let (out, report) = apply_all(&m);
        let rules: std::collections::BTreeSet<_> = report.applied_rules().collect();
        assert_eq!(rules.len(), 6, "{report:?}");
        assert!(!structurally_equal(&out, &m));
    }

    #[test]
    fn if_chain_is_converted_from_the_head() {
        let m = method(
            "void f(int k) { if (k == 1) { a(); } else if (k == 2) { b(); } else if (k == 3) { c(); } else { d(); } }",
        );
        let mut env = MethodEnv::new(&m);
        let (out, report) = apply_rule(&m, TransformRule::CondConvert, &mut env);
        assert_eq!(report.applied.len(), 1);
        let StmtKind::Switch { cases, .. } = &out.body.stmts[0].kind else {
            panic!("{}", print_method(&out, 0));
        };
        assert_eq!(cases.len(), 4);
    }

    #[test]
    fn generated_statements_are_not_reconverted() {
        let m = method("void f(int k) { switch (k) { case 1: a(); break; case 2: b(); break; } }");
        let mut env = MethodEnv::new(&m);
        let (out, _) = apply_rule(&m, TransformRule::CondConvert, &mut env);
        assert!(matches!(out.body.stmts[0].kind, StmtKind::If { .. }));
    }

    #[test]
    fn skips_are_reported_with_reasons() {
        let m = method("void f(int n) { for (int i = 0; i < n; i = i + 1) { if (i == 1) { continue; } g(i); } }");
        let (_, report) = apply_all(&m);
        assert!(report
            .skipped
            .iter()
            .any(|s| s.rule == TransformRule::LoopConvert && s.reason == "continue-in-body"));
    }
}
