//! Pretty-printer with a fixed layout: four-space indentation, K&R braces,
//! braces on every body, and the minimum parentheses needed to reproduce
//! the tree when reparsed.

use super::ast::*;
use crate::span::{LineRange, Span};

const INDENT: &str = "    ";

/// Where a statement ended up in printed output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StmtOrigin {
    /// Span of the statement node that was printed (its original location,
    /// or the location of the rewrite site for synthesized statements).
    pub span: Span,
    /// Printed lines, 1-based, relative to the start of the output.
    pub lines: LineRange,
}

/// Render a whole compilation unit.
pub fn print(file: &SourceFile) -> String {
    let mut p = Printer::default();
    p.file(file);
    p.out
}

/// Render a single method at `indent` levels, ending with a newline.
pub fn print_method(method: &MethodDecl, indent: usize) -> String {
    print_method_with_origins(method, indent).0
}

pub fn print_method_with_origins(method: &MethodDecl, indent: usize) -> (String, Vec<StmtOrigin>) {
    let mut p = Printer {
        indent,
        ..Printer::default()
    };
    p.method(method);
    (p.out, p.origins)
}

pub fn print_stmt(stmt: &Stmt) -> String {
    let mut p = Printer::default();
    p.stmt(stmt);
    p.out
}

pub fn print_expr(expr: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, expr);
    s
}

#[derive(Default)]
struct Printer {
    out: String,
    indent: usize,
    line: u32,
    origins: Vec<StmtOrigin>,
}

impl Printer {
    fn push(&mut self, s: &str) {
        self.line += s.matches('\n').count() as u32;
        self.out.push_str(s);
    }

    fn current_line(&self) -> u32 {
        self.line + 1
    }

    /// Start a new line at the current indentation.
    fn begin_line(&mut self) {
        for _ in 0..self.indent {
            self.out.push_str(INDENT);
        }
    }

    fn line_of(&mut self, s: &str) {
        self.begin_line();
        self.push(s);
        self.push("\n");
    }

    fn comments(&mut self, comments: &[Comment]) {
        for c in comments {
            self.line_of(&c.text);
        }
    }

    fn modifiers(&mut self, mods: &Modifiers) {
        for m in mods {
            self.push(m.keyword());
            self.push(" ");
        }
    }

    fn file(&mut self, file: &SourceFile) {
        self.comments(&file.header_comments);
        let mut sections = 0;
        if let Some(pkg) = &file.package {
            self.push(&format!("package {pkg};\n"));
            sections += 1;
        }
        if !file.imports.is_empty() {
            if sections > 0 {
                self.push("\n");
            }
            for import in &file.imports {
                self.comments(&import.comments);
                let star = if import.wildcard { ".*" } else { "" };
                self.push(&format!("import {}{star};\n", import.path));
            }
            sections += 1;
        }
        for class in &file.types {
            if sections > 0 {
                self.push("\n");
            }
            self.class(class);
            sections += 1;
        }
        if !file.trailing_comments.is_empty() && sections > 0 {
            self.push("\n");
        }
        self.comments(&file.trailing_comments);
    }

    fn class(&mut self, class: &ClassDecl) {
        self.comments(&class.comments);
        self.begin_line();
        self.modifiers(&class.modifiers);
        self.push("class ");
        self.push(&class.name.name);
        if let Some(ext) = &class.extends {
            self.push(" extends ");
            self.push(&ext.name);
        }
        if !class.implements.is_empty() {
            self.push(" implements ");
            let names: Vec<_> = class.implements.iter().map(|i| i.name.as_str()).collect();
            self.push(&names.join(", "));
        }
        self.push(" {\n");
        self.indent += 1;
        let mut prev_field = None;
        for (i, member) in class.members.iter().enumerate() {
            let is_field = matches!(member, Member::Field(_));
            if i > 0 && !(is_field && prev_field == Some(true)) {
                self.push("\n");
            }
            prev_field = Some(is_field);
            match member {
                Member::Field(f) => {
                    self.comments(&f.comments);
                    self.begin_line();
                    self.modifiers(&f.modifiers);
                    self.push(&format!("{} {}", f.ty, f.name));
                    if let Some(init) = &f.init {
                        self.push(" = ");
                        self.push(&print_expr(init));
                    }
                    self.push(";\n");
                }
                Member::Method(m) => self.method(m),
            }
        }
        self.comments(&class.trailing_comments);
        self.indent -= 1;
        self.line_of("}");
    }

    fn method(&mut self, m: &MethodDecl) {
        self.comments(&m.comments);
        self.begin_line();
        self.modifiers(&m.modifiers);
        if let Some(rt) = &m.return_type {
            self.push(&format!("{rt} "));
        }
        self.push(&m.name.name);
        self.push("(");
        let params: Vec<String> = m
            .params
            .iter()
            .map(|p| {
                let fin = if p.is_final { "final " } else { "" };
                format!("{fin}{} {}", p.ty, p.name)
            })
            .collect();
        self.push(&params.join(", "));
        self.push(")");
        if !m.throws.is_empty() {
            let names: Vec<_> = m.throws.iter().map(|t| t.name.as_str()).collect();
            self.push(&format!(" throws {}", names.join(", ")));
        }
        self.push(" ");
        self.block_body(&m.body);
        self.push("\n");
    }

    /// `{ ... }` where the opening brace continues the current line and the
    /// closing brace is left without a newline.
    fn block_body(&mut self, block: &Block) {
        self.push("{\n");
        self.indent += 1;
        for s in &block.stmts {
            self.stmt(s);
        }
        self.comments(&block.trailing_comments);
        self.indent -= 1;
        self.begin_line();
        self.push("}");
    }

    fn stmt(&mut self, stmt: &Stmt) {
        self.comments(&stmt.comments);
        let first = self.current_line();
        self.begin_line();
        self.stmt_inline(stmt);
        self.push("\n");
        self.origins.push(StmtOrigin {
            span: stmt.span.clone(),
            lines: LineRange::new(first, self.current_line() - 1),
        });
    }

    /// Print `stmt` starting at the current column, without a trailing newline.
    fn stmt_inline(&mut self, stmt: &Stmt) {
        match &stmt.kind {
            StmtKind::Block(b) => self.block_body(b),
            StmtKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                self.push(&format!("if ({}) ", print_expr(cond)));
                self.block_body(then_branch);
                if let Some(else_branch) = else_branch {
                    match else_if(else_branch) {
                        Some(nested) => {
                            self.push(" else ");
                            let first = self.current_line();
                            self.stmt_inline(nested);
                            self.origins.push(StmtOrigin {
                                span: nested.span.clone(),
                                lines: LineRange::new(first, self.current_line()),
                            });
                        }
                        None => {
                            self.push(" else ");
                            self.block_body(else_branch);
                        }
                    }
                }
            }
            StmtKind::While { cond, body } => {
                self.push(&format!("while ({}) ", print_expr(cond)));
                self.block_body(body);
            }
            StmtKind::For {
                init,
                cond,
                update,
                body,
            } => {
                let init = for_init(init);
                let cond = cond.as_ref().map(print_expr).unwrap_or_default();
                let update: Vec<String> = update.iter().map(print_expr).collect();
                self.push(&format!("for ({init}; {cond}; {}) ", update.join(", ")));
                self.block_body(body);
            }
            StmtKind::Switch { scrutinee, cases } => {
                self.push(&format!("switch ({}) {{\n", print_expr(scrutinee)));
                self.indent += 1;
                for case in cases {
                    self.comments(&case.comments);
                    for label in &case.labels {
                        match label {
                            CaseLabel::Literal(l) => self.line_of(&format!("case {}:", literal_text(l))),
                            CaseLabel::Default => self.line_of("default:"),
                        }
                    }
                    self.indent += 1;
                    for s in &case.body {
                        self.stmt(s);
                    }
                    if case.terminated {
                        self.line_of("break;");
                    }
                    self.indent -= 1;
                }
                self.indent -= 1;
                self.begin_line();
                self.push("}");
            }
            StmtKind::LocalVar(lv) => {
                self.push(&local_var_text(lv));
                self.push(";");
            }
            StmtKind::Expr(e) => {
                self.push(&print_expr(e));
                self.push(";");
            }
            StmtKind::Return(None) => self.push("return;"),
            StmtKind::Return(Some(e)) => self.push(&format!("return {};", print_expr(e))),
            StmtKind::Break => self.push("break;"),
            StmtKind::Continue => self.push("continue;"),
            StmtKind::Throw(e) => self.push(&format!("throw {};", print_expr(e))),
        }
    }
}

/// The nested `if` when an else block can be printed as `else if`.
fn else_if(block: &Block) -> Option<&Stmt> {
    match block.stmts.as_slice() {
        [only] if block.trailing_comments.is_empty() && only.comments.is_empty() => {
            matches!(only.kind, StmtKind::If { .. }).then_some(only)
        }
        _ => None,
    }
}

fn local_var_text(lv: &LocalVar) -> String {
    let fin = if lv.is_final { "final " } else { "" };
    match &lv.init {
        Some(init) => format!("{fin}{} {} = {}", lv.ty, lv.name, print_expr(init)),
        None => format!("{fin}{} {}", lv.ty, lv.name),
    }
}

fn for_init(init: &[Stmt]) -> String {
    let decls: Vec<&LocalVar> = init
        .iter()
        .filter_map(|s| match &s.kind {
            StmtKind::LocalVar(lv) => Some(lv),
            _ => None,
        })
        .collect();
    if !decls.is_empty() && decls.len() == init.len() {
        let mut parts = vec![local_var_text(decls[0])];
        for lv in &decls[1..] {
            parts.push(match &lv.init {
                Some(e) => format!("{} = {}", lv.name, print_expr(e)),
                None => lv.name.name.clone(),
            });
        }
        return parts.join(", ");
    }
    init.iter()
        .map(|s| match &s.kind {
            StmtKind::Expr(e) => print_expr(e),
            StmtKind::LocalVar(lv) => local_var_text(lv),
            _ => String::new(),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn literal_text(lit: &Literal) -> String {
    match lit {
        Literal::Int(i32::MIN) => "2147483648".to_string(),
        Literal::Int(n) => n.to_string(),
        Literal::Bool(b) => b.to_string(),
        Literal::Null => "null".to_string(),
        Literal::Str(s) => {
            let mut out = String::with_capacity(s.len() + 2);
            out.push('"');
            for c in s.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    '\r' => out.push_str("\\r"),
                    '\u{8}' => out.push_str("\\b"),
                    '\u{c}' => out.push_str("\\f"),
                    c if c.is_control() => out.push_str(&format!("\\u{:04x}", c as u32)),
                    c => out.push(c),
                }
            }
            out.push('"');
            out
        }
    }
}

fn write_sub(out: &mut String, e: &Expr, parens: bool) {
    if parens {
        out.push('(');
        write_expr(out, e);
        out.push(')');
    } else {
        write_expr(out, e);
    }
}

fn write_expr(out: &mut String, e: &Expr) {
    match &e.kind {
        ExprKind::Name(id) => out.push_str(&id.name),
        ExprKind::Literal(l) => out.push_str(&literal_text(l)),
        ExprKind::This => out.push_str("this"),
        ExprKind::Unary { op, operand } => {
            out.push_str(op.symbol());
            let nested_neg = *op == UnaryOp::Neg
                && matches!(operand.kind, ExprKind::Unary { op: UnaryOp::Neg, .. });
            write_sub(out, operand, operand.precedence() < PREC_UNARY || nested_neg);
        }
        ExprKind::Binary { op, lhs, rhs } => {
            let p = op.precedence();
            write_sub(out, lhs, lhs.precedence() < p);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            write_sub(out, rhs, rhs.precedence() <= p);
        }
        ExprKind::Ternary {
            cond,
            then_expr,
            else_expr,
        } => {
            write_sub(out, cond, cond.precedence() <= PREC_TERNARY);
            out.push_str(" ? ");
            write_sub(out, then_expr, then_expr.precedence() <= PREC_ASSIGN);
            out.push_str(" : ");
            write_sub(out, else_expr, else_expr.precedence() < PREC_TERNARY);
        }
        ExprKind::Call {
            receiver,
            method,
            args,
        } => {
            if let Some(r) = receiver {
                write_sub(out, r, r.precedence() < PREC_POSTFIX);
                out.push('.');
            }
            out.push_str(&method.name);
            write_args(out, args);
        }
        ExprKind::FieldAccess { target, field } => {
            write_sub(out, target, target.precedence() < PREC_POSTFIX);
            out.push('.');
            out.push_str(&field.name);
        }
        ExprKind::Assign { target, value } => {
            write_expr(out, target);
            out.push_str(" = ");
            write_expr(out, value);
        }
        ExprKind::New { class, args } => {
            out.push_str("new ");
            out.push_str(&class.name);
            write_args(out, args);
        }
    }
}

fn write_args(out: &mut String, args: &[Expr]) {
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_expr(out, a);
    }
    out.push(')');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, parse_expr, structurally_equal};

    #[test]
    fn negated_comparison_keeps_parentheses() {
        let cond = Expr::not(parse_expr("x > 0").unwrap());
        assert_eq!(print_expr(&cond), "!(x > 0)");
        let stmt = crate::syntax::parse_stmts("if (!(x > 0)) { a(); }").unwrap();
        assert!(print_stmt(&stmt[0]).starts_with("if (!(x > 0)) {"));
    }

    #[test]
    fn nested_blocks_indent_one_level_per_depth() {
        let file = parse("class A { void f() { { { a(); } } } }", "A.java").unwrap();
        let text = print(&file);
        assert_eq!(
            text,
            "class A {\n    void f() {\n        {\n            {\n                a();\n            }\n        }\n    }\n}\n"
        );
    }

    #[test]
    fn minimal_parentheses() {
        for src in ["a - (b - c)", "(a + b) * c", "a + b + c", "\"s\" + (1 + 2)", "-(-x)", "(a ? b : c) ? d : e", "(a = b)"] {
            let e = parse_expr(src).unwrap();
            let printed = print_expr(&e);
            let back = parse_expr(&printed).unwrap();
            assert!(structurally_equal(&e, &back), "{src} -> {printed}");
        }
        assert_eq!(print_expr(&parse_expr("(a + b) + c").unwrap()), "a + b + c");
        assert_eq!(print_expr(&parse_expr("a - (b - c)").unwrap()), "a - (b - c)");
        assert_eq!(print_expr(&parse_expr("-2147483648").unwrap()), "-2147483648");
    }

    #[test]
    fn else_if_and_for_header() {
        let stmts = crate::syntax::parse_stmts(
            "if (a) { x(); } else if (b) { y(); } else { z(); } while (it.hasNext()) { use(it.next()); } for (;it.hasNext();) {}",
        )
        .unwrap();
        assert_eq!(
            print_stmt(&stmts[0]),
            "if (a) {\n    x();\n} else if (b) {\n    y();\n} else {\n    z();\n}\n"
        );
        assert!(print_stmt(&stmts[2]).starts_with("for (; it.hasNext(); ) {"));
    }

    #[test]
    fn origins_track_statement_lines() {
        let file = parse("class A { void f() {\n a();\n if (x) {\n b();\n }\n } }", "A.java").unwrap();
        let m = file.types[0].methods().next().unwrap();
        let (_, origins) = print_method_with_origins(m, 0);
        let call_b = origins.iter().find(|o| o.span.start_line == 4).unwrap();
        assert_eq!(call_b.lines, LineRange::new(4, 4));
        let the_if = origins.iter().find(|o| o.span.start_line == 3).unwrap();
        assert_eq!(the_if.lines, LineRange::new(3, 5));
    }
}
