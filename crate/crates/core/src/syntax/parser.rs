//! Recursive-descent parser for the Java subset described in `docs/grammar.md`.
//!
//! Constructs that are valid Java but outside the subset are rejected with
//! [`ParseError::UnsupportedConstruct`] rather than skipped.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::ast::*;
use super::error::{ParseError, SyntaxError};
use super::lexer::{tokenize, Token, TokenKind};
use crate::span::Span;

type PResult<T> = Result<T, ParseError>;

/// Parse a compilation unit.
pub fn parse(text: &str, file: &str) -> PResult<SourceFile> {
    let file: Arc<str> = Arc::from(file);
    let tokens = tokenize(text, &file)?;
    let mut p = Parser {
        last_span: tokens[0].span.clone(),
        tokens,
        pos: 0,
        pending: Vec::new(),
        file,
    };
    p.parse_file()
}

/// Parse a single expression (used by tests and tooling).
pub fn parse_expr(text: &str) -> PResult<Expr> {
    let file: Arc<str> = Arc::from("<expr>");
    let tokens = tokenize(text, &file)?;
    let mut p = Parser {
        last_span: tokens[0].span.clone(),
        tokens,
        pos: 0,
        pending: Vec::new(),
        file,
    };
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parse a sequence of statements, as if they were the body of a block.
pub fn parse_stmts(text: &str) -> PResult<Vec<Stmt>> {
    let file: Arc<str> = Arc::from("<stmts>");
    let tokens = tokenize(text, &file)?;
    let mut p = Parser {
        last_span: tokens[0].span.clone(),
        tokens,
        pos: 0,
        pending: Vec::new(),
        file,
    };
    let mut stmts = Vec::new();
    while !p.at_eof() {
        stmts.push(p.stmt()?);
    }
    Ok(stmts)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    pending: Vec<Comment>,
    last_span: Span,
    file: Arc<str>,
}

impl Parser {
    // ---- token plumbing ----

    fn peek(&self) -> &TokenKind {
        &self.tokens[self.pos].kind
    }

    fn peek_at(&self, n: usize) -> &TokenKind {
        let i = (self.pos + n).min(self.tokens.len() - 1);
        &self.tokens[i].kind
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span.clone()
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek(), TokenKind::Eof)
    }

    fn bump(&mut self) -> Token {
        let comments = std::mem::take(&mut self.tokens[self.pos].comments_before);
        self.pending.extend(comments);
        let tok = self.tokens[self.pos].clone();
        self.last_span = tok.span.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    /// Comments seen since the last attachment point, including those just
    /// before the current token.
    fn take_comments(&mut self) -> Vec<Comment> {
        let mut out = std::mem::take(&mut self.pending);
        out.append(&mut self.tokens[self.pos].comments_before);
        out
    }

    fn since(&self, start: &Span) -> Span {
        start.to(&self.last_span)
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), TokenKind::Punct(q) if *q == p)
    }

    fn is_punct_at(&self, n: usize, p: &str) -> bool {
        matches!(self.peek_at(n), TokenKind::Punct(q) if *q == p)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), TokenKind::Keyword(q) if *q == k)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, k: &str) -> bool {
        if self.is_kw(k) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(SyntaxError::new(self.span(), msg).into())
    }

    fn unsupported<T>(&self, construct: &'static str) -> PResult<T> {
        Err(ParseError::UnsupportedConstruct {
            span: self.span(),
            construct,
        })
    }

    fn expect_punct(&mut self, p: &str) -> PResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            self.error(format!("expected `{p}`, found {}", self.peek()))
        }
    }

    fn expect_kw(&mut self, k: &str) -> PResult<()> {
        if self.eat_kw(k) {
            Ok(())
        } else {
            self.error(format!("expected `{k}`, found {}", self.peek()))
        }
    }

    fn expect_eof(&mut self) -> PResult<()> {
        if self.at_eof() {
            Ok(())
        } else {
            self.error(format!("expected end of input, found {}", self.peek()))
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        match self.peek().clone() {
            TokenKind::Ident(name) => {
                let tok = self.bump();
                Ok(Ident::new(name, tok.span))
            }
            other => self.error(format!("expected identifier, found {other}")),
        }
    }

    fn dotted_name(&mut self) -> PResult<DottedName> {
        let mut segments = vec![self.ident()?];
        while self.is_punct(".") && matches!(self.peek_at(1), TokenKind::Ident(_)) {
            self.bump();
            segments.push(self.ident()?);
        }
        Ok(DottedName { segments })
    }

    // ---- declarations ----

    fn parse_file(&mut self) -> PResult<SourceFile> {
        let start = Span::new(self.file.clone(), (1, 1), (1, 1));
        let header_comments = self.take_comments();
        if self.is_punct("@") {
            return self.unsupported("annotation");
        }
        let package = if self.eat_kw("package") {
            let name = self.dotted_name()?;
            self.expect_punct(";")?;
            Some(name)
        } else {
            None
        };
        let mut imports = Vec::new();
        while self.is_kw("import") {
            let comments = self.take_comments();
            let begin = self.span();
            self.bump();
            if self.is_kw("static") {
                return self.unsupported("static-import");
            }
            let path = self.dotted_name()?;
            let wildcard = if self.eat_punct(".") {
                self.expect_punct("*")?;
                true
            } else {
                false
            };
            self.expect_punct(";")?;
            imports.push(Import {
                comments,
                path,
                wildcard,
                span: self.since(&begin),
            });
        }
        let mut types = Vec::new();
        while !self.at_eof() {
            types.push(self.class_decl()?);
        }
        let trailing_comments = self.take_comments();
        let end = self.span();
        Ok(SourceFile {
            path: self.file.clone(),
            header_comments,
            package,
            imports,
            types,
            trailing_comments,
            span: start.to(&end),
        })
    }

    fn modifiers(&mut self) -> PResult<Modifiers> {
        let mut mods = BTreeSet::new();
        loop {
            match self.peek() {
                TokenKind::Keyword(k) => {
                    if let Some(m) = Modifier::from_keyword(k) {
                        if !mods.insert(m) {
                            return self.error(format!("duplicate modifier `{k}`"));
                        }
                        self.bump();
                    } else if matches!(
                        *k,
                        "abstract" | "synchronized" | "native" | "transient" | "volatile" | "strictfp"
                    ) && !self.is_punct_at(1, "(")
                    {
                        return self.unsupported("modifier");
                    } else {
                        return Ok(mods);
                    }
                }
                TokenKind::Punct("@") => return self.unsupported("annotation"),
                _ => return Ok(mods),
            }
        }
    }

    fn class_decl(&mut self) -> PResult<ClassDecl> {
        let comments = self.take_comments();
        let begin = self.span();
        let modifiers = self.modifiers()?;
        if self.is_kw("interface") {
            return self.unsupported("interface");
        }
        if self.is_kw("enum") {
            return self.unsupported("enum");
        }
        self.expect_kw("class")?;
        let name = self.ident()?;
        if self.is_punct("<") {
            return self.unsupported("generics");
        }
        let extends = if self.eat_kw("extends") {
            Some(self.class_type_name()?)
        } else {
            None
        };
        let mut implements = Vec::new();
        if self.eat_kw("implements") {
            implements.push(self.class_type_name()?);
            while self.eat_punct(",") {
                implements.push(self.class_type_name()?);
            }
        }
        self.expect_punct("{")?;
        let mut members = Vec::new();
        while !self.is_punct("}") {
            if self.at_eof() {
                return self.error("unexpected end of file in class body");
            }
            members.push(self.member(&name.name)?);
        }
        let trailing_comments = self.take_comments();
        self.expect_punct("}")?;
        Ok(ClassDecl {
            comments,
            modifiers,
            name,
            extends,
            implements,
            members,
            trailing_comments,
            span: self.since(&begin),
        })
    }

    fn class_type_name(&mut self) -> PResult<Ident> {
        let id = self.ident()?;
        self.check_type_suffix()?;
        Ok(id)
    }

    fn check_type_suffix(&self) -> PResult<()> {
        if self.is_punct("<") {
            return self.unsupported("generics");
        }
        if self.is_punct("[") {
            return self.unsupported("array");
        }
        if self.is_punct("...") {
            return self.unsupported("varargs");
        }
        Ok(())
    }

    fn member(&mut self, class_name: &str) -> PResult<Member> {
        let comments = self.take_comments();
        let begin = self.span();
        let modifiers = self.modifiers()?;
        if self.is_punct("{") {
            return self.unsupported("initializer-block");
        }
        if self.is_kw("class") || self.is_kw("interface") || self.is_kw("enum") {
            return self.unsupported("inner-class");
        }
        if self.is_punct("<") {
            return self.unsupported("generics");
        }
        let is_ctor = matches!(self.peek(), TokenKind::Ident(n) if n == class_name) && self.is_punct_at(1, "(");
        let return_type = if is_ctor { None } else { Some(self.type_ref(true)?) };
        let name = self.ident()?;
        if !self.is_punct("(") {
            let Some(ty) = return_type else {
                return self.error("expected `(`");
            };
            if ty == TypeRef::Void {
                return self.error("field cannot have type void");
            }
            let init = if self.eat_punct("=") { Some(self.expr()?) } else { None };
            if self.is_punct(",") {
                return self.unsupported("multi-declaration");
            }
            if self.is_punct("[") {
                return self.unsupported("array");
            }
            self.expect_punct(";")?;
            return Ok(Member::Field(FieldDecl {
                comments,
                modifiers,
                ty,
                name,
                init,
                span: self.since(&begin),
            }));
        }
        self.expect_punct("(")?;
        let mut params: Vec<Param> = Vec::new();
        if !self.is_punct(")") {
            loop {
                let is_final = self.eat_kw("final");
                if self.is_punct("@") {
                    return self.unsupported("annotation");
                }
                let ty = self.type_ref(false)?;
                let pname = self.ident()?;
                self.check_type_suffix()?;
                if params.iter().any(|p| p.name.name == pname.name) {
                    return Err(SyntaxError::new(
                        pname.span.clone(),
                        format!("duplicate parameter `{}`", pname.name),
                    )
                    .into());
                }
                params.push(Param {
                    is_final,
                    ty,
                    name: pname,
                });
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.expect_punct(")")?;
        let mut throws = Vec::new();
        if self.eat_kw("throws") {
            throws.push(self.class_type_name()?);
            while self.eat_punct(",") {
                throws.push(self.class_type_name()?);
            }
        }
        if self.is_punct(";") {
            return self.unsupported("abstract-method");
        }
        let body = self.block()?;
        Ok(Member::Method(MethodDecl {
            comments,
            modifiers,
            return_type,
            name,
            params,
            throws,
            body,
            span: self.since(&begin),
        }))
    }

    fn type_ref(&mut self, allow_void: bool) -> PResult<TypeRef> {
        let ty = match self.peek().clone() {
            TokenKind::Keyword("void") if allow_void => {
                self.bump();
                TypeRef::Void
            }
            TokenKind::Keyword(k) => match PrimitiveType::from_keyword(k) {
                Some(p) => {
                    self.bump();
                    TypeRef::Primitive(p)
                }
                None => return self.error(format!("expected type, found `{k}`")),
            },
            TokenKind::Ident(_) => {
                let id = self.ident()?;
                if self.is_punct(".") && matches!(self.peek_at(1), TokenKind::Ident(_)) {
                    return self.unsupported("qualified-type");
                }
                TypeRef::Named(id)
            }
            other => return self.error(format!("expected type, found {other}")),
        };
        self.check_type_suffix()?;
        Ok(ty)
    }

    // ---- statements ----

    fn block(&mut self) -> PResult<Block> {
        let begin = self.span();
        self.expect_punct("{")?;
        let mut stmts = Vec::new();
        while !self.is_punct("}") {
            if self.at_eof() {
                return self.error("unexpected end of file in block");
            }
            stmts.push(self.stmt()?);
        }
        let trailing_comments = self.take_comments();
        self.expect_punct("}")?;
        Ok(Block {
            stmts,
            trailing_comments,
            span: self.since(&begin),
        })
    }

    /// Body of an `if`/loop: a braced block, or a single statement wrapped in one.
    fn body(&mut self) -> PResult<Block> {
        if self.is_punct("{") {
            self.block()
        } else {
            let stmt = self.stmt()?;
            if matches!(stmt.kind, StmtKind::LocalVar(_)) {
                return Err(SyntaxError::new(stmt.span, "declaration not allowed here").into());
            }
            let span = stmt.span.clone();
            Ok(Block::new(vec![stmt], span))
        }
    }

    fn looks_like_local_decl(&self) -> PResult<bool> {
        match self.peek() {
            TokenKind::Keyword(k) => Ok(PrimitiveType::from_keyword(k).is_some() || *k == "final"),
            TokenKind::Ident(_) => {
                if self.is_punct_at(1, "<") {
                    return self.unsupported("generics");
                }
                if self.is_punct_at(1, "[") {
                    return self.unsupported("array");
                }
                if self.is_punct_at(1, ".")
                    && matches!(self.peek_at(2), TokenKind::Ident(_))
                    && matches!(self.peek_at(3), TokenKind::Ident(_))
                {
                    return self.unsupported("qualified-type");
                }
                Ok(matches!(self.peek_at(1), TokenKind::Ident(_)))
            }
            _ => Ok(false),
        }
    }

    /// `[final] Type name [= init]` without the terminating semicolon.
    fn local_var(&mut self) -> PResult<LocalVar> {
        let is_final = self.eat_kw("final");
        if self.is_punct("@") {
            return self.unsupported("annotation");
        }
        let inferred = matches!(self.peek(), TokenKind::Ident(n) if n == "var")
            && matches!(self.peek_at(1), TokenKind::Ident(_));
        let ty = if inferred {
            self.bump();
            TypeRef::Inferred
        } else {
            self.type_ref(false)?
        };
        let name = self.ident()?;
        self.check_type_suffix()?;
        let init = if self.eat_punct("=") { Some(self.expr()?) } else { None };
        if ty == TypeRef::Inferred && init.is_none() {
            return Err(SyntaxError::new(name.span, "`var` declaration needs an initializer").into());
        }
        Ok(LocalVar {
            is_final,
            ty,
            name,
            init,
        })
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let comments = self.take_comments();
        let begin = self.span();
        let kind = self.stmt_kind(&begin)?;
        Ok(Stmt {
            kind,
            span: self.since(&begin),
            comments,
        })
    }

    fn stmt_kind(&mut self, begin: &Span) -> PResult<StmtKind> {
        match self.peek().clone() {
            TokenKind::Punct("{") => Ok(StmtKind::Block(self.block()?)),
            TokenKind::Punct(";") => self.unsupported("empty-statement"),
            TokenKind::Keyword("if") => {
                self.bump();
                self.expect_punct("(")?;
                let cond = self.expr()?;
                self.expect_punct(")")?;
                let then_branch = self.body()?;
                let else_branch = if self.eat_kw("else") {
                    if self.is_kw("if") {
                        let nested = self.stmt()?;
                        let span = nested.span.clone();
                        Some(Block::new(vec![nested], span))
                    } else {
                        Some(self.body()?)
                    }
                } else {
                    None
                };
                Ok(StmtKind::If {
                    cond,
                    then_branch,
                    else_branch,
                })
            }
            TokenKind::Keyword("while") => {
                self.bump();
                self.expect_punct("(")?;
                let cond = self.expr()?;
                self.expect_punct(")")?;
                let body = self.body()?;
                Ok(StmtKind::While { cond, body })
            }
            TokenKind::Keyword("for") => self.for_stmt(),
            TokenKind::Keyword("switch") => self.switch_stmt(),
            TokenKind::Keyword("return") => {
                self.bump();
                let value = if self.is_punct(";") { None } else { Some(self.expr()?) };
                self.expect_punct(";")?;
                Ok(StmtKind::Return(value))
            }
            TokenKind::Keyword("break") => {
                self.bump();
                if matches!(self.peek(), TokenKind::Ident(_)) {
                    return self.unsupported("labeled-statement");
                }
                self.expect_punct(";")?;
                Ok(StmtKind::Break)
            }
            TokenKind::Keyword("continue") => {
                self.bump();
                if matches!(self.peek(), TokenKind::Ident(_)) {
                    return self.unsupported("labeled-statement");
                }
                self.expect_punct(";")?;
                Ok(StmtKind::Continue)
            }
            TokenKind::Keyword("throw") => {
                self.bump();
                let e = self.expr()?;
                self.expect_punct(";")?;
                Ok(StmtKind::Throw(e))
            }
            TokenKind::Keyword("do") => self.unsupported("do-while"),
            TokenKind::Keyword("try") => self.unsupported("try"),
            TokenKind::Keyword("synchronized") => self.unsupported("synchronized"),
            TokenKind::Keyword("assert") => self.unsupported("assert"),
            TokenKind::Keyword("class") | TokenKind::Keyword("interface") | TokenKind::Keyword("enum") => {
                self.unsupported("local-class")
            }
            TokenKind::Keyword("else") => self.error("`else` without `if`"),
            TokenKind::Ident(_) if self.is_punct_at(1, ":") => self.unsupported("labeled-statement"),
            _ if self.looks_like_local_decl()? => {
                let lv = self.local_var()?;
                if self.is_punct(",") {
                    return self.unsupported("multi-declaration");
                }
                self.expect_punct(";")?;
                Ok(StmtKind::LocalVar(lv))
            }
            _ => {
                let e = self.expr()?;
                if !is_statement_expr(&e) {
                    return Err(SyntaxError::new(begin.to(&self.last_span), "not a statement").into());
                }
                self.expect_punct(";")?;
                Ok(StmtKind::Expr(e))
            }
        }
    }

    fn for_stmt(&mut self) -> PResult<StmtKind> {
        self.expect_kw("for")?;
        self.expect_punct("(")?;
        let mut init = Vec::new();
        if !self.is_punct(";") {
            if self.looks_like_local_decl()? {
                let first_begin = self.span();
                let first = self.local_var()?;
                if self.is_punct(":") {
                    return self.unsupported("enhanced-for");
                }
                let ty = first.ty.clone();
                let is_final = first.is_final;
                init.push(Stmt::new(StmtKind::LocalVar(first), self.since(&first_begin)));
                while self.eat_punct(",") {
                    let begin = self.span();
                    let name = self.ident()?;
                    let value = if self.eat_punct("=") { Some(self.expr()?) } else { None };
                    init.push(Stmt::new(
                        StmtKind::LocalVar(LocalVar {
                            is_final,
                            ty: ty.clone(),
                            name,
                            init: value,
                        }),
                        self.since(&begin),
                    ));
                }
            } else {
                loop {
                    let begin = self.span();
                    let e = self.expr()?;
                    if !is_statement_expr(&e) {
                        return Err(SyntaxError::new(e.span, "not a statement").into());
                    }
                    init.push(Stmt::new(StmtKind::Expr(e), self.since(&begin)));
                    if !self.eat_punct(",") {
                        break;
                    }
                }
            }
        }
        self.expect_punct(";")?;
        let cond = if self.is_punct(";") { None } else { Some(self.expr()?) };
        self.expect_punct(";")?;
        let mut update = Vec::new();
        if !self.is_punct(")") {
            loop {
                let e = self.expr()?;
                if !is_statement_expr(&e) {
                    return Err(SyntaxError::new(e.span, "not a statement").into());
                }
                update.push(e);
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.expect_punct(")")?;
        let body = self.body()?;
        Ok(StmtKind::For {
            init,
            cond,
            update,
            body,
        })
    }

    fn case_label(&mut self) -> PResult<Literal> {
        match self.peek().clone() {
            TokenKind::Int { long: true, .. } => self.unsupported("long-literal"),
            TokenKind::Int { value, .. } => {
                if value > i32::MAX as u64 {
                    return self.error("integer literal out of range");
                }
                self.bump();
                Ok(Literal::Int(value as i32))
            }
            TokenKind::Punct("-") => {
                self.bump();
                match self.peek().clone() {
                    TokenKind::Int { value, long: false } if value <= 1 << 31 => {
                        self.bump();
                        Ok(Literal::Int((value as i64).wrapping_neg() as i32))
                    }
                    _ => self.error("expected integer literal"),
                }
            }
            TokenKind::Str(s) => {
                self.bump();
                Ok(Literal::Str(s))
            }
            TokenKind::Char => self.unsupported("char-literal"),
            _ => self.unsupported("non-literal-case-label"),
        }
    }

    fn switch_stmt(&mut self) -> PResult<StmtKind> {
        self.expect_kw("switch")?;
        self.expect_punct("(")?;
        let scrutinee = self.expr()?;
        self.expect_punct(")")?;
        self.expect_punct("{")?;
        let mut cases: Vec<SwitchCase> = Vec::new();
        let mut labels: Vec<CaseLabel> = Vec::new();
        let mut comments = Vec::new();
        let mut case_begin: Option<Span> = None;
        let mut seen: Vec<CaseLabel> = Vec::new();
        while !self.is_punct("}") {
            if self.at_eof() {
                return self.error("unexpected end of file in switch");
            }
            comments.extend(self.take_comments());
            let mut group = false;
            loop {
                let label_span = self.span();
                let label = if self.eat_kw("case") {
                    CaseLabel::Literal(self.case_label()?)
                } else if self.eat_kw("default") {
                    CaseLabel::Default
                } else {
                    break;
                };
                if self.is_punct("->") {
                    return self.unsupported("switch-arrow");
                }
                if self.is_punct(",") {
                    return self.unsupported("multi-label-case");
                }
                self.expect_punct(":")?;
                if seen.contains(&label) {
                    return Err(SyntaxError::new(label_span, "duplicate case label").into());
                }
                seen.push(label.clone());
                case_begin.get_or_insert(label_span);
                labels.push(label);
                group = true;
                comments.extend(self.take_comments());
            }
            if !group {
                return self.error(format!("expected `case` or `default`, found {}", self.peek()));
            }
            let mut body = Vec::new();
            while !(self.is_kw("case") || self.is_kw("default") || self.is_punct("}")) {
                if self.at_eof() {
                    return self.error("unexpected end of file in switch");
                }
                body.push(self.stmt()?);
            }
            let terminated = matches!(body.last(), Some(s) if s.kind == StmtKind::Break && s.comments.is_empty());
            if terminated {
                body.pop();
            }
            if body.is_empty() && !terminated && !self.is_punct("}") {
                // `case 1: case 2:` shares one body
                continue;
            }
            let begin = case_begin.take().expect("case has a label");
            cases.push(SwitchCase {
                comments: std::mem::take(&mut comments),
                labels: std::mem::take(&mut labels),
                body,
                terminated,
                span: self.since(&begin),
            });
        }
        if !comments.is_empty() {
            // comments before the closing brace attach to the last case
            if let Some(last) = cases.last_mut() {
                last.comments.extend(comments);
            }
        }
        self.expect_punct("}")?;
        Ok(StmtKind::Switch { scrutinee, cases })
    }

    // ---- expressions ----

    fn expr(&mut self) -> PResult<Expr> {
        let begin = self.span();
        let lhs = self.ternary()?;
        if self.is_punct("->") {
            return self.unsupported("lambda");
        }
        if matches!(self.peek(), TokenKind::Punct(p) if matches!(*p, "+=" | "-=" | "*=" | "/=" | "%=" | "&=" | "|=" | "^=" | "<<=" | ">>=" | ">>>="))
        {
            return self.unsupported("compound-assignment");
        }
        if self.is_punct("=") {
            if !matches!(lhs.kind, ExprKind::Name(_) | ExprKind::FieldAccess { .. }) {
                return self.error("invalid assignment target");
            }
            self.bump();
            let value = self.expr()?;
            return Ok(Expr::new(
                ExprKind::Assign {
                    target: Box::new(lhs),
                    value: Box::new(value),
                },
                self.since(&begin),
            ));
        }
        Ok(lhs)
    }

    fn ternary(&mut self) -> PResult<Expr> {
        let begin = self.span();
        let cond = self.binary(3)?;
        if self.eat_punct("?") {
            let then_expr = self.expr()?;
            self.expect_punct(":")?;
            let else_expr = self.ternary()?;
            if self.is_punct("->") {
                return self.unsupported("lambda");
            }
            return Ok(Expr::new(
                ExprKind::Ternary {
                    cond: Box::new(cond),
                    then_expr: Box::new(then_expr),
                    else_expr: Box::new(else_expr),
                },
                self.since(&begin),
            ));
        }
        Ok(cond)
    }

    fn binary(&mut self, min_prec: u8) -> PResult<Expr> {
        let begin = self.span();
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                TokenKind::Punct(p) => match BinaryOp::from_symbol(p) {
                    Some(op) => op,
                    None if matches!(*p, "&" | "|" | "^" | "<<" | ">>" | ">>>") => {
                        return self.unsupported("bitwise-operator")
                    }
                    None => break,
                },
                TokenKind::Keyword("instanceof") => return self.unsupported("instanceof"),
                _ => break,
            };
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            self.bump();
            let rhs = self.binary(prec + 1)?;
            lhs = Expr::new(
                ExprKind::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                self.since(&begin),
            );
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        let begin = self.span();
        match self.peek() {
            TokenKind::Punct("!") => {
                self.bump();
                let operand = self.unary()?;
                Ok(Expr::new(
                    ExprKind::Unary {
                        op: UnaryOp::Not,
                        operand: Box::new(operand),
                    },
                    self.since(&begin),
                ))
            }
            TokenKind::Punct("-") => {
                self.bump();
                let operand = match self.peek().clone() {
                    // -2147483648 is the one literal that only exists negated
                    TokenKind::Int { value, long: false } if value == 1 << 31 => {
                        let tok = self.bump();
                        let e = Expr::new(ExprKind::Literal(Literal::Int(i32::MIN)), tok.span);
                        self.postfix(e)?
                    }
                    _ => self.unary()?,
                };
                Ok(Expr::new(
                    ExprKind::Unary {
                        op: UnaryOp::Neg,
                        operand: Box::new(operand),
                    },
                    self.since(&begin),
                ))
            }
            TokenKind::Punct("+") => self.unsupported("unary-plus"),
            TokenKind::Punct("~") => self.unsupported("bitwise-operator"),
            TokenKind::Punct("++") | TokenKind::Punct("--") => self.unsupported("increment"),
            _ => {
                let primary = self.primary()?;
                self.postfix(primary)
            }
        }
    }

    fn postfix(&mut self, mut expr: Expr) -> PResult<Expr> {
        let begin = expr.span.clone();
        loop {
            if self.is_punct(".") {
                self.bump();
                match self.peek() {
                    TokenKind::Keyword("class") => return self.unsupported("class-literal"),
                    TokenKind::Keyword("new") => return self.unsupported("inner-class"),
                    TokenKind::Keyword("this") => return self.unsupported("qualified-this"),
                    TokenKind::Punct("<") => return self.unsupported("generics"),
                    _ => {}
                }
                let name = self.ident()?;
                if self.is_punct("(") {
                    let args = self.args()?;
                    expr = Expr::new(
                        ExprKind::Call {
                            receiver: Some(Box::new(expr)),
                            method: name,
                            args,
                        },
                        self.since(&begin),
                    );
                } else {
                    expr = Expr::new(
                        ExprKind::FieldAccess {
                            target: Box::new(expr),
                            field: name,
                        },
                        self.since(&begin),
                    );
                }
            } else if self.is_punct("[") {
                return self.unsupported("array");
            } else if self.is_punct("++") || self.is_punct("--") {
                return self.unsupported("increment");
            } else if self.is_punct("::") {
                return self.unsupported("method-reference");
            } else {
                return Ok(expr);
            }
        }
    }

    fn args(&mut self) -> PResult<Vec<Expr>> {
        self.expect_punct("(")?;
        let mut args = Vec::new();
        if !self.is_punct(")") {
            loop {
                args.push(self.expr()?);
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.expect_punct(")")?;
        Ok(args)
    }

    /// Index just past the `)` matching the `(` at the current position.
    fn matching_paren(&self) -> Option<usize> {
        let mut depth = 0usize;
        for (i, tok) in self.tokens[self.pos..].iter().enumerate() {
            match tok.kind {
                TokenKind::Punct("(") => depth += 1,
                TokenKind::Punct(")") => {
                    depth -= 1;
                    if depth == 0 {
                        return Some(i + 1);
                    }
                }
                TokenKind::Eof => return None,
                _ => {}
            }
        }
        None
    }

    fn primary(&mut self) -> PResult<Expr> {
        let begin = self.span();
        let lit = |p: &mut Self, l: Literal| {
            let tok = p.bump();
            Ok(Expr::new(ExprKind::Literal(l), tok.span))
        };
        match self.peek().clone() {
            TokenKind::Int { long: true, .. } => self.unsupported("long-literal"),
            TokenKind::Int { value, .. } => {
                if value > i32::MAX as u64 {
                    return self.error("integer literal out of range");
                }
                lit(self, Literal::Int(value as i32))
            }
            TokenKind::Str(s) => lit(self, Literal::Str(s)),
            TokenKind::Float => self.unsupported("floating-point"),
            TokenKind::Char => self.unsupported("char-literal"),
            TokenKind::Keyword("true") => lit(self, Literal::Bool(true)),
            TokenKind::Keyword("false") => lit(self, Literal::Bool(false)),
            TokenKind::Keyword("null") => lit(self, Literal::Null),
            TokenKind::Keyword("this") => {
                if self.is_punct_at(1, "(") {
                    return self.unsupported("constructor-call");
                }
                let tok = self.bump();
                Ok(Expr::new(ExprKind::This, tok.span))
            }
            TokenKind::Keyword("super") => self.unsupported("super"),
            TokenKind::Keyword("switch") => self.unsupported("switch-expression"),
            TokenKind::Keyword("new") => {
                self.bump();
                if matches!(self.peek(), TokenKind::Keyword(k) if PrimitiveType::from_keyword(k).is_some()) {
                    return self.unsupported("array");
                }
                let class = self.ident()?;
                if self.is_punct(".") {
                    return self.unsupported("qualified-type");
                }
                self.check_type_suffix()?;
                let args = self.args()?;
                if self.is_punct("{") {
                    return self.unsupported("anonymous-class");
                }
                Ok(Expr::new(ExprKind::New { class, args }, self.since(&begin)))
            }
            TokenKind::Punct("(") => {
                if let Some(after) = self.matching_paren() {
                    if self.is_punct_at(after, "->") {
                        return self.unsupported("lambda");
                    }
                    // (Type) operand
                    let is_type = match (self.peek_at(1), after) {
                        (TokenKind::Keyword(k), 3) => PrimitiveType::from_keyword(k).is_some(),
                        (TokenKind::Ident(_), 3) => matches!(
                            self.peek_at(after),
                            TokenKind::Ident(_)
                                | TokenKind::Int { .. }
                                | TokenKind::Str(_)
                                | TokenKind::Keyword("this" | "new" | "true" | "false" | "null")
                                | TokenKind::Punct("(" | "!")
                        ),
                        _ => false,
                    };
                    if is_type {
                        return self.unsupported("cast");
                    }
                }
                self.bump();
                let mut inner = self.expr()?;
                self.expect_punct(")")?;
                // parentheses are not kept in the tree; widen the span to cover them
                inner.span = self.since(&begin);
                Ok(inner)
            }
            TokenKind::Ident(_) => {
                let name = self.ident()?;
                if self.is_punct("(") {
                    let args = self.args()?;
                    Ok(Expr::new(
                        ExprKind::Call {
                            receiver: None,
                            method: name,
                            args,
                        },
                        self.since(&begin),
                    ))
                } else {
                    let span = name.span.clone();
                    Ok(Expr::new(ExprKind::Name(name), span))
                }
            }
            TokenKind::Punct("@") => self.unsupported("annotation"),
            other => self.error(format!("expected expression, found {other}")),
        }
    }
}

fn is_statement_expr(e: &Expr) -> bool {
    matches!(
        e.kind,
        ExprKind::Assign { .. } | ExprKind::Call { .. } | ExprKind::New { .. }
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unsupported(src: &str) -> &'static str {
        match parse(src, "T.java") {
            Err(ParseError::UnsupportedConstruct { construct, .. }) => construct,
            other => panic!("expected unsupported construct, got {other:?}"),
        }
    }

    fn method_body(src: &str) -> Vec<Stmt> {
        let file = parse(src, "T.java").unwrap();
        let stmts = file.types[0].methods().next().unwrap().body.stmts.clone();
        stmts
    }

    #[test]
    fn minimal_program() {
        let file = parse("class A { void f() {} }", "A.java").unwrap();
        assert_eq!(file.types.len(), 1);
        let methods: Vec<_> = file.types[0].methods().collect();
        assert_eq!(methods.len(), 1);
        assert!(methods[0].body.stmts.is_empty());
        assert_eq!(methods[0].return_type, Some(TypeRef::Void));
    }

    #[test]
    fn if_without_else() {
        let body = method_body("class A { void f() { if (x) {a();} } }");
        match &body[0].kind {
            StmtKind::If {
                else_branch,
                then_branch,
                ..
            } => {
                assert!(else_branch.is_none());
                assert_eq!(then_branch.stmts.len(), 1);
            }
            other => panic!("expected if, got {other:?}"),
        }
    }

    #[test]
    fn lambda_is_rejected() {
        assert_eq!(unsupported("class A { void f() { g(x -> x + 1); } }"), "lambda");
        assert_eq!(unsupported("class A { void f() { g((x, y) -> x); } }"), "lambda");
    }

    #[test]
    fn subset_boundaries() {
        assert_eq!(unsupported("class A { List<String> xs; }"), "generics");
        assert_eq!(unsupported("class A { void f() { List<String> xs = g(); } }"), "generics");
        assert_eq!(unsupported("class A { void f() { g(new B() { }); } }"), "anonymous-class");
        assert_eq!(unsupported("class A { void f() { outer: while (true) { } } }"), "labeled-statement");
        assert_eq!(unsupported("class A { void f() { i++; } }"), "increment");
        assert_eq!(unsupported("class A { void f() { x += 1; } }"), "compound-assignment");
        assert_eq!(unsupported("class A { void f() { int[] a = g(); } }"), "array");
        assert_eq!(unsupported("class A { void f() { try { } finally { } } }"), "try");
        assert_eq!(unsupported("@Deprecated class A { }"), "annotation");
        assert_eq!(unsupported("class A { void f() { double d = 1.5; } }"), "floating-point");
        assert_eq!(unsupported("class A { void f() { int x = (int) y; } }"), "cast");
        assert_eq!(unsupported("interface A { }"), "interface");
        assert_eq!(unsupported("class A { void f() { for (String s : xs) { } } }"), "enhanced-for");
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse("class A { void f() { a() } }", "T"), Err(ParseError::Syntax(_))));
        assert!(matches!(parse("class A { void f() { x + 1; } }", "T"), Err(ParseError::Syntax(_))));
        assert!(matches!(parse("class A { void f(int a, int a) {} }", "T"), Err(ParseError::Syntax(_))));
        assert!(matches!(parse("class A { int x = 2147483648; }", "T"), Err(ParseError::Syntax(_))));
        assert!(matches!(
            parse("class A { void f() { switch (k) { case 1: case 1: a(); } } }", "T"),
            Err(ParseError::Syntax(_))
        ));
    }

    #[test]
    fn min_int_literal() {
        let e = parse_expr("-2147483648").unwrap();
        match e.kind {
            ExprKind::Unary { op: UnaryOp::Neg, operand } => {
                assert_eq!(operand.kind, ExprKind::Literal(Literal::Int(i32::MIN)))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precedence_and_assoc() {
        let e = parse_expr("a - b - c").unwrap();
        let ExprKind::Binary { lhs, .. } = e.kind else { panic!() };
        assert!(matches!(lhs.kind, ExprKind::Binary { op: BinaryOp::Sub, .. }));
        let e = parse_expr("a || b && c").unwrap();
        let ExprKind::Binary { op, rhs, .. } = e.kind else { panic!() };
        assert_eq!(op, BinaryOp::Or);
        assert!(matches!(rhs.kind, ExprKind::Binary { op: BinaryOp::And, .. }));
        let e = parse_expr("a = b = c").unwrap();
        let ExprKind::Assign { value, .. } = e.kind else { panic!() };
        assert!(matches!(value.kind, ExprKind::Assign { .. }));
    }

    #[test]
    fn call_chains_are_left_nested() {
        let e = parse_expr("value.getClass().equals(x)").unwrap();
        let ExprKind::Call { receiver, method, .. } = e.kind else { panic!() };
        assert_eq!(method.name, "equals");
        let ExprKind::Call { method, receiver, .. } = receiver.unwrap().kind else { panic!() };
        assert_eq!(method.name, "getClass");
        assert_eq!(receiver.unwrap().as_name(), Some("value"));
    }

    #[test]
    fn switch_groups_labels_and_tracks_break() {
        let body = method_body(
            "class A { void f() { switch (k) { case 1: case 2: a(); break; case -3: b(); default: c(); } } }",
        );
        let StmtKind::Switch { cases, .. } = &body[0].kind else { panic!() };
        assert_eq!(cases.len(), 3);
        assert_eq!(
            cases[0].labels,
            vec![CaseLabel::Literal(Literal::Int(1)), CaseLabel::Literal(Literal::Int(2))]
        );
        assert!(cases[0].terminated);
        assert_eq!(cases[1].labels, vec![CaseLabel::Literal(Literal::Int(-3))]);
        assert!(!cases[1].terminated);
        assert_eq!(cases[2].labels, vec![CaseLabel::Default]);
    }

    #[test]
    fn comments_attach_to_following_statement() {
        let body = method_body("class A { void f() {\n /* BUG: x FIXED: */\n a();\n // end\n } }");
        assert_eq!(body[0].comments[0].text, "/* BUG: x FIXED: */");
        let file = parse("class A { void f() {\n a();\n // end\n } }", "T").unwrap();
        let m = file.types[0].methods().next().unwrap();
        assert_eq!(m.body.trailing_comments[0].text, "// end");
    }

    #[test]
    fn for_with_multiple_declarators() {
        let body = method_body("class A { void f() { for (int i = 0, j = 1; i < j; i = i + 1, j = j - 1) { } } }");
        let StmtKind::For { init, update, .. } = &body[0].kind else { panic!() };
        assert_eq!(init.len(), 2);
        assert_eq!(update.len(), 2);
    }

    #[test]
    fn constructors_and_fields() {
        let file = parse(
            "public class Box extends Base implements Shape { private int size = 1; Box(int s) { size = s; } }",
            "Box.java",
        )
        .unwrap();
        let class = &file.types[0];
        assert_eq!(class.extends.as_ref().unwrap().name, "Base");
        assert_eq!(class.fields().count(), 1);
        assert!(class.methods().next().unwrap().is_constructor());
    }
}
