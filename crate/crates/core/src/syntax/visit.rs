//! Generic tree walkers. Override the hooks you need and call the matching
//! `walk_*` function to keep descending.

use super::ast::*;
use crate::span::Span;

pub trait Visitor<'ast> {
    fn visit_ident(&mut self, _ident: &'ast Ident) {}

    fn visit_type(&mut self, ty: &'ast TypeRef) {
        if let TypeRef::Named(id) = ty {
            self.visit_ident(id);
        }
    }

    fn visit_expr(&mut self, expr: &'ast Expr) {
        walk_expr(self, expr);
    }

    fn visit_stmt(&mut self, stmt: &'ast Stmt) {
        walk_stmt(self, stmt);
    }

    fn visit_block(&mut self, block: &'ast Block) {
        walk_block(self, block);
    }
}

pub fn walk_file<'a, V: Visitor<'a> + ?Sized>(v: &mut V, file: &'a SourceFile) {
    for import in &file.imports {
        if !import.wildcard {
            if let Some(last) = import.path.segments.last() {
                v.visit_ident(last);
            }
        }
    }
    for class in &file.types {
        walk_class(v, class);
    }
}

pub fn walk_class<'a, V: Visitor<'a> + ?Sized>(v: &mut V, class: &'a ClassDecl) {
    v.visit_ident(&class.name);
    if let Some(ext) = &class.extends {
        v.visit_ident(ext);
    }
    for i in &class.implements {
        v.visit_ident(i);
    }
    for member in &class.members {
        match member {
            Member::Field(f) => {
                v.visit_type(&f.ty);
                v.visit_ident(&f.name);
                if let Some(init) = &f.init {
                    v.visit_expr(init);
                }
            }
            Member::Method(m) => walk_method(v, m),
        }
    }
}

pub fn walk_method<'a, V: Visitor<'a> + ?Sized>(v: &mut V, m: &'a MethodDecl) {
    if let Some(rt) = &m.return_type {
        v.visit_type(rt);
    }
    v.visit_ident(&m.name);
    for p in &m.params {
        v.visit_type(&p.ty);
        v.visit_ident(&p.name);
    }
    for t in &m.throws {
        v.visit_ident(t);
    }
    v.visit_block(&m.body);
}

pub fn walk_block<'a, V: Visitor<'a> + ?Sized>(v: &mut V, block: &'a Block) {
    for s in &block.stmts {
        v.visit_stmt(s);
    }
}

pub fn walk_stmt<'a, V: Visitor<'a> + ?Sized>(v: &mut V, stmt: &'a Stmt) {
    match &stmt.kind {
        StmtKind::Block(b) => v.visit_block(b),
        StmtKind::If {
            cond,
            then_branch,
            else_branch,
        } => {
            v.visit_expr(cond);
            v.visit_block(then_branch);
            if let Some(e) = else_branch {
                v.visit_block(e);
            }
        }
        StmtKind::While { cond, body } => {
            v.visit_expr(cond);
            v.visit_block(body);
        }
        StmtKind::For {
            init,
            cond,
            update,
            body,
        } => {
            for s in init {
                v.visit_stmt(s);
            }
            if let Some(c) = cond {
                v.visit_expr(c);
            }
            for u in update {
                v.visit_expr(u);
            }
            v.visit_block(body);
        }
        StmtKind::Switch { scrutinee, cases } => {
            v.visit_expr(scrutinee);
            for case in cases {
                for s in &case.body {
                    v.visit_stmt(s);
                }
            }
        }
        StmtKind::LocalVar(lv) => {
            v.visit_type(&lv.ty);
            v.visit_ident(&lv.name);
            if let Some(init) = &lv.init {
                v.visit_expr(init);
            }
        }
        StmtKind::Expr(e) | StmtKind::Throw(e) => v.visit_expr(e),
        StmtKind::Return(e) => {
            if let Some(e) = e {
                v.visit_expr(e);
            }
        }
        StmtKind::Break | StmtKind::Continue => {}
    }
}

pub fn walk_expr<'a, V: Visitor<'a> + ?Sized>(v: &mut V, expr: &'a Expr) {
    match &expr.kind {
        ExprKind::Name(id) => v.visit_ident(id),
        ExprKind::Literal(_) | ExprKind::This => {}
        ExprKind::Unary { operand, .. } => v.visit_expr(operand),
        ExprKind::Binary { lhs, rhs, .. } => {
            v.visit_expr(lhs);
            v.visit_expr(rhs);
        }
        ExprKind::Ternary {
            cond,
            then_expr,
            else_expr,
        } => {
            v.visit_expr(cond);
            v.visit_expr(then_expr);
            v.visit_expr(else_expr);
        }
        ExprKind::Call {
            receiver,
            method,
            args,
        } => {
            if let Some(r) = receiver {
                v.visit_expr(r);
            }
            v.visit_ident(method);
            for a in args {
                v.visit_expr(a);
            }
        }
        ExprKind::FieldAccess { target, field } => {
            v.visit_expr(target);
            v.visit_ident(field);
        }
        ExprKind::Assign { target, value } => {
            v.visit_expr(target);
            v.visit_expr(value);
        }
        ExprKind::New { class, args } => {
            v.visit_ident(class);
            for a in args {
                v.visit_expr(a);
            }
        }
    }
}

/// Mutable walker. Every span in the tree passes through `visit_span`.
pub trait VisitorMut {
    fn visit_span(&mut self, _span: &mut Span) {}

    fn visit_file_path(&mut self, _path: &mut std::sync::Arc<str>) {}

    fn visit_ident(&mut self, ident: &mut Ident) {
        self.visit_span(&mut ident.span);
    }

    fn visit_comment(&mut self, comment: &mut Comment) {
        self.visit_span(&mut comment.span);
    }

    fn visit_type(&mut self, ty: &mut TypeRef) {
        if let TypeRef::Named(id) = ty {
            self.visit_ident(id);
        }
    }

    fn visit_expr(&mut self, expr: &mut Expr) {
        walk_expr_mut(self, expr);
    }

    fn visit_stmt(&mut self, stmt: &mut Stmt) {
        walk_stmt_mut(self, stmt);
    }

    fn visit_block(&mut self, block: &mut Block) {
        walk_block_mut(self, block);
    }
}

fn comments_mut<V: VisitorMut + ?Sized>(v: &mut V, comments: &mut [Comment]) {
    for c in comments {
        v.visit_comment(c);
    }
}

pub fn walk_file_mut<V: VisitorMut + ?Sized>(v: &mut V, file: &mut SourceFile) {
    v.visit_file_path(&mut file.path);
    v.visit_span(&mut file.span);
    comments_mut(v, &mut file.header_comments);
    if let Some(pkg) = &mut file.package {
        for seg in &mut pkg.segments {
            v.visit_span(&mut seg.span);
        }
    }
    for import in &mut file.imports {
        v.visit_span(&mut import.span);
        comments_mut(v, &mut import.comments);
        let n = import.path.segments.len();
        for (i, seg) in import.path.segments.iter_mut().enumerate() {
            if i + 1 == n && !import.wildcard {
                v.visit_ident(seg);
            } else {
                v.visit_span(&mut seg.span);
            }
        }
    }
    for class in &mut file.types {
        walk_class_mut(v, class);
    }
    comments_mut(v, &mut file.trailing_comments);
}

pub fn walk_class_mut<V: VisitorMut + ?Sized>(v: &mut V, class: &mut ClassDecl) {
    v.visit_span(&mut class.span);
    comments_mut(v, &mut class.comments);
    v.visit_ident(&mut class.name);
    if let Some(ext) = &mut class.extends {
        v.visit_ident(ext);
    }
    for i in &mut class.implements {
        v.visit_ident(i);
    }
    for member in &mut class.members {
        match member {
            Member::Field(f) => {
                v.visit_span(&mut f.span);
                comments_mut(v, &mut f.comments);
                v.visit_type(&mut f.ty);
                v.visit_ident(&mut f.name);
                if let Some(init) = &mut f.init {
                    v.visit_expr(init);
                }
            }
            Member::Method(m) => walk_method_mut(v, m),
        }
    }
    comments_mut(v, &mut class.trailing_comments);
}

pub fn walk_method_mut<V: VisitorMut + ?Sized>(v: &mut V, m: &mut MethodDecl) {
    v.visit_span(&mut m.span);
    comments_mut(v, &mut m.comments);
    if let Some(rt) = &mut m.return_type {
        v.visit_type(rt);
    }
    v.visit_ident(&mut m.name);
    for p in &mut m.params {
        v.visit_type(&mut p.ty);
        v.visit_ident(&mut p.name);
    }
    for t in &mut m.throws {
        v.visit_ident(t);
    }
    v.visit_block(&mut m.body);
}

pub fn walk_block_mut<V: VisitorMut + ?Sized>(v: &mut V, block: &mut Block) {
    v.visit_span(&mut block.span);
    for s in &mut block.stmts {
        v.visit_stmt(s);
    }
    comments_mut(v, &mut block.trailing_comments);
}

pub fn walk_stmt_mut<V: VisitorMut + ?Sized>(v: &mut V, stmt: &mut Stmt) {
    v.visit_span(&mut stmt.span);
    comments_mut(v, &mut stmt.comments);
    match &mut stmt.kind {
        StmtKind::Block(b) => v.visit_block(b),
        StmtKind::If {
            cond,
            then_branch,
            else_branch,
        } => {
            v.visit_expr(cond);
            v.visit_block(then_branch);
            if let Some(e) = else_branch {
                v.visit_block(e);
            }
        }
        StmtKind::While { cond, body } => {
            v.visit_expr(cond);
            v.visit_block(body);
        }
        StmtKind::For {
            init,
            cond,
            update,
            body,
        } => {
            for s in init {
                v.visit_stmt(s);
            }
            if let Some(c) = cond {
                v.visit_expr(c);
            }
            for u in update {
                v.visit_expr(u);
            }
            v.visit_block(body);
        }
        StmtKind::Switch { scrutinee, cases } => {
            v.visit_expr(scrutinee);
            for case in cases {
                v.visit_span(&mut case.span);
                comments_mut(v, &mut case.comments);
                for s in &mut case.body {
                    v.visit_stmt(s);
                }
            }
        }
        StmtKind::LocalVar(lv) => {
            v.visit_type(&mut lv.ty);
            v.visit_ident(&mut lv.name);
            if let Some(init) = &mut lv.init {
                v.visit_expr(init);
            }
        }
        StmtKind::Expr(e) | StmtKind::Throw(e) => v.visit_expr(e),
        StmtKind::Return(e) => {
            if let Some(e) = e {
                v.visit_expr(e);
            }
        }
        StmtKind::Break | StmtKind::Continue => {}
    }
}

pub fn walk_expr_mut<V: VisitorMut + ?Sized>(v: &mut V, expr: &mut Expr) {
    v.visit_span(&mut expr.span);
    match &mut expr.kind {
        ExprKind::Name(id) => v.visit_ident(id),
        ExprKind::Literal(_) | ExprKind::This => {}
        ExprKind::Unary { operand, .. } => v.visit_expr(operand),
        ExprKind::Binary { lhs, rhs, .. } => {
            v.visit_expr(lhs);
            v.visit_expr(rhs);
        }
        ExprKind::Ternary {
            cond,
            then_expr,
            else_expr,
        } => {
            v.visit_expr(cond);
            v.visit_expr(then_expr);
            v.visit_expr(else_expr);
        }
        ExprKind::Call {
            receiver,
            method,
            args,
        } => {
            if let Some(r) = receiver {
                v.visit_expr(r);
            }
            v.visit_ident(method);
            for a in args {
                v.visit_expr(a);
            }
        }
        ExprKind::FieldAccess { target, field } => {
            v.visit_expr(target);
            v.visit_ident(field);
        }
        ExprKind::Assign { target, value } => {
            v.visit_expr(target);
            v.visit_expr(value);
        }
        ExprKind::New { class, args } => {
            v.visit_ident(class);
            for a in args {
                v.visit_expr(a);
            }
        }
    }
}

/// Tree types that can be handed to a [`VisitorMut`].
pub trait Walk {
    fn walk_mut<V: VisitorMut + ?Sized>(&mut self, v: &mut V);
}

impl Walk for SourceFile {
    fn walk_mut<V: VisitorMut + ?Sized>(&mut self, v: &mut V) {
        walk_file_mut(v, self);
    }
}

impl Walk for ClassDecl {
    fn walk_mut<V: VisitorMut + ?Sized>(&mut self, v: &mut V) {
        walk_class_mut(v, self);
    }
}

impl Walk for MethodDecl {
    fn walk_mut<V: VisitorMut + ?Sized>(&mut self, v: &mut V) {
        walk_method_mut(v, self);
    }
}

impl Walk for Block {
    fn walk_mut<V: VisitorMut + ?Sized>(&mut self, v: &mut V) {
        v.visit_block(self);
    }
}

impl Walk for Stmt {
    fn walk_mut<V: VisitorMut + ?Sized>(&mut self, v: &mut V) {
        v.visit_stmt(self);
    }
}

impl Walk for Expr {
    fn walk_mut<V: VisitorMut + ?Sized>(&mut self, v: &mut V) {
        v.visit_expr(self);
    }
}

impl<T: Walk> Walk for Vec<T> {
    fn walk_mut<V: VisitorMut + ?Sized>(&mut self, v: &mut V) {
        for item in self {
            item.walk_mut(v);
        }
    }
}

struct SpanEraser;

impl VisitorMut for SpanEraser {
    fn visit_span(&mut self, span: &mut Span) {
        *span = Span::dummy();
    }

    fn visit_file_path(&mut self, path: &mut std::sync::Arc<str>) {
        *path = std::sync::Arc::from("");
    }
}

/// Replace every span in `node` with [`Span::dummy`] and clear file paths.
pub fn erase_spans<T: Walk>(node: &mut T) {
    node.walk_mut(&mut SpanEraser);
}
