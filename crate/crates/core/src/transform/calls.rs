use super::effects::{expr_effects, trivially_pure};
use super::env::MethodEnv;
use super::{TransformError, TransformRule};
use crate::syntax::visit::{walk_expr, Visitor};
use crate::syntax::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainDirection {
    /// `a.f().g()` becomes `T t = a.f(); t.g()`.
    Split,
    /// The inverse: a variable used once as a receiver is inlined.
    Merge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgDirection {
    /// `f(g(x))` becomes `T t = g(x); f(t)`.
    Extract,
    /// The inverse: a variable used once as an argument is inlined.
    Inline,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Site {
    Receiver,
    Argument,
}

enum Mode {
    Hoist(Site),
    Substitute(Site, String, Option<Expr>),
}

/// Walks an expression in evaluation order looking for one sub-expression
/// to move. A candidate only qualifies if everything evaluated before it is
/// trivially pure and it is evaluated unconditionally, so moving it across
/// that prefix cannot be observed.
struct Mover<'e, 'a> {
    env: &'e mut MethodEnv<'a>,
    mode: Mode,
    pure: bool,
    conditional: bool,
    hoisted: Option<(TypeRef, String, Expr)>,
}

impl<'e, 'a> Mover<'e, 'a> {
    fn new(env: &'e mut MethodEnv<'a>, mode: Mode) -> Self {
        Mover {
            env,
            mode,
            pure: true,
            conditional: false,
            hoisted: None,
        }
    }

    fn try_take(&mut self, slot: &mut Expr, site: Site) -> bool {
        if self.conditional || !self.pure {
            return false;
        }
        match &mut self.mode {
            Mode::Hoist(s) => {
                if *s != site || !matches!(slot.kind, ExprKind::Call { .. } | ExprKind::New { .. }) {
                    return false;
                }
                let ty = self.env.declared_type(slot);
                let name = self.env.fresh_name(slot);
                self.env.declare_local(&name, ty.clone());
                let placeholder = Expr::name(&name, slot.span.clone());
                let value = std::mem::replace(slot, placeholder);
                self.hoisted = Some((ty, name, value));
                true
            }
            Mode::Substitute(s, var, replacement) => {
                if *s != site || slot.as_name() != Some(var.as_str()) {
                    return false;
                }
                *slot = replacement.take().expect("substituted once");
                true
            }
        }
    }

    fn guarded(&mut self, e: &mut Expr) -> bool {
        let saved = self.conditional;
        self.conditional = true;
        let done = self.walk(e);
        self.conditional = saved;
        done
    }

    fn receiver(&mut self, r: &mut Expr) -> bool {
        if matches!(self.mode, Mode::Hoist(Site::Receiver)) {
            // innermost first: deeper receivers are hoisted before this one
            let before = self.pure;
            if self.walk(r) {
                return true;
            }
            let after = self.pure;
            self.pure = before;
            if self.try_take(r, Site::Receiver) {
                return true;
            }
            self.pure = after;
            false
        } else {
            self.try_take(r, Site::Receiver) || self.walk(r)
        }
    }

    fn args(&mut self, args: &mut [Expr]) -> bool {
        args.iter_mut().any(|a| self.try_take(a, Site::Argument) || self.walk(a))
    }

    fn walk(&mut self, e: &mut Expr) -> bool {
        let done = match &mut e.kind {
            ExprKind::Name(_) | ExprKind::Literal(_) | ExprKind::This => false,
            ExprKind::Unary { operand, .. } => self.walk(operand),
            ExprKind::Binary { op, lhs, rhs } => {
                let short_circuit = matches!(op, BinaryOp::And | BinaryOp::Or);
                self.walk(lhs) || if short_circuit { self.guarded(rhs) } else { self.walk(rhs) }
            }
            ExprKind::Ternary {
                cond,
                then_expr,
                else_expr,
            } => self.walk(cond) || self.guarded(then_expr) || self.guarded(else_expr),
            ExprKind::Call { receiver, args, .. } => {
                receiver.as_deref_mut().is_some_and(|r| self.receiver(r)) || self.args(args)
            }
            ExprKind::FieldAccess { target, .. } => self.walk(target),
            ExprKind::Assign { target, value } => {
                let in_target = match &mut target.kind {
                    ExprKind::FieldAccess { target: obj, .. } => self.walk(obj),
                    _ => false,
                };
                in_target || self.walk(value)
            }
            ExprKind::New { args, .. } => self.args(args),
        };
        if !done {
            self.pure &= trivially_pure(e, self.env);
        }
        done
    }
}

/// The expression of `s` that rewrites may touch.
fn root_mut(s: &mut Stmt) -> Option<&mut Expr> {
    match &mut s.kind {
        StmtKind::Expr(e) | StmtKind::Return(Some(e)) | StmtKind::Throw(e) => Some(e),
        StmtKind::LocalVar(v) => v.init.as_mut(),
        StmtKind::If { cond, .. } => Some(cond),
        _ => None,
    }
}

fn declaration(ty: TypeRef, name: String, value: Expr) -> Stmt {
    let span = value.span.clone();
    Stmt::new(
        StmtKind::LocalVar(LocalVar {
            is_final: false,
            ty,
            name: Ident::new(name, span.clone()),
            init: Some(value),
        }),
        span,
    )
}

/// Hoists every qualifying sub-expression of `s` into declarations placed
/// before it. Declarations produced here are not revisited.
fn hoist_all(s: &Stmt, site: Site, env: &mut MethodEnv) -> Option<Vec<Stmt>> {
    let mut cur = s.clone();
    let mut decls = Vec::new();
    loop {
        let Some(root) = root_mut(&mut cur) else { break };
        let mut mover = Mover::new(env, Mode::Hoist(site));
        if !mover.walk(root) {
            break;
        }
        let (ty, name, value) = mover.hoisted.expect("hoisted on success");
        decls.push(declaration(ty, name, value));
    }
    if decls.is_empty() {
        return None;
    }
    decls[0].comments = std::mem::take(&mut cur.comments);
    decls.push(cur);
    Some(decls)
}

fn hoist_block(block: &Block, site: Site, env: &mut MethodEnv) -> Option<Block> {
    let mut changed = false;
    let mut stmts = Vec::with_capacity(block.stmts.len());
    for s in &block.stmts {
        match hoist_all(s, site, env) {
            Some(out) => {
                changed = true;
                stmts.extend(out);
            }
            None => stmts.push(s.clone()),
        }
    }
    changed.then(|| Block {
        stmts,
        ..block.clone()
    })
}

struct Uses<'n> {
    name: &'n str,
    count: usize,
}

impl<'a> Visitor<'a> for Uses<'_> {
    fn visit_expr(&mut self, e: &'a Expr) {
        if e.as_name() == Some(self.name) {
            self.count += 1;
        }
        walk_expr(self, e);
    }
}

fn count_uses(s: &Stmt, name: &str) -> usize {
    let mut u = Uses { name, count: 0 };
    u.visit_stmt(s);
    u.count
}

/// Inlines `decl` (`T v = e;`) into `next` if `v` occurs exactly once there,
/// at a movable `site`, and nowhere in `rest`.
fn substitute_pair(decl: &Stmt, next: &Stmt, rest: &[Stmt], site: Site, env: &mut MethodEnv) -> Option<Stmt> {
    let StmtKind::LocalVar(v) = &decl.kind else {
        return None;
    };
    let init = v.init.as_ref()?;
    if !expr_effects(init, env).writes.is_empty() {
        return None;
    }
    // inlining would drop an implicit widening conversion
    if matches!(v.ty, TypeRef::Primitive(_)) && env.type_of(init).as_ref() != Some(&v.ty) {
        return None;
    }
    let name = &v.name.name;
    if count_uses(next, name) != 1 || rest.iter().any(|s| count_uses(s, name) > 0) {
        return None;
    }
    let mut out = next.clone();
    let root = root_mut(&mut out)?;
    let mut mover = Mover::new(env, Mode::Substitute(site, name.clone(), Some(init.clone())));
    if !mover.walk(root) {
        return None;
    }
    out.comments = decl.comments.iter().chain(&next.comments).cloned().collect();
    Some(out)
}

fn substitute_block(block: &Block, site: Site, env: &mut MethodEnv) -> Option<Block> {
    let mut stmts = block.stmts.clone();
    let mut changed = false;
    let mut i = 0;
    while i + 1 < stmts.len() {
        match substitute_pair(&stmts[i], &stmts[i + 1], &stmts[i + 2..], site, env) {
            Some(merged) => {
                stmts.splice(i..i + 2, [merged]);
                changed = true;
                i = i.saturating_sub(1);
            }
            None => i += 1,
        }
    }
    changed.then(|| Block {
        stmts,
        ..block.clone()
    })
}

/// Splits call chains into one call per statement, or merges them back.
/// Only the statements of `block` itself are rewritten.
pub fn chain_functions(block: &Block, dir: ChainDirection, env: &mut MethodEnv) -> Result<Block, TransformError> {
    let na = |r| TransformError::na(TransformRule::FunctionChain, r);
    match dir {
        ChainDirection::Split => hoist_block(block, Site::Receiver, env).ok_or_else(|| na("no-call-chain")),
        ChainDirection::Merge => substitute_block(block, Site::Receiver, env).ok_or_else(|| na("no-chain-variable")),
    }
}

/// Moves call arguments into variables, or inlines such variables back.
/// Only the statements of `block` itself are rewritten.
pub fn argument_pass(block: &Block, dir: ArgDirection, env: &mut MethodEnv) -> Result<Block, TransformError> {
    let na = |r| TransformError::na(TransformRule::ArgumentPass, r);
    match dir {
        ArgDirection::Extract => hoist_block(block, Site::Argument, env).ok_or_else(|| na("no-call-argument")),
        ArgDirection::Inline => substitute_block(block, Site::Argument, env).ok_or_else(|| na("no-argument-variable")),
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

    fn printed(b: &Block) -> String {
        b.stmts.iter().map(print_stmt).collect()
    }

    #[test]
    fn splits_getter_chain() {
        let m = method("String f(Object value) { String n = value.getClass().getName(); return n; }");
        let mut env = MethodEnv::new(&m);
        let out = chain_functions(&m.body, ChainDirection::Split, &mut env).unwrap();
        assert_eq!(
            printed(&out),
            "Class value_class = value.getClass();\nString n = value_class.getName();\nreturn n;\n"
        );
        let back = chain_functions(&out, ChainDirection::Merge, &mut env).unwrap();
        assert!(structurally_equal(&back, &m.body), "{}", printed(&back));
    }

    #[test]
    fn splits_innermost_first() {
        let m = method("void f(StringBuilder sb) { sb.append(a).append(b).append(c); }");
        let mut env = MethodEnv::new(&m);
        let out = chain_functions(&m.body, ChainDirection::Split, &mut env).unwrap();
        assert_eq!(out.stmts.len(), 3);
        assert!(printed(&out).starts_with("StringBuilder appendedSb = sb.append(a);\n"));
        let back = chain_functions(&out, ChainDirection::Merge, &mut env).unwrap();
        assert!(structurally_equal(&back, &m.body));
    }

    #[test]
    fn extracts_arguments() {
        let m = method("boolean f(Path parentPath, Path p) { return p.startsWith(parentPath.normalize()); }");
        let mut env = MethodEnv::new(&m);
        let out = argument_pass(&m.body, ArgDirection::Extract, &mut env).unwrap();
        assert_eq!(
            printed(&out),
            "Path normalizedParentPath = parentPath.normalize();\nreturn p.startsWith(normalizedParentPath);\n"
        );
        let back = argument_pass(&out, ArgDirection::Inline, &mut env).unwrap();
        assert!(structurally_equal(&back, &m.body));
    }

    #[test]
    fn extraction_is_left_to_right_and_outermost() {
        let m = method("void f() { g(h(1), k(m(2))); }");
        let mut env = MethodEnv::new(&m);
        let out = argument_pass(&m.body, ArgDirection::Extract, &mut env).unwrap();
        assert_eq!(printed(&out), "var tmp1 = h(1);\nvar tmp2 = k(m(2));\ng(tmp1, tmp2);\n");
        let back = argument_pass(&out, ArgDirection::Inline, &mut env).unwrap();
        assert!(structurally_equal(&back, &m.body));
    }

    #[test]
    fn respects_evaluation_order() {
        // a() runs before the argument and may change what it returns
        let m = method("void f() { g(a(), b()); }");
        let mut env = MethodEnv::new(&m);
        let out = argument_pass(&m.body, ArgDirection::Extract, &mut env).unwrap();
        assert_eq!(printed(&out), "var tmp1 = a();\nvar tmp2 = b();\ng(tmp1, tmp2);\n");
        let m = method("void f(int x) { x = x + 1; g(a(), b()); }");
        let mut env = MethodEnv::new(&m);
        let m2 = method("void f(boolean c) { if (c && x.y().z()) { } }");
        let mut env2 = MethodEnv::new(&m2);
        assert!(chain_functions(&m2.body, ChainDirection::Split, &mut env2).is_err());
        let m3 = method("void f() { a().b(c().d()); }");
        let mut env3 = MethodEnv::new(&m3);
        let out = argument_pass(&m3.body, ArgDirection::Extract, &mut env3);
        // a() is evaluated before the argument, so the argument stays put
        assert!(out.is_err());
        assert!(argument_pass(&m.body, ArgDirection::Extract, &mut env).is_ok());
    }

    #[test]
    fn inline_requires_single_use() {
        let m = method("void f() { var t = a(); g(t); h(t); }");
        let mut env = MethodEnv::new(&m);
        assert!(argument_pass(&m.body, ArgDirection::Inline, &mut env).is_err());
        let m = method("void f() { long t = a(); g(t); }");
        let mut env = MethodEnv::new(&m);
        assert!(argument_pass(&m.body, ArgDirection::Inline, &mut env).is_err());
    }
}
