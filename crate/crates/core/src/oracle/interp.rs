use std::collections::{BTreeSet, HashMap};

use super::{ExceptionKind, OracleError, Outcome, Value, MAX_CALL_DEPTH};
use crate::span::Span;
use crate::syntax::visit::{walk_expr, walk_stmt, Visitor};
use crate::syntax::*;

/// Name and arity of the supported `String` methods.
const STRING_METHODS: &[(&str, usize)] = &[
    ("length", 0),
    ("isEmpty", 0),
    ("substring", 1),
    ("substring", 2),
    ("startsWith", 1),
    ("endsWith", 1),
    ("equals", 1),
    ("concat", 1),
    ("contains", 1),
    ("indexOf", 1),
];

const MATH_METHODS: &[(&str, usize)] = &[("min", 2), ("max", 2), ("abs", 1)];

/// Static methods callable without a receiver.
#[derive(Clone, Debug, Default)]
pub struct Context<'a> {
    helpers: HashMap<String, &'a MethodDecl>,
}

impl<'a> Context<'a> {
    pub fn empty() -> Self {
        Context::default()
    }

    /// Every static method declared in `file`; the first declaration of a
    /// name wins.
    pub fn from_file(file: &'a SourceFile) -> Self {
        let mut helpers = HashMap::new();
        for (_, m) in file.methods() {
            if m.is_static() && !m.is_constructor() {
                helpers.entry(m.name.name.clone()).or_insert(m);
            }
        }
        Context { helpers }
    }

    fn helper(&self, name: &str) -> Option<&'a MethodDecl> {
        self.helpers.get(name).copied()
    }
}

fn supported_type(ty: &TypeRef) -> bool {
    match ty {
        TypeRef::Primitive(p) => matches!(p, PrimitiveType::Int | PrimitiveType::Boolean),
        TypeRef::Named(id) => id.name == "String",
        TypeRef::Void | TypeRef::Inferred => false,
    }
}

struct Checker<'c, 'a> {
    ctx: &'c Context<'a>,
    declared: BTreeSet<String>,
    error: Option<OracleError>,
    pending: Vec<&'a MethodDecl>,
}

impl Checker<'_, '_> {
    fn fail(&mut self, span: &Span, what: impl Into<String>) {
        if self.error.is_none() {
            self.error = Some(OracleError::unsupported(span, what));
        }
    }
}

impl<'ast> Visitor<'ast> for Checker<'_, '_> {
    fn visit_stmt(&mut self, s: &'ast Stmt) {
        match &s.kind {
            StmtKind::Throw(_) => self.fail(&s.span, "throw"),
            StmtKind::LocalVar(v) if v.ty != TypeRef::Inferred && !supported_type(&v.ty) => {
                self.fail(&s.span, format!("local of type {}", type_text(&v.ty)))
            }
            _ => {}
        }
        walk_stmt(self, s);
    }

    fn visit_expr(&mut self, e: &'ast Expr) {
        match &e.kind {
            ExprKind::This => self.fail(&e.span, "this"),
            ExprKind::New { .. } => self.fail(&e.span, "object creation"),
            ExprKind::FieldAccess { .. } => self.fail(&e.span, "field access"),
            ExprKind::Name(id) if !self.declared.contains(&id.name) => {
                self.fail(&e.span, format!("non-local name {}", id.name))
            }
            ExprKind::Assign { target, .. } if target.as_name().is_none() => self.fail(&e.span, "field assignment"),
            ExprKind::Call {
                receiver,
                method,
                args,
            } => {
                let sig = (method.name.as_str(), args.len());
                match receiver.as_deref() {
                    None => match self.ctx.helper(&method.name) {
                        Some(h) if h.params.len() == args.len() => self.pending.push(h),
                        _ => self.fail(&e.span, format!("call to {}", method.name)),
                    },
                    Some(Expr {
                        kind: ExprKind::Name(id),
                        ..
                    }) if id.name == "Math" && !self.declared.contains("Math") => {
                        if !MATH_METHODS.contains(&sig) {
                            self.fail(&e.span, format!("Math.{}", method.name));
                        }
                        args.iter().for_each(|a| self.visit_expr(a));
                        return;
                    }
                    Some(_) if !STRING_METHODS.contains(&sig) => self.fail(&e.span, format!("call to {}", method.name)),
                    Some(_) => {}
                }
            }
            _ => {}
        }
        walk_expr(self, e);
    }
}

fn type_text(ty: &TypeRef) -> String {
    match ty {
        TypeRef::Void => "void".into(),
        TypeRef::Primitive(p) => p.keyword().into(),
        TypeRef::Named(id) => id.name.clone(),
        TypeRef::Inferred => "var".into(),
    }
}

/// Checks that `m`, and every helper it reaches, stays inside the subset
/// the interpreter understands.
pub fn check_supported<'a>(ctx: &Context<'a>, m: &'a MethodDecl) -> Result<(), OracleError> {
    let mut seen = BTreeSet::new();
    let mut queue = vec![m];
    while let Some(m) = queue.pop() {
        match &m.return_type {
            None => return Err(OracleError::unsupported(&m.span, "constructor")),
            Some(TypeRef::Void) => {}
            Some(t) if supported_type(t) => {}
            Some(t) => return Err(OracleError::unsupported(&m.span, format!("return type {}", type_text(t)))),
        }
        let mut declared = BTreeSet::new();
        for p in &m.params {
            if !supported_type(&p.ty) {
                return Err(OracleError::unsupported(&p.name.span, format!("parameter of type {}", type_text(&p.ty))));
            }
            declared.insert(p.name.name.clone());
        }
        struct Decls<'d>(&'d mut BTreeSet<String>);
        impl<'a> Visitor<'a> for Decls<'_> {
            fn visit_stmt(&mut self, s: &'a Stmt) {
                if let StmtKind::LocalVar(v) = &s.kind {
                    self.0.insert(v.name.name.clone());
                }
                walk_stmt(self, s);
            }
        }
        Decls(&mut declared).visit_block(&m.body);
        let mut checker = Checker {
            ctx,
            declared,
            error: None,
            pending: Vec::new(),
        };
        checker.visit_block(&m.body);
        if let Some(e) = checker.error {
            return Err(e);
        }
        for h in checker.pending {
            if seen.insert(h.name.name.clone()) {
                queue.push(h);
            }
        }
    }
    Ok(())
}

enum Abort {
    Throw(ExceptionKind),
    Fuel,
    Unsupported(OracleError),
}

type Exec<T> = Result<T, Abort>;

enum Flow {
    Normal,
    Break,
    Continue,
    Return(Option<Value>),
}

fn unsupported<T>(span: &Span, what: &str) -> Exec<T> {
    Err(Abort::Unsupported(OracleError::unsupported(span, what)))
}

#[derive(Default)]
struct Frame {
    scopes: Vec<HashMap<String, Option<Value>>>,
}

impl Frame {
    fn declare(&mut self, name: &str, v: Option<Value>) {
        self.scopes.last_mut().expect("open scope").insert(name.to_string(), v);
    }

    fn slot(&mut self, name: &str) -> Option<&mut Option<Value>> {
        self.scopes.iter_mut().rev().find_map(|s| s.get_mut(name))
    }
}

struct Machine<'c, 'a> {
    ctx: &'c Context<'a>,
    fuel: u64,
    depth: usize,
}

impl Machine<'_, '_> {
    fn tick(&mut self) -> Exec<()> {
        if self.fuel == 0 {
            return Err(Abort::Fuel);
        }
        self.fuel -= 1;
        Ok(())
    }

    fn call(&mut self, m: &MethodDecl, args: Vec<Value>) -> Exec<Option<Value>> {
        if self.depth >= MAX_CALL_DEPTH {
            return Err(Abort::Fuel);
        }
        self.depth += 1;
        let mut frame = Frame::default();
        frame.scopes.push(HashMap::new());
        for (p, a) in m.params.iter().zip(args) {
            frame.declare(&p.name.name, Some(a));
        }
        let flow = self.block(&mut frame, &m.body.stmts);
        self.depth -= 1;
        match flow? {
            Flow::Return(v) => Ok(v),
            Flow::Normal => Ok(None),
            Flow::Break | Flow::Continue => unsupported(&m.span, "jump outside a loop"),
        }
    }

    fn block(&mut self, f: &mut Frame, stmts: &[Stmt]) -> Exec<Flow> {
        f.scopes.push(HashMap::new());
        let r = self.seq(f, stmts);
        f.scopes.pop();
        r
    }

    fn seq(&mut self, f: &mut Frame, stmts: &[Stmt]) -> Exec<Flow> {
        for s in stmts {
            match self.stmt(f, s)? {
                Flow::Normal => {}
                other => return Ok(other),
            }
        }
        Ok(Flow::Normal)
    }

    /// Runs a loop body; `Some` ends the loop with that flow.
    fn body(&mut self, f: &mut Frame, body: &Block) -> Exec<Option<Flow>> {
        Ok(match self.block(f, &body.stmts)? {
            Flow::Break => Some(Flow::Normal),
            Flow::Return(v) => Some(Flow::Return(v)),
            Flow::Normal | Flow::Continue => None,
        })
    }

    fn stmt(&mut self, f: &mut Frame, s: &Stmt) -> Exec<Flow> {
        self.tick()?;
        match &s.kind {
            StmtKind::Block(b) => self.block(f, &b.stmts),
            StmtKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                if self.boolean(f, cond)? {
                    self.block(f, &then_branch.stmts)
                } else if let Some(e) = else_branch {
                    self.block(f, &e.stmts)
                } else {
                    Ok(Flow::Normal)
                }
            }
            StmtKind::While { cond, body } => {
                while self.boolean(f, cond)? {
                    if let Some(flow) = self.body(f, body)? {
                        return Ok(flow);
                    }
                    self.tick()?;
                }
                Ok(Flow::Normal)
            }
            StmtKind::For {
                init,
                cond,
                update,
                body,
            } => {
                f.scopes.push(HashMap::new());
                let r = self.for_loop(f, init, cond.as_ref(), update, body);
                f.scopes.pop();
                r
            }
            StmtKind::Switch { scrutinee, cases } => {
                let v = self.expr(f, scrutinee)?;
                if v == Value::Null {
                    return Err(Abort::Throw(ExceptionKind::NullPointerException));
                }
                let hit = |l: &CaseLabel| matches!(l, CaseLabel::Literal(lit) if literal(lit) == v);
                let start = cases
                    .iter()
                    .position(|c| c.labels.iter().any(hit))
                    .or_else(|| cases.iter().position(|c| c.labels.contains(&CaseLabel::Default)));
                let Some(start) = start else {
                    return Ok(Flow::Normal);
                };
                f.scopes.push(HashMap::new());
                let r = self.cases(f, &cases[start..]);
                f.scopes.pop();
                r
            }
            StmtKind::LocalVar(v) => {
                let value = match &v.init {
                    Some(e) => Some(self.expr(f, e)?),
                    None => None,
                };
                f.declare(&v.name.name, value);
                Ok(Flow::Normal)
            }
            StmtKind::Expr(e) => self.expr(f, e).map(|_| Flow::Normal),
            StmtKind::Return(e) => Ok(Flow::Return(match e {
                Some(e) => Some(self.expr(f, e)?),
                None => None,
            })),
            StmtKind::Break => Ok(Flow::Break),
            StmtKind::Continue => Ok(Flow::Continue),
            StmtKind::Throw(_) => unsupported(&s.span, "throw"),
        }
    }

    fn for_loop(&mut self, f: &mut Frame, init: &[Stmt], cond: Option<&Expr>, update: &[Expr], body: &Block) -> Exec<Flow> {
        for s in init {
            self.stmt(f, s)?;
        }
        loop {
            if let Some(c) = cond {
                if !self.boolean(f, c)? {
                    return Ok(Flow::Normal);
                }
            }
            if let Some(flow) = self.body(f, body)? {
                return Ok(flow);
            }
            for u in update {
                self.expr(f, u)?;
            }
            self.tick()?;
        }
    }

    fn cases(&mut self, f: &mut Frame, cases: &[SwitchCase]) -> Exec<Flow> {
        for c in cases {
            match self.seq(f, &c.body)? {
                Flow::Normal if c.terminated => return Ok(Flow::Normal),
                Flow::Normal => {}
                Flow::Break => return Ok(Flow::Normal),
                other => return Ok(other),
            }
        }
        Ok(Flow::Normal)
    }

    fn boolean(&mut self, f: &mut Frame, e: &Expr) -> Exec<bool> {
        match self.expr(f, e)? {
            Value::Bool(b) => Ok(b),
            _ => unsupported(&e.span, "non-boolean condition"),
        }
    }

    fn int(&mut self, f: &mut Frame, e: &Expr) -> Exec<i32> {
        match self.expr(f, e)? {
            Value::Int(v) => Ok(v),
            _ => unsupported(&e.span, "non-int operand"),
        }
    }

    fn expr(&mut self, f: &mut Frame, e: &Expr) -> Exec<Value> {
        match &e.kind {
            ExprKind::Name(id) => match f.slot(&id.name) {
                Some(Some(v)) => Ok(v.clone()),
                _ => unsupported(&e.span, "read of an unassigned name"),
            },
            ExprKind::Literal(lit) => Ok(literal(lit)),
            ExprKind::Unary { op, operand } => match op {
                UnaryOp::Not => Ok(Value::Bool(!self.boolean(f, operand)?)),
                UnaryOp::Neg => Ok(Value::Int(self.int(f, operand)?.wrapping_neg())),
            },
            ExprKind::Binary { op, lhs, rhs } => self.binary(f, *op, lhs, rhs, e),
            ExprKind::Ternary {
                cond,
                then_expr,
                else_expr,
            } => {
                if self.boolean(f, cond)? {
                    self.expr(f, then_expr)
                } else {
                    self.expr(f, else_expr)
                }
            }
            ExprKind::Assign { target, value } => {
                let v = self.expr(f, value)?;
                let Some(name) = target.as_name() else {
                    return unsupported(&e.span, "field assignment");
                };
                match f.slot(name) {
                    Some(slot) => *slot = Some(v.clone()),
                    None => return unsupported(&e.span, "assignment to a non-local"),
                }
                Ok(v)
            }
            ExprKind::Call {
                receiver,
                method,
                args,
            } => self.call_expr(f, receiver.as_deref(), &method.name, args, e),
            ExprKind::This | ExprKind::FieldAccess { .. } | ExprKind::New { .. } => {
                unsupported(&e.span, "object expression")
            }
        }
    }

    fn binary(&mut self, f: &mut Frame, op: BinaryOp, lhs: &Expr, rhs: &Expr, e: &Expr) -> Exec<Value> {
        match op {
            BinaryOp::And => return Ok(Value::Bool(self.boolean(f, lhs)? && self.boolean(f, rhs)?)),
            BinaryOp::Or => return Ok(Value::Bool(self.boolean(f, lhs)? || self.boolean(f, rhs)?)),
            _ => {}
        }
        let l = self.expr(f, lhs)?;
        let r = self.expr(f, rhs)?;
        let (a, b) = match (op, &l, &r) {
            (BinaryOp::Add, Value::Str(_), _) | (BinaryOp::Add, _, Value::Str(_)) => {
                return Ok(Value::Str(format!("{l}{r}")));
            }
            (BinaryOp::Eq | BinaryOp::Ne, _, _) => {
                let same = match (&l, &r) {
                    (Value::Int(a), Value::Int(b)) => a == b,
                    (Value::Bool(a), Value::Bool(b)) => a == b,
                    (Value::Null, Value::Null) => true,
                    (Value::Null, Value::Str(_)) | (Value::Str(_), Value::Null) => false,
                    _ => return unsupported(&e.span, "reference comparison"),
                };
                return Ok(Value::Bool(same == (op == BinaryOp::Eq)));
            }
            (_, Value::Int(a), Value::Int(b)) => (*a, *b),
            _ => return unsupported(&e.span, "operand types"),
        };
        Ok(match op {
            BinaryOp::Add => Value::Int(a.wrapping_add(b)),
            BinaryOp::Sub => Value::Int(a.wrapping_sub(b)),
            BinaryOp::Mul => Value::Int(a.wrapping_mul(b)),
            BinaryOp::Div | BinaryOp::Rem if b == 0 => return Err(Abort::Throw(ExceptionKind::ArithmeticException)),
            BinaryOp::Div => Value::Int(a.wrapping_div(b)),
            BinaryOp::Rem => Value::Int(a.wrapping_rem(b)),
            BinaryOp::Lt => Value::Bool(a < b),
            BinaryOp::Le => Value::Bool(a <= b),
            BinaryOp::Gt => Value::Bool(a > b),
            BinaryOp::Ge => Value::Bool(a >= b),
            BinaryOp::Eq | BinaryOp::Ne | BinaryOp::And | BinaryOp::Or => unreachable!("handled above"),
        })
    }

    fn call_expr(&mut self, f: &mut Frame, receiver: Option<&Expr>, method: &str, args: &[Expr], e: &Expr) -> Exec<Value> {
        let math = receiver.is_some_and(|r| r.as_name() == Some("Math") && f.slot("Math").is_none());
        // receiver, then arguments left to right, then the null check
        let recv = match receiver {
            Some(r) if !math => Some(self.expr(f, r)?),
            _ => None,
        };
        let mut vals = Vec::with_capacity(args.len());
        for a in args {
            vals.push(self.expr(f, a)?);
        }
        if math {
            return math_call(method, &vals, e);
        }
        match recv {
            None => {
                let Some(h) = self.ctx.helper(method) else {
                    return unsupported(&e.span, "unknown helper");
                };
                Ok(self.call(h, vals)?.unwrap_or(Value::Null))
            }
            Some(Value::Null) => Err(Abort::Throw(ExceptionKind::NullPointerException)),
            Some(Value::Str(s)) => string_call(&s, method, &vals, e),
            Some(_) => unsupported(&e.span, "call on a non-string"),
        }
    }
}

fn literal(lit: &Literal) -> Value {
    match lit {
        Literal::Int(v) => Value::Int(*v),
        Literal::Bool(v) => Value::Bool(*v),
        Literal::Str(s) => Value::Str(s.clone()),
        Literal::Null => Value::Null,
    }
}

fn math_call(method: &str, args: &[Value], e: &Expr) -> Exec<Value> {
    match (method, args) {
        ("min", [Value::Int(a), Value::Int(b)]) => Ok(Value::Int(*a.min(b))),
        ("max", [Value::Int(a), Value::Int(b)]) => Ok(Value::Int(*a.max(b))),
        ("abs", [Value::Int(a)]) => Ok(Value::Int(a.wrapping_abs())),
        _ => unsupported(&e.span, "Math call"),
    }
}

fn string_call(s: &str, method: &str, args: &[Value], e: &Expr) -> Exec<Value> {
    let chars: Vec<char> = s.chars().collect();
    let len = chars.len() as i64;
    let out_of_bounds = || Err(Abort::Throw(ExceptionKind::StringIndexOutOfBoundsException));
    let npe = || Err(Abort::Throw(ExceptionKind::NullPointerException));
    match (method, args) {
        ("length", []) => Ok(Value::Int(len as i32)),
        ("isEmpty", []) => Ok(Value::Bool(len == 0)),
        ("substring", [Value::Int(b)]) => {
            let b = *b as i64;
            if b < 0 || b > len {
                return out_of_bounds();
            }
            Ok(Value::Str(chars[b as usize..].iter().collect()))
        }
        ("substring", [Value::Int(b), Value::Int(end)]) => {
            let (b, end) = (*b as i64, *end as i64);
            if b < 0 || end > len || b > end {
                return out_of_bounds();
            }
            Ok(Value::Str(chars[b as usize..end as usize].iter().collect()))
        }
        ("equals", [other]) => Ok(Value::Bool(matches!(other, Value::Str(o) if o == s))),
        ("startsWith" | "endsWith" | "concat" | "contains" | "indexOf", [Value::Null]) => npe(),
        ("startsWith", [Value::Str(p)]) => Ok(Value::Bool(s.starts_with(p.as_str()))),
        ("endsWith", [Value::Str(p)]) => Ok(Value::Bool(s.ends_with(p.as_str()))),
        ("concat", [Value::Str(p)]) => Ok(Value::Str(format!("{s}{p}"))),
        ("contains", [Value::Str(p)]) => Ok(Value::Bool(s.contains(p.as_str()))),
        ("indexOf", [Value::Str(p)]) => Ok(Value::Int(
            s.find(p.as_str()).map_or(-1, |byte| s[..byte].chars().count() as i32),
        )),
        _ => unsupported(&e.span, "String call"),
    }
}

/// Runs `m` on `args` with no helpers available.
pub fn evaluate(m: &MethodDecl, args: &[Value], fuel: u64) -> Result<Outcome, OracleError> {
    evaluate_with(&Context::empty(), m, args, fuel)
}

/// Runs `m` on `args`; receiverless calls resolve to the static methods in
/// `ctx`. Fuel is spent per statement executed and per loop iteration.
pub fn evaluate_with<'a>(ctx: &Context<'a>, m: &'a MethodDecl, args: &[Value], fuel: u64) -> Result<Outcome, OracleError> {
    check_supported(ctx, m)?;
    if args.len() != m.params.len() {
        return Err(OracleError::ArityMismatch {
            expected: m.params.len(),
            got: args.len(),
        });
    }
    let mut machine = Machine { ctx, fuel, depth: 0 };
    match machine.call(m, args.to_vec()) {
        Ok(v) => Ok(Outcome::Returned(v)),
        Err(Abort::Throw(k)) => Ok(Outcome::Threw(k)),
        Err(Abort::Fuel) => Ok(Outcome::OutOfFuel),
        Err(Abort::Unsupported(e)) => Err(e),
    }
}
