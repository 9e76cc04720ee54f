use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use super::effects::PurityIndex;
use crate::ident::{assemble_identifier, known_return_type, tokenize_identifier, Convention, ProjectSymbols};
use crate::syntax::lexer::is_reserved;
use crate::syntax::visit::{walk_class, walk_method, walk_stmt, Visitor};
use crate::syntax::*;

const BUNDLED_PARTICIPLES: &str = include_str!("../../data/participles.tsv");

fn participles() -> &'static BTreeMap<String, String> {
    static CELL: OnceLock<BTreeMap<String, String>> = OnceLock::new();
    CELL.get_or_init(|| {
        BUNDLED_PARTICIPLES
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .filter_map(|l| l.split_once('\t'))
            .map(|(v, p)| (v.trim().to_string(), p.trim().to_string()))
            .collect()
    })
}

/// What the rewrite rules know about the method being transformed: local
/// and field types, names already in use and call purity.
#[derive(Clone, Debug)]
pub struct MethodEnv<'a> {
    symbols: Option<&'a ProjectSymbols>,
    class_name: Option<String>,
    types: HashMap<String, TypeRef>,
    locals: HashSet<String>,
    fields: HashSet<String>,
    taken: BTreeSet<String>,
    next_tmp: u32,
    purity: Arc<PurityIndex>,
}

struct Names<'n>(&'n mut BTreeSet<String>);

impl<'ast> Visitor<'ast> for Names<'_> {
    fn visit_ident(&mut self, ident: &'ast Ident) {
        self.0.insert(ident.name.clone());
    }
}

struct Locals<'e, 'a>(&'e mut MethodEnv<'a>);

impl<'ast> Visitor<'ast> for Locals<'_, '_> {
    fn visit_stmt(&mut self, stmt: &'ast Stmt) {
        if let StmtKind::LocalVar(v) = &stmt.kind {
            let ty = match (&v.ty, &v.init) {
                (TypeRef::Inferred, Some(init)) => self.0.type_of(init).unwrap_or(TypeRef::Inferred),
                (ty, _) => ty.clone(),
            };
            self.0.declare_local(&v.name.name, ty);
        }
        walk_stmt(self, stmt);
    }
}

impl MethodEnv<'static> {
    /// Environment from the method alone, without class or project context.
    pub fn new(method: &MethodDecl) -> Self {
        let mut env = MethodEnv::empty(None, None);
        walk_method(&mut Names(&mut env.taken), method);
        env.add_method(method);
        env
    }
}

impl<'a> MethodEnv<'a> {
    fn empty(class_name: Option<String>, symbols: Option<&'a ProjectSymbols>) -> Self {
        MethodEnv {
            symbols,
            class_name,
            types: HashMap::new(),
            locals: HashSet::new(),
            fields: HashSet::new(),
            taken: BTreeSet::new(),
            next_tmp: 1,
            purity: PurityIndex::bundled(),
        }
    }

    pub fn for_method(class: &ClassDecl, method: &MethodDecl, symbols: Option<&'a ProjectSymbols>) -> Self {
        let mut env = MethodEnv::empty(Some(class.name.name.clone()), symbols);
        walk_class(&mut Names(&mut env.taken), class);
        for f in class.fields() {
            env.fields.insert(f.name.name.clone());
            env.types.insert(f.name.name.clone(), f.ty.clone());
        }
        env.add_method(method);
        env
    }

    fn add_method(&mut self, method: &MethodDecl) {
        for p in &method.params {
            self.declare_local(&p.name.name, p.ty.clone());
        }
        Locals(self).visit_block(&method.body);
    }

    pub fn with_purity(mut self, purity: Arc<PurityIndex>) -> Self {
        self.purity = purity;
        self
    }

    /// Names fresh variables must avoid, beyond those already seen.
    pub fn reserve_names<I: IntoIterator<Item = String>>(&mut self, names: I) {
        self.taken.extend(names);
    }

    pub fn purity(&self) -> &PurityIndex {
        &self.purity
    }

    pub fn class_name(&self) -> Option<&str> {
        self.class_name.as_deref()
    }

    pub fn is_local(&self, name: &str) -> bool {
        self.locals.contains(name)
    }

    /// A capitalized name that is neither a local nor a field: a class used
    /// as the receiver of a static call.
    pub fn is_static_ref(&self, name: &str) -> bool {
        !self.locals.contains(name)
            && !self.fields.contains(name)
            && name.starts_with(|c: char| c.is_uppercase())
    }

    pub fn declare_local(&mut self, name: &str, ty: TypeRef) {
        self.locals.insert(name.to_string());
        self.taken.insert(name.to_string());
        self.types.insert(name.to_string(), ty);
    }

    /// Class of a receiver expression, including class names of static calls.
    pub fn class_of(&self, e: &Expr) -> Option<String> {
        match &e.kind {
            ExprKind::Name(id) if self.is_static_ref(&id.name) => Some(id.name.clone()),
            ExprKind::This => self.class_name.clone(),
            _ => self.type_of(e).and_then(|t| t.class_name().map(str::to_string)),
        }
    }

    /// Static type of `e` when it can be determined cheaply.
    pub fn type_of(&self, e: &Expr) -> Option<TypeRef> {
        let prim = |p| Some(TypeRef::Primitive(p));
        match &e.kind {
            ExprKind::Name(id) => self.types.get(&id.name).filter(|t| **t != TypeRef::Inferred).cloned(),
            ExprKind::Literal(Literal::Int(_)) => prim(PrimitiveType::Int),
            ExprKind::Literal(Literal::Bool(_)) => prim(PrimitiveType::Boolean),
            ExprKind::Literal(Literal::Str(_)) => Some(TypeRef::named("String")),
            ExprKind::Literal(Literal::Null) => None,
            ExprKind::This => self.class_name.as_deref().map(TypeRef::named),
            ExprKind::New { class, .. } => Some(TypeRef::named(&class.name)),
            ExprKind::Unary { op: UnaryOp::Not, .. } => prim(PrimitiveType::Boolean),
            ExprKind::Unary { operand, .. } => self.type_of(operand),
            ExprKind::Binary { op, lhs, rhs } => match op {
                BinaryOp::And
                | BinaryOp::Or
                | BinaryOp::Eq
                | BinaryOp::Ne
                | BinaryOp::Lt
                | BinaryOp::Le
                | BinaryOp::Gt
                | BinaryOp::Ge => prim(PrimitiveType::Boolean),
                _ => {
                    let (l, r) = (self.type_of(lhs), self.type_of(rhs));
                    let string = TypeRef::named("String");
                    let int = TypeRef::Primitive(PrimitiveType::Int);
                    if *op == BinaryOp::Add && (l.as_ref().and_then(|t| t.class_name()) == Some("String")
                        || r.as_ref().and_then(|t| t.class_name()) == Some("String"))
                    {
                        Some(string)
                    } else if l.as_ref() == Some(&int) && r.as_ref() == Some(&int) {
                        Some(int)
                    } else {
                        None
                    }
                }
            },
            ExprKind::Ternary {
                then_expr,
                else_expr,
                ..
            } => {
                let t = self.type_of(then_expr)?;
                (self.type_of(else_expr).as_ref() == Some(&t)).then_some(t)
            }
            ExprKind::Assign { target, .. } => self.type_of(target),
            ExprKind::FieldAccess { .. } => None,
            ExprKind::Call {
                receiver,
                method,
                ..
            } => {
                let recv_class = match receiver {
                    Some(r) => self.class_of(r),
                    None => self.class_name.clone(),
                };
                let project = self.symbols.and_then(|s| match &recv_class {
                    Some(c) if s.is_class(c) => s.method_return_type(c, &method.name).cloned(),
                    _ => None,
                });
                project
                    .or_else(|| known_return_type(recv_class.as_deref(), &method.name).map(TypeRef::named))
                    .filter(|t| *t != TypeRef::Void)
            }
        }
    }

    /// Declared type for a variable initialized with `e`, or `var`.
    pub fn declared_type(&self, e: &Expr) -> TypeRef {
        self.type_of(e).unwrap_or(TypeRef::Inferred)
    }

    /// A new local name for the value of `e`, reserved on return. Getter
    /// calls `r.getX()` give `r_x`; calls whose verb has a known participle
    /// give participle + receiver (`normalizedParentPath`); constructor calls
    /// give the class name in camel case; anything else `tmp<N>`.
    pub fn fresh_name(&mut self, e: &Expr) -> String {
        let base = match &e.kind {
            ExprKind::Call {
                receiver, method, ..
            } => {
                let recv = receiver.as_deref().and_then(Expr::as_name).map(tokenize_identifier);
                let words = tokenize_identifier(&method.name);
                match (words.split_first(), recv) {
                    (Some((first, rest)), Some(recv)) if first == "get" && !rest.is_empty() => {
                        let all: Vec<String> = recv.into_iter().chain(rest.iter().cloned()).collect();
                        Some(assemble_identifier(&all, Convention::Snake))
                    }
                    (Some((first, rest)), recv) => participles().get(first).map(|p| {
                        let all: Vec<String> = std::iter::once(p.clone())
                            .chain(rest.iter().cloned())
                            .chain(recv.unwrap_or_default())
                            .collect();
                        assemble_identifier(&all, Convention::Camel)
                    }),
                    _ => None,
                }
            }
            ExprKind::New { class, .. } => Some(assemble_identifier(&tokenize_identifier(&class.name), Convention::Camel)),
            _ => None,
        };
        let name = match base {
            Some(b) => self.uniquify(&b),
            None => loop {
                let cand = format!("tmp{}", self.next_tmp);
                self.next_tmp += 1;
                if self.is_free(&cand) {
                    break cand;
                }
            },
        };
        self.taken.insert(name.clone());
        name
    }

    fn is_free(&self, name: &str) -> bool {
        !self.taken.contains(name) && !is_reserved(name)
    }

    fn uniquify(&self, base: &str) -> String {
        if self.is_free(base) {
            return base.to_string();
        }
        (2..)
            .map(|n| format!("{base}{n}"))
            .find(|c| self.is_free(c))
            .expect("unbounded suffixes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(src: &str) -> (MethodEnv<'static>, MethodDecl) {
        let f = parse(src, "T.java").unwrap();
        let m = f.types[0].methods().next().unwrap().clone();
        (MethodEnv::for_method(&f.types[0], &m, None), m)
    }

    #[test]
    fn names_follow_call_shape() {
        let (mut env, _) = env("class T { void f(Object value, Path parentPath) { } }");
        let getter = parse_expr("value.getClass()").unwrap();
        assert_eq!(env.fresh_name(&getter), "value_class");
        let norm = parse_expr("parentPath.normalize()").unwrap();
        assert_eq!(env.fresh_name(&norm), "normalizedParentPath");
        assert_eq!(env.fresh_name(&norm), "normalizedParentPath2");
        assert_eq!(env.fresh_name(&parse_expr("helper(1)").unwrap()), "tmp1");
        assert_eq!(env.fresh_name(&parse_expr("new StringBuilder()").unwrap()), "stringBuilder");
    }

    #[test]
    fn types_from_declarations_and_known_returns() {
        let (env, _) = env("class T { String s; void f(Object value, Path p) { var q = p.normalize(); } }");
        assert_eq!(env.type_of(&parse_expr("value.getClass()").unwrap()), Some(TypeRef::named("Class")));
        assert_eq!(env.type_of(&parse_expr("q.toFile()").unwrap()), Some(TypeRef::named("File")));
        assert_eq!(env.type_of(&parse_expr("s.trim()").unwrap()), Some(TypeRef::named("String")));
        assert_eq!(env.declared_type(&parse_expr("mystery()").unwrap()), TypeRef::Inferred);
    }
}
