use std::collections::{BTreeMap, BTreeSet};

use super::{Diagnostic, IdentKind, IdentifierEntry, IdentifierTable, Origin, StdlibIndex};
use crate::span::Span;
use crate::syntax::*;

/// Identity of a symbol while collecting. `decl` is the first declaration
/// site for project symbols and `None` for external ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    name: String,
    kind: IdentKind,
    decl: Option<Span>,
}

impl Key {
    fn external(name: &str, kind: IdentKind) -> Key {
        Key {
            name: name.to_string(),
            kind,
            decl: None,
        }
    }

    fn declared(name: &str, kind: IdentKind, at: &Span) -> Key {
        Key {
            name: name.to_string(),
            kind,
            decl: Some(at.clone()),
        }
    }
}

/// Static type of an expression, as far as the collector can tell.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Ty {
    /// A value of the named class.
    Instance(String),
    /// A class name used as a receiver (`Util.helper()`).
    Static(String),
    Unknown,
}

impl Ty {
    fn of(ty: &TypeRef) -> Ty {
        match ty {
            TypeRef::Named(id) => Ty::Instance(id.name.clone()),
            _ => Ty::Unknown,
        }
    }

    fn class(&self) -> Option<&str> {
        match self {
            Ty::Instance(c) | Ty::Static(c) => Some(c),
            Ty::Unknown => None,
        }
    }
}

#[derive(Debug, Default)]
struct ClassInfo {
    decl: Option<Span>,
    extends: Option<String>,
    /// field name -> (declaration span, declared type)
    fields: BTreeMap<String, (Span, TypeRef)>,
    /// method name -> return type of the first declaration
    methods: BTreeMap<String, Option<TypeRef>>,
}

/// Declarations of a whole project, gathered before any use is resolved.
#[derive(Debug, Default)]
pub struct ProjectSymbols {
    classes: BTreeMap<String, ClassInfo>,
    /// method name -> first declaration site of any method with that name
    methods: BTreeMap<String, Span>,
    /// field name -> first declaration site, for receivers of unknown type
    fields: BTreeMap<String, Span>,
    imports: BTreeSet<String>,
    wildcard_import: bool,
}

impl ProjectSymbols {
    pub fn build(files: &[SourceFile]) -> Self {
        let mut sym = ProjectSymbols::default();
        for file in files {
            for import in &file.imports {
                if import.wildcard {
                    sym.wildcard_import = true;
                } else if let Some(last) = import.path.segments.last() {
                    sym.imports.insert(last.name.clone());
                }
            }
            for class in &file.types {
                let info = sym.classes.entry(class.name.name.clone()).or_default();
                info.decl.get_or_insert_with(|| class.name.span.clone());
                if info.extends.is_none() {
                    info.extends = class.extends.as_ref().map(|e| e.name.clone());
                }
                for member in &class.members {
                    match member {
                        Member::Field(f) => {
                            info.fields
                                .entry(f.name.name.clone())
                                .or_insert_with(|| (f.name.span.clone(), f.ty.clone()));
                            sym.fields.entry(f.name.name.clone()).or_insert_with(|| f.name.span.clone());
                        }
                        Member::Method(m) if !m.is_constructor() => {
                            info.methods
                                .entry(m.name.name.clone())
                                .or_insert_with(|| m.return_type.clone());
                            sym.methods.entry(m.name.name.clone()).or_insert_with(|| m.name.span.clone());
                        }
                        Member::Method(_) => {}
                    }
                }
            }
        }
        sym
    }

    pub fn is_class(&self, name: &str) -> bool {
        self.classes.contains_key(name)
    }

    pub fn declares_method(&self, name: &str) -> bool {
        self.methods.contains_key(name)
    }

    pub fn is_imported(&self, name: &str) -> bool {
        self.imports.contains(name)
    }

    /// Walks `class` and its project superclasses.
    fn chain<'a>(&'a self, class: &str) -> impl Iterator<Item = &'a ClassInfo> + 'a {
        let mut next = self.classes.get(class);
        let mut seen = 0usize;
        std::iter::from_fn(move || {
            let cur = next?;
            seen += 1;
            next = match (&cur.extends, seen < 64) {
                (Some(sup), true) => self.classes.get(sup),
                _ => None,
            };
            Some(cur)
        })
    }

    /// Return type of `method` looked up in `class` and its project superclasses.
    pub fn method_return_type(&self, class: &str, method: &str) -> Option<&TypeRef> {
        self.chain(class)
            .find_map(|c| c.methods.get(method))
            .and_then(|rt| rt.as_ref())
    }

    fn class_has_method(&self, class: &str, method: &str) -> bool {
        self.chain(class).any(|c| c.methods.contains_key(method))
    }

    fn field_of(&self, class: &str, field: &str) -> Option<&(Span, TypeRef)> {
        self.chain(class).find_map(|c| c.fields.get(field))
    }

    /// Return type of a project method found only by name.
    fn any_method_return_type(&self, method: &str) -> Option<&TypeRef> {
        self.classes
            .values()
            .find_map(|c| c.methods.get(method))
            .and_then(|rt| rt.as_ref())
    }
}

/// Result type of a few library methods, enough to type receivers in chains
/// and to declare hoisted temporaries.
pub fn known_return_type(receiver_class: Option<&str>, method: &str) -> Option<&'static str> {
    match (receiver_class, method) {
        (_, "getClass") => Some("Class"),
        (_, "toString") => Some("String"),
        (Some("Class"), "getName" | "getSimpleName") => Some("String"),
        (Some("Class"), "getClassLoader") => Some("ClassLoader"),
        (Some("Class"), "getSuperclass") => Some("Class"),
        (
            Some("String"),
            "trim" | "strip" | "substring" | "toLowerCase" | "toUpperCase" | "concat" | "replace"
            | "replaceAll" | "intern",
        ) => Some("String"),
        (Some("String"), "valueOf" | "format" | "join") => Some("String"),
        (Some("File"), "getParentFile" | "getAbsoluteFile" | "getCanonicalFile") => Some("File"),
        (Some("File"), "getName" | "getPath" | "getParent" | "getAbsolutePath" | "getCanonicalPath") => {
            Some("String")
        }
        (Some("File"), "toPath") => Some("Path"),
        (Some("Path"), "normalize" | "resolve" | "getParent" | "getFileName" | "toAbsolutePath") => {
            Some("Path")
        }
        (Some("Path"), "toFile") => Some("File"),
        (Some("StringBuilder"), "append" | "insert" | "reverse") => Some("StringBuilder"),
        (Some("Throwable" | "Exception" | "RuntimeException"), "getMessage") => Some("String"),
        (Some("Throwable" | "Exception" | "RuntimeException"), "getCause") => Some("Throwable"),
        _ => None,
    }
}

struct Local {
    name: String,
    key: Key,
    ty: Ty,
}

struct Collector<'a> {
    sym: &'a ProjectSymbols,
    stdlib: &'a StdlibIndex,
    decls: BTreeMap<Key, Vec<Span>>,
    uses: BTreeMap<Key, Vec<Span>>,
    scopes: Vec<Vec<Local>>,
    class: Option<String>,
}

impl<'a> Collector<'a> {
    fn decl(&mut self, key: Key, at: &Span) {
        self.uses.entry(key.clone()).or_default();
        self.decls.entry(key).or_default().push(at.clone());
    }

    fn use_site(&mut self, key: Key, at: &Span) {
        self.uses.entry(key).or_default().push(at.clone());
    }

    fn class_key(&self, name: &str) -> Option<Key> {
        let info = self.sym.classes.get(name)?;
        Some(Key::declared(name, IdentKind::Class, info.decl.as_ref()?))
    }

    fn function_key(&self, name: &str) -> Option<Key> {
        self.sym
            .methods
            .get(name)
            .map(|at| Key::declared(name, IdentKind::Function, at))
    }

    fn type_use(&mut self, id: &Ident) {
        let key = self
            .class_key(&id.name)
            .unwrap_or_else(|| Key::external(&id.name, IdentKind::Class));
        self.use_site(key, &id.span);
    }

    fn type_ref(&mut self, ty: &TypeRef) {
        if let TypeRef::Named(id) = ty {
            self.type_use(id);
        }
    }

    fn lookup_local(&self, name: &str) -> Option<(Key, Ty)> {
        self.scopes
            .iter()
            .rev()
            .flat_map(|s| s.iter().rev())
            .find(|l| l.name == name)
            .map(|l| (l.key.clone(), l.ty.clone()))
    }

    fn declare_local(&mut self, name: &Ident, ty: Ty) {
        let key = Key::declared(&name.name, IdentKind::Variable, &name.span);
        self.decl(key.clone(), &name.span);
        if let Some(scope) = self.scopes.last_mut() {
            scope.push(Local {
                name: name.name.clone(),
                key,
                ty,
            });
        }
    }

    fn file(&mut self, file: &SourceFile) {
        for import in &file.imports {
            if import.wildcard {
                continue;
            }
            if let Some(last) = import.path.segments.last() {
                self.type_use(last);
            }
        }
        for class in &file.types {
            self.class_decl(class);
        }
    }

    fn class_decl(&mut self, class: &ClassDecl) {
        let key = self
            .class_key(&class.name.name)
            .expect("project class registered in symbols");
        self.decl(key, &class.name.span);
        if let Some(ext) = &class.extends {
            self.type_use(ext);
        }
        for i in &class.implements {
            self.type_use(i);
        }
        self.class = Some(class.name.name.clone());
        for member in &class.members {
            match member {
                Member::Field(f) => {
                    self.type_ref(&f.ty);
                    let key = Key::declared(&f.name.name, IdentKind::Variable, &self.field_decl(&f.name));
                    self.decl(key, &f.name.span);
                    if let Some(init) = &f.init {
                        self.scopes.push(Vec::new());
                        self.expr(init);
                        self.scopes.pop();
                    }
                }
                Member::Method(m) => self.method(m),
            }
        }
        self.class = None;
    }

    /// Declaration span that keys a field: its own, or the first field of
    /// the same name in the same class if it is redeclared.
    fn field_decl(&self, name: &Ident) -> Span {
        self.class
            .as_deref()
            .and_then(|c| self.sym.classes.get(c))
            .and_then(|info| info.fields.get(&name.name))
            .map(|(at, _)| at.clone())
            .unwrap_or_else(|| name.span.clone())
    }

    fn method(&mut self, m: &MethodDecl) {
        if let Some(rt) = &m.return_type {
            self.type_ref(rt);
        }
        if m.is_constructor() {
            let key = self
                .class_key(&m.name.name)
                .unwrap_or_else(|| Key::external(&m.name.name, IdentKind::Class));
            self.use_site(key, &m.name.span);
        } else {
            let key = self.function_key(&m.name.name).expect("method registered in symbols");
            self.decl(key, &m.name.span);
        }
        self.scopes.push(Vec::new());
        for p in &m.params {
            self.type_ref(&p.ty);
            self.declare_local(&p.name, Ty::of(&p.ty));
        }
        for t in &m.throws {
            self.type_use(t);
        }
        self.block(&m.body);
        self.scopes.pop();
    }

    fn block(&mut self, block: &Block) {
        self.scopes.push(Vec::new());
        for s in &block.stmts {
            self.stmt(s);
        }
        self.scopes.pop();
    }

    fn stmt(&mut self, stmt: &Stmt) {
        match &stmt.kind {
            StmtKind::Block(b) => self.block(b),
            StmtKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                self.expr(cond);
                self.block(then_branch);
                if let Some(e) = else_branch {
                    self.block(e);
                }
            }
            StmtKind::While { cond, body } => {
                self.expr(cond);
                self.block(body);
            }
            StmtKind::For {
                init,
                cond,
                update,
                body,
            } => {
                self.scopes.push(Vec::new());
                for s in init {
                    self.stmt(s);
                }
                if let Some(c) = cond {
                    self.expr(c);
                }
                for u in update {
                    self.expr(u);
                }
                self.block(body);
                self.scopes.pop();
            }
            StmtKind::Switch { scrutinee, cases } => {
                self.expr(scrutinee);
                self.scopes.push(Vec::new());
                for case in cases {
                    for s in &case.body {
                        self.stmt(s);
                    }
                }
                self.scopes.pop();
            }
            StmtKind::LocalVar(v) => {
                self.type_ref(&v.ty);
                let init_ty = v.init.as_ref().map(|e| self.expr(e)).unwrap_or(Ty::Unknown);
                let ty = match &v.ty {
                    TypeRef::Inferred => init_ty,
                    other => Ty::of(other),
                };
                self.declare_local(&v.name, ty);
            }
            StmtKind::Expr(e) | StmtKind::Throw(e) | StmtKind::Return(Some(e)) => {
                self.expr(e);
            }
            StmtKind::Return(None) | StmtKind::Break | StmtKind::Continue => {}
        }
    }

    fn name(&mut self, id: &Ident) -> Ty {
        if let Some((key, ty)) = self.lookup_local(&id.name) {
            self.use_site(key, &id.span);
            return ty;
        }
        if let Some(class) = self.class.clone() {
            if let Some((at, ty)) = self.sym.field_of(&class, &id.name) {
                let ty = Ty::of(ty);
                self.use_site(Key::declared(&id.name, IdentKind::Variable, at), &id.span);
                return ty;
            }
        }
        if let Some(key) = self.class_key(&id.name) {
            self.use_site(key, &id.span);
            return Ty::Static(id.name.clone());
        }
        if id.name.starts_with(|c: char| c.is_uppercase())
            && (self.stdlib.contains(&id.name) || self.sym.is_imported(&id.name))
        {
            self.use_site(Key::external(&id.name, IdentKind::Class), &id.span);
            return Ty::Static(id.name.clone());
        }
        self.use_site(Key::external(&id.name, IdentKind::Variable), &id.span);
        Ty::Unknown
    }

    fn expr(&mut self, e: &Expr) -> Ty {
        match &e.kind {
            ExprKind::Name(id) => self.name(id),
            ExprKind::Literal(Literal::Str(_)) => Ty::Instance("String".into()),
            ExprKind::Literal(_) => Ty::Unknown,
            ExprKind::This => self.class.clone().map(Ty::Instance).unwrap_or(Ty::Unknown),
            ExprKind::Unary { operand, .. } => {
                self.expr(operand);
                Ty::Unknown
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let l = self.expr(lhs);
                let r = self.expr(rhs);
                let string = Ty::Instance("String".into());
                if *op == BinaryOp::Add && (l == string || r == string) {
                    string
                } else {
                    Ty::Unknown
                }
            }
            ExprKind::Ternary {
                cond,
                then_expr,
                else_expr,
            } => {
                self.expr(cond);
                let t = self.expr(then_expr);
                let f = self.expr(else_expr);
                if t == f {
                    t
                } else {
                    Ty::Unknown
                }
            }
            ExprKind::Assign { target, value } => {
                let ty = self.expr(target);
                self.expr(value);
                ty
            }
            ExprKind::New { class, args } => {
                self.type_use(class);
                for a in args {
                    self.expr(a);
                }
                Ty::Instance(class.name.clone())
            }
            ExprKind::FieldAccess { target, field } => {
                let recv = self.expr(target);
                self.field_access(&recv, field)
            }
            ExprKind::Call {
                receiver,
                method,
                args,
            } => {
                let recv = match receiver {
                    Some(r) => self.expr(r),
                    None => self.class.clone().map(Ty::Instance).unwrap_or(Ty::Unknown),
                };
                let ty = self.call(&recv, method);
                for a in args {
                    self.expr(a);
                }
                ty
            }
        }
    }

    fn field_access(&mut self, recv: &Ty, field: &Ident) -> Ty {
        let found = match recv.class() {
            Some(c) if self.sym.is_class(c) => self.sym.field_of(c, &field.name).cloned(),
            Some(_) => None,
            None => self
                .sym
                .fields
                .get(&field.name)
                .filter(|_| !self.stdlib.contains(&field.name))
                .map(|at| {
                    let ty = self
                        .sym
                        .classes
                        .values()
                        .find_map(|c| c.fields.get(&field.name).filter(|(s, _)| s == at))
                        .map(|(_, t)| t.clone())
                        .unwrap_or(TypeRef::Inferred);
                    (at.clone(), ty)
                }),
        };
        match found {
            Some((at, ty)) => {
                self.use_site(Key::declared(&field.name, IdentKind::Variable, &at), &field.span);
                Ty::of(&ty)
            }
            None => {
                self.use_site(Key::external(&field.name, IdentKind::Variable), &field.span);
                Ty::Unknown
            }
        }
    }

    fn call(&mut self, recv: &Ty, method: &Ident) -> Ty {
        let project = match recv.class() {
            Some(c) if self.sym.is_class(c) => self.sym.class_has_method(c, &method.name),
            Some(_) => false,
            None => self.sym.declares_method(&method.name) && !self.stdlib.contains(&method.name),
        };
        if project {
            let key = self.function_key(&method.name).expect("declared method");
            self.use_site(key, &method.span);
            let rt = match recv.class() {
                Some(c) => self.sym.method_return_type(c, &method.name),
                None => self.sym.any_method_return_type(&method.name),
            };
            return rt.map(Ty::of).unwrap_or(Ty::Unknown);
        }
        self.use_site(Key::external(&method.name, IdentKind::Function), &method.span);
        known_return_type(recv.class(), &method.name)
            .map(|t| Ty::Instance(t.to_string()))
            .unwrap_or(Ty::Unknown)
    }
}

/// Collects every identifier occurrence in `files` and attributes it to one
/// entry. With `focus`, only entries with at least one site inside the focus
/// span are kept.
pub fn collect_identifiers(files: &[SourceFile], focus: Option<&Span>, stdlib: &StdlibIndex) -> IdentifierTable {
    let sym = ProjectSymbols::build(files);
    let mut c = Collector {
        sym: &sym,
        stdlib,
        decls: BTreeMap::new(),
        uses: BTreeMap::new(),
        scopes: Vec::new(),
        class: None,
    };
    for file in files {
        c.file(file);
    }
    let mut decls = c.decls;
    let entries = c
        .uses
        .into_iter()
        .map(|(key, use_sites)| IdentifierEntry {
            decl_sites: decls.remove(&key).unwrap_or_default(),
            name: key.name,
            kind: key.kind,
            use_sites,
            origin: Origin::External,
        })
        .filter(|e| focus.map_or(true, |f| e.sites().any(|s| f.contains(s))))
        .collect();
    let table = IdentifierTable {
        entries,
        diagnostics: Vec::new(),
    };
    let imports: Vec<String> = sym.imports.iter().cloned().collect();
    classify_origin(table, &imports, stdlib)
}

/// Sets each entry's origin from its declaration sites and recomputes the
/// unresolved-name diagnostics. Running it twice changes nothing.
pub fn classify_origin(mut table: IdentifierTable, imports: &[String], stdlib: &StdlibIndex) -> IdentifierTable {
    table.diagnostics.clear();
    for entry in &mut table.entries {
        entry.origin = if entry.decl_sites.is_empty() {
            Origin::External
        } else {
            Origin::Project
        };
        if entry.origin == Origin::External
            && !stdlib.contains(&entry.name)
            && !imports.iter().any(|i| i == &entry.name)
        {
            for site in &entry.use_sites {
                table.diagnostics.push(Diagnostic::UnresolvedIdentifier {
                    name: entry.name.clone(),
                    span: site.clone(),
                });
            }
        }
    }
    table.diagnostics.sort_by(|a, b| {
        let Diagnostic::UnresolvedIdentifier { span: sa, .. } = a;
        let Diagnostic::UnresolvedIdentifier { span: sb, .. } = b;
        sa.cmp(sb)
    });
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::visit::{walk_file, Visitor};

    fn parse_all(sources: &[(&str, &str)]) -> Vec<SourceFile> {
        sources
            .iter()
            .map(|(path, text)| parse(text, path).expect("parses"))
            .collect()
    }

    const FILE_A: &str = r#"
package app;

import java.io.File;

public class Store {
    private int count;

    public Store(int start) {
        count = start;
    }

    public int size() {
        return count;
    }

    public String describe(File parentPath) {
        String name = parentPath.getName();
        int total = size() + this.count;
        return name + total;
    }
}
"#;

    const FILE_B: &str = r#"
package app;

public class Client {
    public int run(Store store) {
        int n = store.size();
        int size = n;
        System.out.println(size);
        return helper(size);
    }

    private int helper(int size) {
        return size;
    }
}
"#;

    fn table() -> (Vec<SourceFile>, IdentifierTable) {
        let files = parse_all(&[("A.java", FILE_A), ("B.java", FILE_B)]);
        let t = collect_identifiers(&files, None, &StdlibIndex::bundled());
        (files, t)
    }

    #[test]
    fn classifies_two_file_project() {
        let (_, t) = table();
        let origin = |name: &str, kind| t.find(name, kind).map(|e| e.origin);
        assert_eq!(origin("Store", IdentKind::Class), Some(Origin::Project));
        assert_eq!(origin("size", IdentKind::Function), Some(Origin::Project));
        assert_eq!(origin("helper", IdentKind::Function), Some(Origin::Project));
        assert_eq!(origin("getName", IdentKind::Function), Some(Origin::External));
        assert_eq!(origin("println", IdentKind::Function), Some(Origin::External));
        assert_eq!(origin("File", IdentKind::Class), Some(Origin::External));
        assert_eq!(origin("System", IdentKind::Class), Some(Origin::External));
        assert_eq!(origin("out", IdentKind::Variable), Some(Origin::External));
        assert!(t.diagnostics.is_empty(), "{:?}", t.diagnostics);
    }

    #[test]
    fn method_spans_files_and_locals_are_scoped() {
        let (_, t) = table();
        let size = t.find("size", IdentKind::Function).unwrap();
        assert_eq!(size.decl_sites.len(), 1);
        // `size()` in A and `store.size()` in B
        assert_eq!(size.use_sites.len(), 2);
        let locals: Vec<_> = t.entries_named("size").filter(|e| e.kind == IdentKind::Variable).collect();
        // local in run, parameter of helper
        assert_eq!(locals.len(), 2);
        assert!(locals.iter().all(|e| e.decl_sites.len() == 1 && e.origin == Origin::Project));
        let count = t.find("count", IdentKind::Variable).unwrap();
        assert_eq!(count.use_sites.len(), 3);
    }

    #[test]
    fn every_occurrence_is_attributed_once() {
        struct All(Vec<Span>);
        impl<'a> Visitor<'a> for All {
            fn visit_ident(&mut self, id: &'a Ident) {
                self.0.push(id.span.clone());
            }
        }
        let (files, t) = table();
        let mut all = All(Vec::new());
        for f in &files {
            walk_file(&mut all, f);
        }
        let mut expected = all.0;
        expected.sort();
        let mut got: Vec<Span> = t.iter().flat_map(|e| e.sites().cloned()).collect();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn classify_is_idempotent() {
        let (_, t) = table();
        let again = classify_origin(t.clone(), &[], &StdlibIndex::bundled());
        assert_eq!(again, t);
    }

    #[test]
    fn undeclared_unknown_name_is_external_with_diagnostic() {
        let files = parse_all(&[(
            "C.java",
            "class C { int f() { return mystery + Helper.go(); } }",
        )]);
        let t = collect_identifiers(&files, None, &StdlibIndex::bundled());
        assert_eq!(t.find("mystery", IdentKind::Variable).unwrap().origin, Origin::External);
        let names: Vec<_> = t
            .diagnostics
            .iter()
            .map(|Diagnostic::UnresolvedIdentifier { name, .. }| name.as_str())
            .collect();
        assert!(names.contains(&"mystery"));
        assert!(names.contains(&"go"));
    }

    #[test]
    fn typed_receiver_decides_project_vs_library() {
        let files = parse_all(&[(
            "D.java",
            "class D { String getName() { return \"d\"; } String f(D d, java_File x) { return d.getName() + x.getName(); } }",
        )]);
        let t = collect_identifiers(&files, None, &StdlibIndex::bundled());
        let project = t
            .entries_named("getName")
            .find(|e| e.origin == Origin::Project)
            .unwrap();
        assert_eq!(project.use_sites.len(), 1);
        let external = t
            .entries_named("getName")
            .find(|e| e.origin == Origin::External)
            .unwrap();
        assert_eq!(external.use_sites.len(), 1);
    }

    #[test]
    fn focus_limits_entries() {
        let (files, _) = table();
        let helper = files[1].find_method("helper").unwrap();
        let t = collect_identifiers(&files, Some(&helper.span), &StdlibIndex::bundled());
        let names: BTreeSet<_> = t.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["helper", "size"].into_iter().collect());
    }
}
