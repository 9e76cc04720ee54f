//! Syntax tree for the Java subset.
//!
//! Every node carries a [`Span`]. Spans are ignored by
//! [`structurally_equal`](super::structurally_equal); everything else,
//! including attached comments, takes part in comparison.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::span::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: impl Into<String>, span: Span) -> Self {
        Ident {
            name: name.into(),
            span,
        }
    }

    pub fn synthetic(name: impl Into<String>) -> Self {
        Ident::new(name, Span::dummy())
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A comment, verbatim including its delimiters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comment {
    pub text: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DottedName {
    pub segments: Vec<Ident>,
}

impl fmt::Display for DottedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(&seg.name)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Import {
    pub comments: Vec<Comment>,
    pub path: DottedName,
    pub wildcard: bool,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceFile {
    pub path: Arc<str>,
    /// Comments before the first declaration (license headers and the like).
    pub header_comments: Vec<Comment>,
    pub package: Option<DottedName>,
    pub imports: Vec<Import>,
    pub types: Vec<ClassDecl>,
    pub trailing_comments: Vec<Comment>,
    pub span: Span,
}

impl SourceFile {
    pub fn methods(&self) -> impl Iterator<Item = (&ClassDecl, &MethodDecl)> {
        self.types
            .iter()
            .flat_map(|c| c.methods().map(move |m| (c, m)))
    }

    pub fn find_method(&self, name: &str) -> Option<&MethodDecl> {
        self.methods().map(|(_, m)| m).find(|m| m.name.name == name)
    }

    /// The innermost method whose span covers every line of `lines`.
    pub fn method_covering(&self, lines: crate::span::LineRange) -> Option<&MethodDecl> {
        self.methods()
            .map(|(_, m)| m)
            .find(|m| m.span.contains_lines(lines))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modifier {
    Public,
    Protected,
    Private,
    Static,
    Final,
}

impl Modifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Modifier::Public => "public",
            Modifier::Protected => "protected",
            Modifier::Private => "private",
            Modifier::Static => "static",
            Modifier::Final => "final",
        }
    }

    pub fn from_keyword(kw: &str) -> Option<Modifier> {
        Some(match kw {
            "public" => Modifier::Public,
            "protected" => Modifier::Protected,
            "private" => Modifier::Private,
            "static" => Modifier::Static,
            "final" => Modifier::Final,
            _ => return None,
        })
    }
}

pub type Modifiers = BTreeSet<Modifier>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecl {
    pub comments: Vec<Comment>,
    pub modifiers: Modifiers,
    pub name: Ident,
    pub extends: Option<Ident>,
    pub implements: Vec<Ident>,
    pub members: Vec<Member>,
    pub trailing_comments: Vec<Comment>,
    pub span: Span,
}

impl ClassDecl {
    pub fn methods(&self) -> impl Iterator<Item = &MethodDecl> {
        self.members.iter().filter_map(|m| match m {
            Member::Method(m) => Some(m),
            Member::Field(_) => None,
        })
    }

    pub fn fields(&self) -> impl Iterator<Item = &FieldDecl> {
        self.members.iter().filter_map(|m| match m {
            Member::Field(f) => Some(f),
            Member::Method(_) => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Member {
    Field(FieldDecl),
    Method(MethodDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDecl {
    pub comments: Vec<Comment>,
    pub modifiers: Modifiers,
    pub ty: TypeRef,
    pub name: Ident,
    pub init: Option<Expr>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MethodDecl {
    pub comments: Vec<Comment>,
    pub modifiers: Modifiers,
    /// `None` for constructors.
    pub return_type: Option<TypeRef>,
    pub name: Ident,
    pub params: Vec<Param>,
    pub throws: Vec<Ident>,
    pub body: Block,
    pub span: Span,
}

impl MethodDecl {
    pub fn is_constructor(&self) -> bool {
        self.return_type.is_none()
    }

    pub fn is_static(&self) -> bool {
        self.modifiers.contains(&Modifier::Static)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub is_final: bool,
    pub ty: TypeRef,
    pub name: Ident,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimitiveType {
    Boolean,
    Byte,
    Short,
    Int,
    Long,
    Char,
    Float,
    Double,
}

impl PrimitiveType {
    pub fn keyword(self) -> &'static str {
        match self {
            PrimitiveType::Boolean => "boolean",
            PrimitiveType::Byte => "byte",
            PrimitiveType::Short => "short",
            PrimitiveType::Int => "int",
            PrimitiveType::Long => "long",
            PrimitiveType::Char => "char",
            PrimitiveType::Float => "float",
            PrimitiveType::Double => "double",
        }
    }

    pub fn from_keyword(kw: &str) -> Option<Self> {
        Some(match kw {
            "boolean" => PrimitiveType::Boolean,
            "byte" => PrimitiveType::Byte,
            "short" => PrimitiveType::Short,
            "int" => PrimitiveType::Int,
            "long" => PrimitiveType::Long,
            "char" => PrimitiveType::Char,
            "float" => PrimitiveType::Float,
            "double" => PrimitiveType::Double,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeRef {
    Void,
    Primitive(PrimitiveType),
    Named(Ident),
    /// `var`
    Inferred,
}

impl TypeRef {
    pub fn named(name: &str) -> TypeRef {
        TypeRef::Named(Ident::synthetic(name))
    }

    pub fn class_name(&self) -> Option<&str> {
        match self {
            TypeRef::Named(id) => Some(&id.name),
            _ => None,
        }
    }
}

impl fmt::Display for TypeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeRef::Void => f.write_str("void"),
            TypeRef::Primitive(p) => f.write_str(p.keyword()),
            TypeRef::Named(id) => f.write_str(&id.name),
            TypeRef::Inferred => f.write_str("var"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub stmts: Vec<Stmt>,
    /// Comments after the last statement, before the closing brace.
    pub trailing_comments: Vec<Comment>,
    pub span: Span,
}

impl Block {
    pub fn new(stmts: Vec<Stmt>, span: Span) -> Self {
        Block {
            stmts,
            trailing_comments: Vec::new(),
            span,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
    pub comments: Vec<Comment>,
}

impl Stmt {
    pub fn new(kind: StmtKind, span: Span) -> Self {
        Stmt {
            kind,
            span,
            comments: Vec::new(),
        }
    }

    /// True for statements that transfer control (`return`, `break`,
    /// `continue`, `throw`) or contain nested statements.
    pub fn is_control_flow(&self) -> bool {
        !matches!(self.kind, StmtKind::LocalVar(_) | StmtKind::Expr(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalVar {
    pub is_final: bool,
    pub ty: TypeRef,
    pub name: Ident,
    pub init: Option<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Block(Block),
    If {
        cond: Expr,
        then_branch: Block,
        else_branch: Option<Block>,
    },
    While {
        cond: Expr,
        body: Block,
    },
    /// `init` holds zero or more `LocalVar`/`Expr` statements (several for
    /// comma-separated initializers); `update` likewise.
    For {
        init: Vec<Stmt>,
        cond: Option<Expr>,
        update: Vec<Expr>,
        body: Block,
    },
    Switch {
        scrutinee: Expr,
        cases: Vec<SwitchCase>,
    },
    LocalVar(LocalVar),
    Expr(Expr),
    Return(Option<Expr>),
    Break,
    Continue,
    Throw(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    Literal(Literal),
    Default,
}

/// One arm of a switch. `terminated` records a trailing `break;`, which is
/// not kept in `body`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchCase {
    pub comments: Vec<Comment>,
    pub labels: Vec<CaseLabel>,
    pub body: Vec<Stmt>,
    pub terminated: bool,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    /// 32-bit integer. `i32::MIN` only occurs as the operand of unary minus
    /// (source text `-2147483648`).
    Int(i32),
    Bool(bool),
    Str(String),
    Null,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Not,
    Neg,
}

impl UnaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Not => "!",
            UnaryOp::Neg => "-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    And,
    Or,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Rem => "%",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::And => "&&",
            BinaryOp::Or => "||",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Some(match s {
            "+" => BinaryOp::Add,
            "-" => BinaryOp::Sub,
            "*" => BinaryOp::Mul,
            "/" => BinaryOp::Div,
            "%" => BinaryOp::Rem,
            "<" => BinaryOp::Lt,
            "<=" => BinaryOp::Le,
            ">" => BinaryOp::Gt,
            ">=" => BinaryOp::Ge,
            "==" => BinaryOp::Eq,
            "!=" => BinaryOp::Ne,
            "&&" => BinaryOp::And,
            "||" => BinaryOp::Or,
            _ => return None,
        })
    }

    /// Binding strength; higher binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            BinaryOp::Or => 3,
            BinaryOp::And => 4,
            BinaryOp::Eq | BinaryOp::Ne => 5,
            BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge => 6,
            BinaryOp::Add | BinaryOp::Sub => 7,
            BinaryOp::Mul | BinaryOp::Div | BinaryOp::Rem => 8,
        }
    }
}

pub const PREC_ASSIGN: u8 = 1;
pub const PREC_TERNARY: u8 = 2;
pub const PREC_UNARY: u8 = 9;
pub const PREC_POSTFIX: u8 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Name(Ident),
    Literal(Literal),
    This,
    Unary {
        op: UnaryOp,
        operand: Box<Expr>,
    },
    Binary {
        op: BinaryOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Ternary {
        cond: Box<Expr>,
        then_expr: Box<Expr>,
        else_expr: Box<Expr>,
    },
    Call {
        receiver: Option<Box<Expr>>,
        method: Ident,
        args: Vec<Expr>,
    },
    FieldAccess {
        target: Box<Expr>,
        field: Ident,
    },
    /// `target` is a `Name` or `FieldAccess`.
    Assign {
        target: Box<Expr>,
        value: Box<Expr>,
    },
    New {
        class: Ident,
        args: Vec<Expr>,
    },
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    pub fn name(name: &str, span: Span) -> Self {
        Expr::new(ExprKind::Name(Ident::new(name, span.clone())), span)
    }

    pub fn not(operand: Expr) -> Self {
        let span = operand.span.clone();
        Expr::new(
            ExprKind::Unary {
                op: UnaryOp::Not,
                operand: Box::new(operand),
            },
            span,
        )
    }

    pub fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Assign { .. } => PREC_ASSIGN,
            ExprKind::Ternary { .. } => PREC_TERNARY,
            ExprKind::Binary { op, .. } => op.precedence(),
            ExprKind::Unary { .. } => PREC_UNARY,
            _ => PREC_POSTFIX,
        }
    }

    pub fn as_name(&self) -> Option<&str> {
        match &self.kind {
            ExprKind::Name(id) => Some(&id.name),
            _ => None,
        }
    }

    pub fn is_call(&self) -> bool {
        matches!(self.kind, ExprKind::Call { .. })
    }
}
