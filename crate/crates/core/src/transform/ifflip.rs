use super::{TransformError, TransformRule};
use crate::syntax::*;

fn not_operand(e: &Expr) -> Option<&Expr> {
    match &e.kind {
        ExprKind::Unary {
            op: UnaryOp::Not,
            operand,
        } => Some(operand),
        _ => None,
    }
}

/// Logical negation without De Morgan, and its own inverse: an odd number
/// of leading `!` loses one, an even number (including none) gains one. So
/// `!x` becomes `x` while `!!x` becomes `!!!x`. The printer adds parentheses
/// where precedence needs them.
pub fn negate(e: &Expr) -> Expr {
    let depth = std::iter::successors(Some(e), |e| not_operand(e)).count() - 1;
    match not_operand(e) {
        Some(inner) if depth % 2 == 1 => inner.clone(),
        _ => Expr::not(e.clone()),
    }
}

/// `if (c) A else B` becomes `if (!c) B else A`.
pub fn flip_if(s: &Stmt) -> Result<Stmt, TransformError> {
    let StmtKind::If {
        cond,
        then_branch,
        else_branch,
    } = &s.kind
    else {
        return Err(TransformError::na(TransformRule::IfFlip, "not-an-if"));
    };
    let Some(else_branch) = else_branch.as_ref().filter(|b| !b.stmts.is_empty()) else {
        return Err(TransformError::na(TransformRule::IfFlip, "no-else"));
    };
    Ok(Stmt {
        kind: StmtKind::If {
            cond: negate(cond),
            then_branch: else_branch.clone(),
            else_branch: Some(then_branch.clone()),
        },
        span: s.span.clone(),
        comments: s.comments.clone(),
    })
}
