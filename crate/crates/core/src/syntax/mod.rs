//! Lexer, parser, syntax tree and printer for the supported Java subset.

pub mod ast;
mod error;
pub mod lexer;
mod parser;
pub mod printer;
pub mod visit;

pub use ast::*;
pub use error::{ParseError, SyntaxError};
pub use parser::{parse, parse_expr, parse_stmts};
pub use printer::{print, print_expr, print_method, print_stmt};
pub use visit::{erase_spans, Walk};

/// True iff the two trees are equal once spans (and file paths) are ignored.
/// Whitespace never reaches the tree, so layout differences do not matter;
/// there is no algebraic normalization.
pub fn structurally_equal<T: Walk + Clone + PartialEq>(a: &T, b: &T) -> bool {
    let mut a = a.clone();
    let mut b = b.clone();
    erase_spans(&mut a);
    erase_spans(&mut b);
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structural_equality_ignores_whitespace_only() {
        let a = parse_expr("x+1").unwrap();
        assert!(structurally_equal(&a, &a));
        assert!(structurally_equal(&a, &parse_expr("x + 1").unwrap()));
        assert!(!structurally_equal(&a, &parse_expr("1+x").unwrap()));
    }
}
