//! Semantics-preserving source-to-source transformations for a Java subset.
//!
//! The crate is organized bottom-up:
//!
//! * [`syntax`]: lexer, parser, syntax tree and pretty-printer.
//! * [`ident`]: identifier collection, origin classification and tokenization.
//! * [`rename`]: synonym-based rename plans, dictionaries and patch recovery.
//! * [`transform`]: the six structural rewrite rules and the apply-all driver.
//! * [`oracle`]: a small interpreter and randomized equivalence checking.
//! * [`bench`]: variant generation, manifests, prompts, statistics and
//!   external validation hooks.

pub mod span;
pub mod ident;
pub mod rename;
pub mod syntax;
pub mod transform;
pub mod oracle;
pub mod bench;

pub use span::{LineIndex, LineRange, Span};
