//! Text format for polynomials and `.axioms` system files.
//!
//! Expressions use explicit `*`; identifiers are `[A-Za-z][A-Za-z0-9_]*`,
//! literals are `p` or `p/q`, `^` takes a non-negative integer literal.
//! Everything is expanded at parse time.
//!
//! ```text
//! # comment
//! vars: x y z a b
//! axiom p1: x^2 - a*y^2
//! axiom p2: b*y - z
//! hypothesis q: b^2*x^2 - a*z^2
//! ```

mod error;
mod lexer;
mod parser;
mod printer;
mod system;

pub use error::{ParseError, ParseErrorKind, Span};
pub use parser::{parse_polynomial, MAX_EXPONENT};
pub use printer::{print_polynomial, print_polynomial_compact};
pub use system::{parse_system, print_system, SystemFile};
