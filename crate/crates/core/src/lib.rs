//! Exact polynomial ideal engine: Gröbner bases, elimination, minimal-prime
//! decomposition, and abduction of missing axioms.

pub mod abduce;
pub mod arith;
pub mod groebner;
pub mod idealops;
pub mod decompose;
pub mod error;
pub mod factor;
pub mod syntax;

pub use arith::{Monomial, MonomialOrder, OrderKind, Polynomial, Rational, VarTable};
pub use error::{Error, Resource, Result};
