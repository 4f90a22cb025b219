//! Exact rationals, dense monomials, monomial orders and sparse polynomials.

mod monomial;
mod order;
mod poly;
mod vars;

pub use monomial::{Exponent, Monomial};
pub use order::{MonomialOrder, OrderKind};
pub use poly::{poly_arith, ArithOp, Polynomial};
pub use vars::{is_identifier, VarTable, AUX_VAR};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
