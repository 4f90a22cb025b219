use std::fmt::Write;

use num_traits::{One, Signed};

use crate::arith::{Monomial, MonomialOrder, Polynomial, Rational};

/// Canonical text form: terms descending under `ord`, variables inside a
/// term sorted by name.
pub fn print_polynomial(f: &Polynomial, ord: &MonomialOrder) -> String {
    render(f, ord, " + ", " - ", "-")
}

/// Same as [`print_polynomial`] without spaces around binary operators.
pub fn print_polynomial_compact(f: &Polynomial, ord: &MonomialOrder) -> String {
    render(f, ord, "+", "-", "-")
}

fn render(f: &Polynomial, ord: &MonomialOrder, plus: &str, minus: &str, lead_minus: &str) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let names = f.vars().names();
    let mut out = String::new();
    for (i, (m, c)) in f.sorted_terms(ord).into_iter().enumerate() {
        let sep = match (i, c.is_negative()) {
            (0, false) => "",
            (0, true) => lead_minus,
            (_, false) => plus,
            (_, true) => minus,
        };
        out.push_str(sep);
        write_term(&mut out, &c.abs(), m, names);
    }
    out
}

fn write_term(out: &mut String, c: &Rational, m: &Monomial, names: &[String]) {
    let mut first = true;
    if m.is_one() || !c.is_one() {
        write_rational(out, c);
        first = false;
    }
    let mut by_name: Vec<usize> = (0..names.len()).collect();
    by_name.sort_by(|&a, &b| names[a].cmp(&names[b]));
    for v in by_name {
        let e = m.exponents()[v];
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&names[v]);
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

fn write_rational(out: &mut String, c: &Rational) {
    if c.is_integer() {
        let _ = write!(out, "{}", c.numer());
    } else {
        let _ = write!(out, "{}/{}", c.numer(), c.denom());
    }
}
