//! Desk-scale factorization over ℚ.
//!
//! The splitter combines monomial and per-variable content extraction,
//! square-free reduction through gcds with the partial derivatives, an
//! exact discriminant test for polynomials of degree two in some variable,
//! and a divisor search for factors linear in some variable. Anything
//! beyond that is returned unsplit with `complete = false`.

mod gcd;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{Monomial, Polynomial, Rational, VarTable};
pub use gcd::{content_in, exact_div, gcd, primitive_in};
use gcd::{coefficients, norm_order, normalize, var_power};

/// `unit * Π factor^mult` equals the input exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub vars: Arc<VarTable>,
    pub unit: Rational,
    pub factors: Vec<(Polynomial, u32)>,
    /// True when every factor is certified irreducible by the techniques used.
    pub complete: bool,
}

impl Factorization {
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::constant(&self.vars, self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn distinct_factors(&self) -> impl Iterator<Item = &Polynomial> {
        self.factors.iter().map(|(f, _)| f)
    }
}

/// Largest divisor search before giving up on a linear-factor hunt.
const MAX_LINEAR_CANDIDATES: usize = 4096;
const MAX_INT_TRIAL: u64 = 1_000_000;

/// Product of the distinct irreducible factors of `f`, normalized.
pub fn squarefree_part(f: &Polynomial) -> Polynomial {
    if f.is_zero() || f.is_constant() {
        return normalize(f);
    }
    let mut g = f.clone();
    for v in f.support() {
        g = gcd(&g, &f.derivative(v));
        if g.is_constant() {
            break;
        }
    }
    normalize(&exact_div(f, &g).expect("gcd divides"))
}

pub fn factor(f: &Polynomial) -> Factorization {
    assert!(!f.is_zero(), "factor of the zero polynomial");
    let ord = norm_order(f);
    if f.is_constant() {
        return Factorization { vars: f.vars().clone(), unit: f.constant_value().expect("constant"), factors: Vec::new(), complete: true };
    }
    let (_, prim) = f.primitive(&ord);
    let mut pieces: Vec<Polynomial> = Vec::new();
    let mut complete = true;

    // Variables dividing every term.
    let mut rest = prim.clone();
    let n = f.nvars();
    let mut mins = vec![u16::MAX; n];
    for (m, _) in prim.terms() {
        for (i, &e) in m.exponents().iter().enumerate() {
            mins[i] = mins[i].min(e);
        }
    }
    if mins.iter().any(|&e| e > 0) {
        let mon = Monomial::from_exponents(&mins);
        for (i, &e) in mins.iter().enumerate() {
            if e > 0 {
                pieces.push(Polynomial::var(f.vars(), i));
            }
        }
        let inv = Polynomial::from_terms(
            f.vars(),
            rest.terms().iter().map(|(m, c)| (m.div(&mon).expect("common monomial"), c.clone())),
        );
        rest = inv;
    }

    if !rest.is_constant() {
        let sq = squarefree_part(&rest);
        split(&sq, &mut pieces, &mut complete);
    }

    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    let mut remaining = prim.clone();
    for p in pieces {
        let p = normalize(&p);
        if factors.iter().any(|(q, _)| q.is_associate(&p)) {
            continue;
        }
        let mut mult = 0u32;
        while let Some(q) = exact_div(&remaining, &p) {
            remaining = q;
            mult += 1;
        }
        debug_assert!(mult > 0);
        factors.push((p, mult));
    }
    debug_assert!(remaining.is_constant());
    factors.sort_by_key(|a| factor_key(&a.0));

    let mut acc = Polynomial::one(f.vars());
    for (p, m) in &factors {
        acc = &acc * &p.pow(*m);
    }
    let lc_f = f.leading_coefficient(&ord).expect("nonzero");
    let lc_acc = acc.leading_coefficient(&ord).expect("nonzero");
    Factorization { vars: f.vars().clone(), unit: lc_f / lc_acc, factors, complete }
}

fn factor_key(p: &Polynomial) -> (u32, String) {
    (p.total_degree(), crate::syntax::print_polynomial(p, &norm_order(p)))
}

/// Splits a square-free polynomial without monomial content into pieces.
fn split(p: &Polynomial, out: &mut Vec<Polynomial>, complete: &mut bool) {
    if p.is_constant() {
        return;
    }
    // Per-variable content.
    for v in p.support() {
        let c = content_in(p, v);
        if !c.is_constant() {
            let q = exact_div(p, &c).expect("content divides");
            split(&c, out, complete);
            split(&q, out, complete);
            return;
        }
    }
    // A variable of minimal positive degree decides the technique.
    let support = p.support();
    let v = *support.iter().min_by_key(|&&v| (p.degree_in(v), v)).expect("non-constant");
    let d = p.degree_in(v);
    if d == 1 {
        out.push(p.clone());
        return;
    }
    if d == 2 {
        match split_quadratic(p, v) {
            Some((a, b)) => {
                split(&a, out, complete);
                split(&b, out, complete);
            }
            None => out.push(p.clone()),
        }
        return;
    }
    match linear_factor(p, v) {
        LinearSearch::Found(a) => {
            let b = exact_div(p, &a).expect("checked divisor");
            split(&a, out, complete);
            split(&b, out, complete);
        }
        LinearSearch::None { exhaustive } => {
            // A cubic without linear factors is irreducible; higher degrees
            // may still hide nonlinear factors.
            if d > 3 || !exhaustive {
                *complete = false;
            }
            out.push(p.clone());
        }
    }
}

/// `p = a v² + b v + c`, primitive in `v`, splits iff the discriminant is a
/// square.
fn split_quadratic(p: &Polynomial, v: usize) -> Option<(Polynomial, Polynomial)> {
    let cs = coefficients(p, v);
    let (c, b, a) = (&cs[0], &cs[1], &cs[2]);
    let four = Polynomial::constant(p.vars(), Rational::from_integer(4.into()));
    let disc = &(b * b) - &(&four * &(a * c));
    let root = poly_sqrt(&disc)?;
    let two = Polynomial::constant(p.vars(), Rational::from_integer(2.into()));
    let lin = &(&(&two * a) * &var_power(p, v, 1)) + b;
    let f1 = primitive_in(&(&lin - &root), v);
    let f2 = exact_div(p, &f1)?;
    if f1.is_constant() || f2.is_constant() {
        return None;
    }
    Some((f1, f2))
}

/// Square root of a polynomial over ℚ when it is a perfect square.
pub fn poly_sqrt(f: &Polynomial) -> Option<Polynomial> {
    if f.is_zero() {
        return Some(f.clone());
    }
    let ord = crate::arith::MonomialOrder::lex(f.nvars());
    let (m, c) = f.leading_term(&ord).ok()?;
    let half: Vec<u16> = m.exponents().iter().map(|&e| if e % 2 == 0 { Some(e / 2) } else { None }).collect::<Option<_>>()?;
    let rc = rational_sqrt(&c)?;
    let lead = Polynomial::monomial(f.vars(), Monomial::from_exponents(&half), rc);
    let (lm, lc) = lead.leading_term(&ord).ok()?;
    let two_lc = &lc * Rational::from_integer(2.into());
    let mut h = lead;
    let min_deg = f.terms().iter().map(|(m, _)| m.degree()).min().unwrap_or(0);
    // Candidate terms strictly decrease and stay within the degree window.
    for _ in 0..10_000 {
        let r = f - &(&h * &h);
        if r.is_zero() {
            return Some(h);
        }
        let (rm, rc) = r.leading_term(&ord).ok()?;
        let qm = rm.div(&lm)?;
        if ord.compare(&qm, &lm) != std::cmp::Ordering::Less || 2 * qm.degree() < min_deg {
            return None;
        }
        h = &h + &Polynomial::monomial(f.vars(), qm, rc / &two_lc);
    }
    None
}

fn rational_sqrt(c: &Rational) -> Option<Rational> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    if &(&n * &n) == c.numer() && &(&d * &d) == c.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

enum LinearSearch {
    Found(Polynomial),
    None { exhaustive: bool },
}

/// Looks for a factor `α v + β` with `α | lc_v(p)` and `β | tc_v(p)`.
fn linear_factor(p: &Polynomial, v: usize) -> LinearSearch {
    let q = normalize(p);
    let cs = coefficients(&q, v);
    let lead = cs.last().expect("nonzero").clone();
    let tail = cs[0].clone();
    if tail.is_zero() {
        return LinearSearch::Found(var_power(p, v, 1));
    }
    let (da, ea) = divisors(&lead);
    let (db, eb) = divisors(&tail);
    let mut exhaustive = ea && eb;
    if da.len().saturating_mul(db.len()).saturating_mul(2) > MAX_LINEAR_CANDIDATES {
        return LinearSearch::None { exhaustive: false };
    }
    let x = var_power(p, v, 1);
    for a in &da {
        for b in &db {
            for sign in [1i64, -1] {
                let bb = b.scale(&Rational::from_integer(sign.into()));
                let cand = &(a * &x) + &bb;
                let cand = normalize(&cand);
                if content_in(&cand, v).is_constant() && exact_div(&q, &cand).is_some() {
                    return LinearSearch::Found(cand);
                }
            }
        }
    }
    if da.is_empty() || db.is_empty() {
        exhaustive = false;
    }
    LinearSearch::None { exhaustive }
}

/// Positive-content divisors of an integer polynomial (up to sign), and
/// whether the list is provably complete.
fn divisors(f: &Polynomial) -> (Vec<Polynomial>, bool) {
    let ord = norm_order(f);
    let (unit, prim) = f.primitive(&ord);
    // unit = content (possibly signed) since f has integer coefficients.
    let content = unit.abs();
    let (int_divs, int_ok) = if content.is_integer() { integer_divisors(content.numer()) } else { (vec![BigInt::one()], false) };
    let mut complete = int_ok;
    let mut polys = vec![Polynomial::one(f.vars())];
    if !prim.is_constant() {
        let fz = factor(&prim);
        complete &= fz.complete;
        for (g, m) in &fz.factors {
            let mut next = Vec::new();
            for base in &polys {
                let mut acc = base.clone();
                next.push(acc.clone());
                for _ in 0..*m {
                    acc = &acc * g;
                    next.push(acc.clone());
                }
            }
            polys = next;
            if polys.len() > MAX_LINEAR_CANDIDATES {
                return (polys, false);
            }
        }
    }
    let mut out = Vec::with_capacity(polys.len() * int_divs.len());
    for d in &int_divs {
        let s = Rational::from_integer(d.clone());
        for p in &polys {
            out.push(p.scale(&s));
        }
    }
    (out, complete)
}

fn integer_divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let n = n.abs();
    if n.is_zero() {
        return (vec![BigInt::one()], false);
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(MAX_INT_TRIAL);
    while &p * &p <= m && p <= limit {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    let complete = &p * &p > m;
    if !m.is_one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = &acc * &p;
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    (divs, complete)
}

/// Whether `f` splits into at least two non-associate factors.
pub fn splits(f: &Polynomial) -> Option<Vec<Polynomial>> {
    if f.is_constant() {
        return None;
    }
    let fz = factor(&squarefree_part(f));
    if fz.factors.len() >= 2 {
        Some(fz.factors.into_iter().map(|(p, _)| p).collect())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::VarTable;
    use crate::syntax::parse_polynomial;

    fn parse(s: &str, names: &[&str]) -> Polynomial {
        let v = VarTable::new(names.iter().copied()).unwrap();
        parse_polynomial(s, &v).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let v = ["Fg", "d1", "d2", "x", "y"];
        assert_eq!(squarefree_part(&parse("(d1+d2)^2", &v)), parse("d1 + d2", &v));
        assert_eq!(squarefree_part(&parse("x", &v)), parse("x", &v));
        assert_eq!(squarefree_part(&parse("x^3*y^2", &v)), parse("x*y", &v));
    }

    #[test]
    fn difference_of_squares_with_content() {
        let v = ["x", "y", "z", "a", "b"];
        let f = parse("a*z^2 - a*b^2*y^2", &v);
        let fz = factor(&f);
        assert_eq!(fz.expand(), f);
        let got: Vec<String> = fz.distinct_factors().map(|p| p.to_string()).collect();
        assert_eq!(fz.factors.len(), 3, "{got:?}");
        for want in ["a", "z - b*y", "z + b*y"] {
            let w = parse(want, &v);
            assert!(fz.distinct_factors().any(|p| p.is_associate(&w)), "missing {want} in {got:?}");
        }
        assert!(fz.complete);
    }

    #[test]
    fn irreducible_quadratic() {
        let f = parse("x^2 + 1", &["x"]);
        let fz = factor(&f);
        assert_eq!(fz.factors, vec![(f.clone(), 1)]);
        assert!(fz.complete);
    }

    #[test]
    fn kepler_cofactor() {
        let v = ["m2", "d2", "w", "p", "d1"];
        let f = parse("m2*d2*(w*p+1)*(d1+d2)^2", &v);
        let fz = factor(&f);
        assert_eq!(fz.expand(), f);
        let mut got: Vec<(String, u32)> = fz.factors.iter().map(|(p, m)| (p.to_string(), *m)).collect();
        got.sort();
        let mut want: Vec<(String, u32)> = [("m2", 1), ("d2", 1), ("w*p + 1", 1), ("d2 + d1", 2)]
            .iter()
            .map(|(s, m)| (parse(s, &v).to_string(), *m))
            .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn cubic_with_linear_factor() {
        let v = ["x", "y"];
        let f = parse("(x^2 + x*y + y^2)*(2*x - 3*y)*(x^2 + 1)", &v);
        let fz = factor(&f);
        assert_eq!(fz.expand(), f);
        assert_eq!(fz.factors.len(), 3);
    }

    #[test]
    fn sqrt() {
        let v = ["x", "y"];
        assert_eq!(poly_sqrt(&parse("4*x^2 - 12*x*y + 9*y^2", &v)), Some(parse("2*x - 3*y", &v)));
        assert_eq!(poly_sqrt(&parse("x^2 + y", &v)), None);
    }
}
