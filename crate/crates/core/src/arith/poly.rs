use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, Rational, VarTable};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept sorted by the storage order of [`Monomial`] with no zero
/// coefficients, so structural equality is polynomial equality. Arithmetic
/// orders are applied on access.
#[derive(Clone)]
pub struct Polynomial {
    vars: Arc<VarTable>,
    terms: Vec<(Monomial, Rational)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_vars(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        Polynomial { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn constant(vars: &Arc<VarTable>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.push((Monomial::one(vars.len()), c));
        }
        p
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &Arc<VarTable>, i: usize) -> Self {
        Polynomial { vars: vars.clone(), terms: vec![(Monomial::var(vars.len(), i), Rational::one())] }
    }

    pub fn var_named(vars: &Arc<VarTable>, name: &str) -> Result<Self> {
        let i = vars.index_of(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        Ok(Self::var(vars, i))
    }

    pub fn monomial(vars: &Arc<VarTable>, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Collects terms, merging duplicate monomials and dropping zeros.
    pub fn from_terms<I>(vars: &Arc<VarTable>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), vars.len());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in storage order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn same_vars(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if self.same_vars(other) {
            Ok(())
        } else {
            Err(Error::VarTableMismatch)
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exponents()[var]).max().unwrap_or(0)
    }

    /// Indices of variables that occur in some term.
    pub fn support(&self) -> BTreeSet<usize> {
        self.terms.iter().flat_map(|(m, _)| m.support()).collect()
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.compare(&a.0, &b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_coefficient(&self, ord: &MonomialOrder) -> Result<Rational> {
        self.leading_term(ord).map(|(_, c)| c)
    }

    /// Terms sorted descending by `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<&(Monomial, Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.compare(&b.0, &a.0));
        v
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = if negate_other { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -t.1.clone() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial { vars: self.vars.clone(), terms: out }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.vars));
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Polynomial { vars: self.vars.clone(), terms })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        // Multiplying by a monomial preserves the lexicographic storage order.
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[var] > 0)
            .map(|(m, c)| {
                let mut e = m.0.clone();
                let k = e[var];
                e[var] -= 1;
                (Monomial(e), c * Rational::from_integer(BigInt::from(k)))
            });
        Polynomial::from_terms(&self.vars, terms)
    }

    pub fn eval(&self, point: &HashMap<String, Rational>) -> Result<Rational> {
        let support = self.support();
        let mut values = vec![Rational::zero(); self.nvars()];
        for i in support {
            let name = self.vars.name(i);
            values[i] = point.get(name).cloned().ok_or_else(|| Error::MissingAssignment(name.to_string()))?;
        }
        Ok(self.eval_dense(&values))
    }

    pub fn eval_dense(&self, values: &[Rational]) -> Rational {
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(values[i].clone(), e as usize);
                }
            }
            sum += t;
        }
        sum
    }

    /// Re-expresses the polynomial over a table that extends this one.
    pub fn embed(&self, target: &Arc<VarTable>) -> Result<Polynomial> {
        if Arc::ptr_eq(&self.vars, target) {
            return Ok(self.clone());
        }
        if !self.vars.is_prefix_of(target) {
            return Err(Error::VarTableMismatch);
        }
        let n = target.len();
        Ok(Polynomial { vars: target.clone(), terms: self.terms.iter().map(|(m, c)| (m.padded(n), c.clone())).collect() })
    }

    /// Drops trailing variables; `None` if any dropped variable occurs.
    pub fn restrict(&self, target: &Arc<VarTable>) -> Option<Polynomial> {
        if !target.is_prefix_of(&self.vars) {
            return None;
        }
        let n = target.len();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.exponents()[n..].iter().any(|&e| e > 0) {
                return None;
            }
            terms.push((Monomial::from_exponents(&m.exponents()[..n]), c.clone()));
        }
        Some(Polynomial { vars: target.clone(), terms })
    }

    /// Replace variable `var` by the polynomial `value`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Result<Polynomial> {
        self.check_vars(value)?;
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(&self.vars)];
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let k = m.exponents()[var] as usize;
            while powers.len() <= k {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = m.0.clone();
            rest[var] = 0;
            out = &out + &powers[k].mul_monomial(&Monomial(rest), c);
        }
        Ok(out)
    }

    pub fn monic(&self, ord: &MonomialOrder) -> Result<Polynomial> {
        let lc = self.leading_coefficient(ord)?;
        Ok(self.scale(&lc.recip()))
    }

    /// Integer-primitive associate with positive leading coefficient under
    /// `ord`, together with the unit `u` such that `self = u * result`.
    pub fn primitive(&self, ord: &MonomialOrder) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let mut unit = Rational::new(num_gcd, den_lcm);
        if self.leading_coefficient(ord).expect("nonzero").is_negative() {
            unit = -unit;
        }
        (unit.clone(), self.scale(&unit.recip()))
    }

    pub fn normalized(&self, ord: &MonomialOrder) -> Polynomial {
        self.primitive(ord).1
    }

    /// True when `self = c * other` for some nonzero rational `c`.
    pub fn is_associate(&self, other: &Polynomial) -> bool {
        if self.terms.len() != other.terms.len() || !self.same_vars(other) {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        let ratio = &self.terms[0].1 / &other.terms[0].1;
        self.terms.iter().zip(&other.terms).all(|(a, b)| a.0 == b.0 && a.1 == &b.1 * &ratio)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ord = MonomialOrder::grevlex(self.nvars());
        write!(f, "{}", crate::syntax::print_polynomial(self, &ord))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ord = MonomialOrder::grevlex(self.nvars());
        write!(f, "{}", crate::syntax::print_polynomial(self, &ord))
    }
}

/// Serialized as its compact grevlex string, e.g. `x^2-2*x*y+1/3`.
impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let ord = MonomialOrder::grevlex(self.nvars());
        s.serialize_str(&crate::syntax::print_polynomial_compact(self, &ord))
    }
}

// Operator forms panic on table mismatch; use the `checked_*` methods where
// mixing tables is possible.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("variable table mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("variable table mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("variable table mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_polynomial;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn vars() -> Arc<VarTable> {
        VarTable::new(["x", "y", "z", "a", "b"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &vars()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(poly_arith(&p("x+y"), &p("x-y"), ArithOp::Mul).unwrap(), p("x^2-y^2"));
    }

    #[test]
    fn example_one_combination() {
        let p1 = p("x^2 - a*y^2");
        let p2 = p("b*y - z");
        let lhs = &(&p("b^2") * &p1) + &(&p("a*(b*y+z)") * &p2);
        assert_eq!(lhs, p("b^2*x^2 - a*z^2"));
    }

    #[test]
    fn additive_identity_and_mismatch() {
        let f = p("x*y + 3");
        assert_eq!(poly_arith(&f, &Polynomial::zero(&vars()), ArithOp::Add).unwrap(), f);
        let other = VarTable::new(["x"]).unwrap();
        let g = Polynomial::var(&other, 0);
        assert!(matches!(poly_arith(&f, &g, ArithOp::Add), Err(Error::VarTableMismatch)));
    }

    #[test]
    fn leading_terms() {
        let v = VarTable::new(["x", "y", "a"]).unwrap();
        let f = parse_polynomial("x^2 - a*y^2", &v).unwrap();
        let (m, c) = f.leading_term(&MonomialOrder::lex(3)).unwrap();
        assert_eq!((m.exponents(), c), (&[2u16, 0, 0][..], r(1)));
        let g = parse_polynomial("3*y", &v).unwrap();
        assert_eq!(g.leading_term(&MonomialOrder::grevlex(3)).unwrap().1, r(3));
        let h = parse_polynomial("x*y + y^3", &v).unwrap();
        assert_eq!(h.leading_term(&MonomialOrder::grevlex(3)).unwrap().0.exponents(), &[0, 3, 0]);
        assert!(matches!(Polynomial::zero(&v).leading_term(&MonomialOrder::lex(3)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn evaluation() {
        let v = VarTable::new(["x", "y", "a"]).unwrap();
        let f = parse_polynomial("x^2 - a*y^2", &v).unwrap();
        let pt = |x: i64, y: i64, a: i64| -> HashMap<String, Rational> {
            [("x", x), ("y", y), ("a", a)].iter().map(|(k, v)| (k.to_string(), r(*v))).collect()
        };
        assert_eq!(f.eval(&pt(2, 1, 4)).unwrap(), r(0));
        assert_eq!(f.eval(&pt(1, 1, 0)).unwrap(), r(1));
        let mut partial = pt(1, 1, 0);
        partial.remove("a");
        assert!(matches!(f.eval(&partial), Err(Error::MissingAssignment(_))));
        // point on V(p1, p2) from the toy system
        let q = p("b^2*x^2 - a*z^2");
        let point: HashMap<String, Rational> =
            [("x", 1), ("y", 1), ("z", 2), ("a", 1), ("b", 2)].iter().map(|(k, v)| (k.to_string(), r(*v))).collect();
        assert_eq!(q.eval(&point).unwrap(), r(0));
    }

    #[test]
    fn primitive_normalization() {
        let f = p("-2/3*x + 4/3*y");
        let (u, g) = f.primitive(&MonomialOrder::lex(5));
        assert_eq!(g, p("x - 2*y"));
        assert_eq!(g.scale(&u), f);
        assert!(f.is_associate(&g));
    }

    #[test]
    fn derivative_and_substitution() {
        let f = p("x^3*y + 2*x");
        assert_eq!(f.derivative(0), p("3*x^2*y + 2"));
        assert_eq!(f.substitute(0, &p("y+1")).unwrap(), p("(y+1)^3*y + 2*y + 2"));
    }
}
