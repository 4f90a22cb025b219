//! Multivariate gcd over ℚ by recursive primitive pseudo-remainder
//! sequences, plus the coefficient views it needs.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{Monomial, MonomialOrder, Polynomial, Rational};

pub(crate) fn norm_order(f: &Polynomial) -> MonomialOrder {
    MonomialOrder::grevlex(f.nvars())
}

/// Integer-primitive associate with positive leading coefficient.
pub(crate) fn normalize(f: &Polynomial) -> Polynomial {
    f.normalized(&norm_order(f))
}

/// Coefficients of `f` as a polynomial in `v`, indexed by degree.
pub(crate) fn coefficients(f: &Polynomial, v: usize) -> Vec<Polynomial> {
    let d = f.degree_in(v) as usize;
    let mut buckets: Vec<Vec<(Monomial, crate::arith::Rational)>> = vec![Vec::new(); d + 1];
    for (m, c) in f.terms() {
        let k = m.exponents()[v] as usize;
        let mut ex = m.exponents().to_vec();
        ex[v] = 0;
        buckets[k].push((Monomial::from_exponents(&ex), c.clone()));
    }
    buckets.into_iter().map(|t| Polynomial::from_terms(f.vars(), t)).collect()
}

pub(crate) fn var_power(f: &Polynomial, v: usize, k: u16) -> Polynomial {
    let mut ex = vec![0u16; f.nvars()];
    ex[v] = k;
    Polynomial::monomial(f.vars(), Monomial::from_exponents(&ex), crate::arith::rat(1))
}

/// `f / g` when the division is exact.
pub fn exact_div(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    if g.is_zero() {
        return None;
    }
    let ord = MonomialOrder::lex(f.nvars());
    let (gm, gc) = g.leading_term(&ord).ok()?;
    let mut q = Polynomial::zero(f.vars());
    let mut r = f.clone();
    while !r.is_zero() {
        let (rm, rc) = r.leading_term(&ord).ok()?;
        let m = rm.div(&gm)?;
        let c = rc / &gc;
        q = &q + &Polynomial::monomial(f.vars(), m.clone(), c.clone());
        r = &r - &g.mul_monomial(&m, &c);
    }
    Some(q)
}

/// Greatest common divisor, normalized; `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(f.vars());
    }
    let sf = f.support();
    let sg = g.support();
    if let Some(&v) = sf.symmetric_difference(&sg).next() {
        return if sf.contains(&v) { gcd(&content_in(f, v), g) } else { gcd(f, &content_in(g, v)) };
    }
    // Both polynomials involve exactly the same variables. Bound the gcd's
    // degree in each one through univariate images.
    let mut best: Option<(u16, usize)> = None;
    for &v in &sf {
        let b = image_degree_bound(f, g, v);
        if b == 0 {
            // The gcd does not involve v, so it divides both contents.
            return gcd(&content_in(f, v), &content_in(g, v));
        }
        if best.is_none_or(|(bb, _)| b < bb) {
            best = Some((b, v));
        }
    }
    let v = best.expect("non-constant").1;
    let (cf, cg) = (content_in(f, v), content_in(g, v));
    let c = gcd(&cf, &cg);
    let pf = primitive_in(f, v);
    let pg = primitive_in(g, v);
    let (mut a, mut b) = if pf.degree_in(v) >= pg.degree_in(v) { (pf, pg) } else { (pg, pf) };
    while !b.is_zero() && b.degree_in(v) > 0 {
        let r = prem(&a, &b, v);
        a = b;
        b = if r.is_zero() { r } else { primitive_in(&r, v) };
    }
    if !b.is_zero() {
        // The sequence reached a nonzero constant in v: coprime primitive parts.
        return normalize(&c);
    }
    normalize(&(&c * &primitive_in(&a, v)))
}

/// Upper bound on `deg_v gcd(f, g)` from evaluating every other variable
/// at a point where both leading coefficients in `v` survive. Falls back to
/// the trivial bound when no such point is found.
fn image_degree_bound(f: &Polynomial, g: &Polynomial, v: usize) -> u16 {
    let trivial = f.degree_in(v).min(g.degree_in(v));
    let n = f.nvars();
    let cf = coefficients(f, v);
    let cg = coefficients(g, v);
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15 ^ (v as u64);
    for _attempt in 0..4 {
        let point: Vec<Rational> = (0..n)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                Rational::from_integer(BigInt::from(((state >> 33) % 97) as i64 + 2))
            })
            .collect();
        let uf: Vec<Rational> = cf.iter().map(|c| c.eval_dense(&point)).collect();
        let ug: Vec<Rational> = cg.iter().map(|c| c.eval_dense(&point)).collect();
        if uf.last().is_none_or(Zero::is_zero) || ug.last().is_none_or(Zero::is_zero) {
            continue;
        }
        return univariate_gcd_degree(uf, ug).min(trivial);
    }
    trivial
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn univariate_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> u16 {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a mod b
        let lb = b.last().expect("nonempty").clone();
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = a.last().expect("nonempty") / &lb;
            for (i, c) in b.iter().enumerate() {
                let t = &a[i + shift] - &(&q * c);
                a[i + shift] = t;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    (a.len().saturating_sub(1)) as u16
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `v`.
pub fn content_in(f: &Polynomial, v: usize) -> Polynomial {
    let mut acc = Polynomial::zero(f.vars());
    for c in coefficients(f, v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

/// `f` divided by its content in `v`, normalized.
pub fn primitive_in(f: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(f, v);
    if c.is_zero() {
        return f.clone();
    }
    normalize(&exact_div(f, &c).expect("content divides"))
}

/// Pseudo-remainder of `a` by `b` in `v`.
fn prem(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let db = b.degree_in(v);
    let lb = coefficients(b, v).pop().expect("nonzero");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = coefficients(&r, v).pop().expect("nonzero");
        let shift = &lr * &var_power(a, v, dr - db);
        r = &(&lb * &r) - &(&shift * b);
    }
    r
}
