//! Order-specialised polynomial representation used inside the Gröbner
//! engine: exponents are stored permuted into ranking order and terms are
//! kept sorted descending, so leading terms are `p[0]`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::arith::{Monomial, MonomialOrder, OrderKind, Polynomial, Rational, VarTable};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Mon {
    pub deg: u32,
    pub mask: u64,
    pub e: SmallVec<[u16; 16]>,
}

impl Mon {
    fn from_exps(e: SmallVec<[u16; 16]>) -> Mon {
        let mut deg = 0u32;
        let mut mask = 0u64;
        for (i, &x) in e.iter().enumerate() {
            deg += x as u32;
            if x > 0 {
                mask |= 1 << (i % 64);
            }
        }
        Mon { deg, mask, e }
    }

    pub fn one(n: usize) -> Mon {
        Mon { deg: 0, mask: 0, e: SmallVec::from_elem(0, n) }
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn divides(&self, other: &Mon) -> bool {
        self.mask & !other.mask == 0 && self.deg <= other.deg && self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Mon) -> Mon {
        let e = self
            .e
            .iter()
            .zip(&other.e)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Mon { deg: self.deg + other.deg, mask: self.mask | other.mask, e }
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Mon) -> Mon {
        Mon::from_exps(self.e.iter().zip(&other.e).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Mon) -> Mon {
        Mon::from_exps(self.e.iter().zip(&other.e).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Mon) -> bool {
        self.mask & other.mask == 0 && self.e.iter().zip(&other.e).all(|(a, b)| *a == 0 || *b == 0)
    }
}

pub(crate) type IPoly<C> = Vec<(Mon, C)>;
pub(crate) type ZPoly = IPoly<BigInt>;
pub(crate) type QPoly = IPoly<Rational>;

/// Coefficient operations shared by the integer and rational paths.
pub(crate) trait Coef: Clone + Zero + One + PartialEq {
    fn mul_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
}

impl Coef for BigInt {
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
}

impl Coef for Rational {
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Ctx {
    kind: OrderKind,
    /// `perm[r]` is the variable index stored at rank position `r`.
    perm: Vec<usize>,
    vars: Arc<VarTable>,
}

impl Ctx {
    pub fn new(ord: &MonomialOrder, vars: &Arc<VarTable>) -> Ctx {
        debug_assert_eq!(ord.nvars(), vars.len());
        Ctx { kind: ord.kind(), perm: ord.ranking().to_vec(), vars: vars.clone() }
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    #[inline]
    pub fn cmp(&self, a: &Mon, b: &Mon) -> Ordering {
        match self.kind {
            OrderKind::Lex => a.e.cmp(&b.e),
            OrderKind::Grevlex => a.deg.cmp(&b.deg).then_with(|| revlex(&a.e, &b.e)),
            OrderKind::Elimination(k) => {
                let da: u32 = a.e[..k].iter().map(|&x| x as u32).sum();
                let db: u32 = b.e[..k].iter().map(|&x| x as u32).sum();
                da.cmp(&db)
                    .then_with(|| revlex(&a.e[..k], &b.e[..k]))
                    .then_with(|| (a.deg - da).cmp(&(b.deg - db)))
                    .then_with(|| revlex(&a.e[k..], &b.e[k..]))
            }
        }
    }

    pub fn mon_in(&self, m: &Monomial) -> Mon {
        let ex = m.exponents();
        Mon::from_exps(self.perm.iter().map(|&v| ex[v]).collect())
    }

    pub fn mon_out(&self, m: &Mon) -> Monomial {
        let mut ex = vec![0u16; self.perm.len()];
        for (r, &v) in self.perm.iter().enumerate() {
            ex[v] = m.e[r];
        }
        Monomial::from_exponents(&ex)
    }

    pub fn sort<C>(&self, p: &mut IPoly<C>) {
        p.sort_by(|a, b| self.cmp(&b.0, &a.0));
    }

    pub fn q_in(&self, f: &Polynomial) -> QPoly {
        let mut p: QPoly = f.terms().iter().map(|(m, c)| (self.mon_in(m), c.clone())).collect();
        self.sort(&mut p);
        p
    }

    /// Integer-primitive form of `f` and the rational `s` with `result = s * f`.
    pub fn z_in(&self, f: &Polynomial) -> (ZPoly, Rational) {
        let mut den = BigInt::one();
        for (_, c) in f.terms() {
            den = den.lcm(c.denom());
        }
        let mut p: ZPoly = f
            .terms()
            .iter()
            .map(|(m, c)| (self.mon_in(m), c.numer() * (&den / c.denom())))
            .collect();
        self.sort(&mut p);
        let g = content(&p);
        if !g.is_zero() && !g.is_one() {
            for t in p.iter_mut() {
                t.1 = &t.1 / &g;
            }
        }
        (p, Rational::new(den, if g.is_zero() { BigInt::one() } else { g }))
    }

    pub fn q_out(&self, p: &QPoly) -> Polynomial {
        Polynomial::from_terms(&self.vars, p.iter().map(|(m, c)| (self.mon_out(m), c.clone())))
    }

    pub fn z_out(&self, p: &ZPoly) -> Polynomial {
        Polynomial::from_terms(&self.vars, p.iter().map(|(m, c)| (self.mon_out(m), Rational::from_integer(c.clone()))))
    }

    /// `a*f - b*m*g` with both inputs sorted; `a == 1` skips scaling `f`.
    pub fn axpy<C: Coef>(&self, a: &C, f: &[(Mon, C)], b: &C, m: &Mon, g: &[(Mon, C)]) -> IPoly<C> {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let scale_f = !a.is_one();
        let (mut i, mut j) = (0, 0);
        let shifted = |t: &(Mon, C)| (if m.is_one() { t.0.clone() } else { t.0.mul(m) }, t.1.mul_ref(b));
        let mut gj: Option<(Mon, C)> = g.first().map(shifted);
        while i < f.len() {
            let Some(ref gt) = gj else { break };
            match self.cmp(&f[i].0, &gt.0) {
                Ordering::Greater => {
                    let c = if scale_f { f[i].1.mul_ref(a) } else { f[i].1.clone() };
                    out.push((f[i].0.clone(), c));
                    i += 1;
                }
                Ordering::Less => {
                    let (mm, c) = gj.take().expect("present");
                    out.push((mm, C::zero().sub_ref(&c)));
                    j += 1;
                    gj = g.get(j).map(shifted);
                }
                Ordering::Equal => {
                    let fc = if scale_f { f[i].1.mul_ref(a) } else { f[i].1.clone() };
                    let (mm, c) = gj.take().expect("present");
                    let c = fc.sub_ref(&c);
                    if !c.is_zero() {
                        out.push((mm, c));
                    }
                    i += 1;
                    j += 1;
                    gj = g.get(j).map(shifted);
                }
            }
        }
        for t in &f[i..] {
            let c = if scale_f { t.1.mul_ref(a) } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        while let Some((mm, c)) = gj.take() {
            out.push((mm, C::zero().sub_ref(&c)));
            j += 1;
            gj = g.get(j).map(shifted);
        }
        out
    }

    /// `c * m * f`.
    pub fn shift<C: Coef>(&self, c: &C, m: &Mon, f: &[(Mon, C)]) -> IPoly<C> {
        f.iter()
            .map(|(fm, fc)| (if m.is_one() { fm.clone() } else { fm.mul(m) }, fc.mul_ref(c)))
            .collect()
    }
}

fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

pub(crate) fn content(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides by the content and makes the leading coefficient positive;
/// returns the rational factor `s` with `result = s * input`.
pub(crate) fn make_primitive(p: &mut ZPoly) -> Rational {
    if p.is_empty() {
        return Rational::one();
    }
    let mut g = content(p);
    if p[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for t in p.iter_mut() {
            t.1 = &t.1 / &g;
        }
    }
    Rational::new(BigInt::one(), g)
}

pub(crate) fn scale_q(p: &QPoly, s: &Rational) -> QPoly {
    if s.is_one() {
        return p.clone();
    }
    p.iter().map(|(m, c)| (m.clone(), c * s)).collect()
}

pub(crate) fn max_degree<C>(p: &IPoly<C>) -> u32 {
    p.iter().map(|t| t.0.deg).max().unwrap_or(0)
}
