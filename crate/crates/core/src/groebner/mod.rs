//! Division, Buchberger's algorithm, ideal membership with certificates and
//! elimination.

mod buchberger;
pub(crate) mod internal;

use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

pub use buchberger::Limits;
use buchberger::{groebner, Reducer};
use internal::{scale_q, Ctx, QPoly, ZPoly};

use crate::arith::{MonomialOrder, OrderKind, Polynomial, Rational, VarTable};
use crate::error::{Error, Result};

/// Cofactors `α_i` with `Σ α_i·A_i = f`, aligned with the generator list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub cofactors: Vec<Polynomial>,
}

impl MembershipCertificate {
    /// Expands `Σ α_i·A_i`.
    pub fn expand(&self, gens: &[Polynomial]) -> Result<Polynomial> {
        if gens.len() != self.cofactors.len() {
            return Err(Error::VarTableMismatch);
        }
        let vars = gens.first().map(|g| g.vars().clone());
        let Some(vars) = vars else { return Err(Error::ZeroPolynomial) };
        let mut acc = Polynomial::zero(&vars);
        for (a, g) in self.cofactors.iter().zip(gens) {
            acc = acc.checked_add(&a.checked_mul(g)?)?;
        }
        Ok(acc)
    }

    pub fn verify(&self, gens: &[Polynomial], f: &Polynomial) -> bool {
        matches!(self.expand(gens), Ok(e) if &e == f)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GbOptions {
    pub limits: Limits,
    /// Record how each basis element arises from the inputs so that
    /// membership certificates can be produced.
    pub track: bool,
}

/// A reduced Gröbner basis.
#[derive(Clone)]
pub struct GroebnerBasis {
    ctx: Ctx,
    order: MonomialOrder,
    internal: Vec<ZPoly>,
    generators: Vec<Polynomial>,
    reps: Option<Vec<Vec<Polynomial>>>,
    num_inputs: usize,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.generators.iter()).finish()
    }
}

impl GroebnerBasis {
    /// Monic generators, ascending by leading monomial.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.ctx.vars()
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn tracks_certificates(&self) -> bool {
        self.reps.is_some()
    }

    /// Representation of each generator over the original inputs, when
    /// tracking was enabled.
    pub fn representations(&self) -> Option<&[Vec<Polynomial>]> {
        self.reps.as_deref()
    }

    pub fn leading_monomials(&self) -> Vec<crate::arith::Monomial> {
        self.internal.iter().map(|p| self.ctx.mon_out(&p[0].0)).collect()
    }

    /// True when `f` reduces to zero.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.check(f)?;
        Ok(self.reduce_integer(f, &Limits::default())?.is_empty())
    }

    pub fn contains_within(&self, f: &Polynomial, limits: &Limits) -> Result<bool> {
        self.check(f)?;
        Ok(self.reduce_integer(f, limits)?.is_empty())
    }

    /// Normal form of `f`, scaled to be integer-primitive with positive
    /// leading coefficient. Equal for `f` and `g` iff `f - c·g` lies in the
    /// ideal for the right scalar, so it is a canonical key up to scalars.
    pub fn normal_form_primitive(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        let mut r = self.reduce_integer(f, &Limits::default())?;
        internal::make_primitive(&mut r);
        Ok(self.ctx.z_out(&r))
    }

    /// Exact normal form of `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        let (r, _) = divide_q(&self.ctx, &self.ctx.q_in(f), &self.q_basis());
        Ok(self.ctx.q_out(&r))
    }

    /// Certificate over the inputs the basis was computed from. Requires
    /// tracking; returns `None` when `f` is not a member.
    pub fn certificate(&self, f: &Polynomial) -> Result<Option<MembershipCertificate>> {
        self.check(f)?;
        let Some(reps) = &self.reps else {
            return Err(Error::InvalidOrder("basis computed without certificate tracking".into()));
        };
        let (r, quotients) = divide_q(&self.ctx, &self.ctx.q_in(f), &self.q_basis());
        if !r.is_empty() {
            return Ok(None);
        }
        let vars = self.vars();
        let mut cofactors = vec![Polynomial::zero(vars); self.num_inputs];
        for (q, rep) in quotients.iter().zip(reps) {
            if q.is_empty() {
                continue;
            }
            let q = self.ctx.q_out(q);
            for (k, r) in rep.iter().enumerate() {
                if !r.is_zero() {
                    cofactors[k] = &cofactors[k] + &(&q * r);
                }
            }
        }
        Ok(Some(MembershipCertificate { cofactors }))
    }

    /// Wraps generators already known to form the reduced basis under `ord`
    /// (for instance the kept part of an elimination basis).
    pub(crate) fn from_reduced_unchecked(vars: &Arc<VarTable>, gens: Vec<Polynomial>, ord: &MonomialOrder) -> GroebnerBasis {
        let ctx = Ctx::new(ord, vars);
        let mut internal: Vec<ZPoly> = Vec::with_capacity(gens.len());
        let mut generators = Vec::with_capacity(gens.len());
        for g in gens {
            let (mut z, _) = ctx.z_in(&g);
            internal::make_primitive(&mut z);
            let lc = Rational::from_integer(z[0].1.clone());
            let monic: QPoly = z.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()) / &lc)).collect();
            generators.push(ctx.q_out(&monic));
            internal.push(z);
        }
        let mut idx: Vec<usize> = (0..internal.len()).collect();
        idx.sort_by(|&a, &b| ctx.cmp(&internal[a][0].0, &internal[b][0].0));
        let internal = idx.iter().map(|&i| internal[i].clone()).collect();
        let generators = idx.iter().map(|&i| generators[i].clone()).collect();
        GroebnerBasis { ctx, order: ord.clone(), internal, generators, reps: None, num_inputs: 0 }
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.vars() != self.vars() && **f.vars() != **self.vars() {
            return Err(Error::VarTableMismatch);
        }
        Ok(())
    }

    fn q_basis(&self) -> Vec<QPoly> {
        self.generators.iter().map(|g| self.ctx.q_in(g)).collect()
    }

    fn reduce_integer(&self, f: &Polynomial, limits: &Limits) -> Result<ZPoly> {
        let (z, _) = self.ctx.z_in(f);
        let active: Vec<usize> = (0..self.internal.len()).collect();
        let mut reducer = Reducer::new(&self.ctx, limits);
        let (r, _) = reducer.reduce(z, None, &self.internal, None, &active, true)?;
        Ok(r)
    }
}

/// Rational division with quotients; first divisor in list order wins.
fn divide_q(ctx: &Ctx, f: &QPoly, basis: &[QPoly]) -> (QPoly, Vec<QPoly>) {
    let mut quotients: Vec<QPoly> = vec![Vec::new(); basis.len()];
    let mut r: QPoly = Vec::new();
    let mut p = f.clone();
    let mut start = 0;
    while start < p.len() {
        let (lm, lc) = (&p[start].0, &p[start].1);
        match basis.iter().position(|g| g[0].0.divides(lm)) {
            None => {
                r.push(p[start].clone());
                start += 1;
            }
            Some(i) => {
                let g = &basis[i];
                let m = lm.div(&g[0].0);
                let c = lc / &g[0].1;
                quotients[i].push((m.clone(), c.clone()));
                p = ctx.axpy(&Rational::one(), &p[start + 1..], &c, &m, &g[1..]);
                start = 0;
            }
        }
    }
    r.extend(p.drain(start..));
    (r, quotients)
}

fn check_tables(polys: &[Polynomial]) -> Result<Option<Arc<VarTable>>> {
    let Some(first) = polys.first() else { return Ok(None) };
    for p in &polys[1..] {
        if !p.same_vars(first) {
            return Err(Error::VarTableMismatch);
        }
    }
    Ok(Some(first.vars().clone()))
}

/// Division of `f` by `basis` in list order: `f = Σ q_i·basis_i + r` with no
/// term of `r` divisible by a leading monomial of the basis.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> Result<(Polynomial, Vec<Polynomial>)> {
    let mut all = vec![f.clone()];
    all.extend(basis.iter().cloned());
    check_tables(&all)?;
    if basis.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = Ctx::new(ord, f.vars());
    let qb: Vec<QPoly> = basis.iter().map(|g| ctx.q_in(g)).collect();
    let (r, qs) = divide_q(&ctx, &ctx.q_in(f), &qb);
    Ok((ctx.q_out(&r), qs.iter().map(|q| ctx.q_out(q)).collect()))
}

/// Reduced Gröbner basis of `gens` under `ord` with default budgets.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(gens, ord, &GbOptions::default())
}

pub fn buchberger_with(gens: &[Polynomial], ord: &MonomialOrder, opts: &GbOptions) -> Result<GroebnerBasis> {
    let vars = match check_tables(gens)? {
        Some(v) => v,
        None => return Err(Error::InvalidOrder("empty generator list has no variable table".into())),
    };
    gb_over(&vars, gens, ord, opts)
}

/// Like [`buchberger_with`] but accepts an empty generator list.
pub fn gb_over(vars: &Arc<VarTable>, gens: &[Polynomial], ord: &MonomialOrder, opts: &GbOptions) -> Result<GroebnerBasis> {
    for g in gens {
        if g.vars() != vars && **g.vars() != **vars {
            return Err(Error::VarTableMismatch);
        }
    }
    if ord.nvars() != vars.len() {
        return Err(Error::InvalidOrder(format!("order has {} variables, table has {}", ord.nvars(), vars.len())));
    }
    let ctx = Ctx::new(ord, vars);
    let mut inputs = Vec::with_capacity(gens.len());
    let mut scales = Vec::with_capacity(gens.len());
    for g in gens {
        let (z, s) = ctx.z_in(g);
        inputs.push(z);
        scales.push(s);
    }
    let raw = groebner(&ctx, inputs, opts.track, &opts.limits)?;
    let mut generators = Vec::with_capacity(raw.polys.len());
    for p in &raw.polys {
        let lc = Rational::from_integer(p[0].1.clone());
        let monic: QPoly = p.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()) / &lc)).collect();
        generators.push(ctx.q_out(&monic));
    }
    // Inputs entered the engine scaled by `scales[k]`, so a representation
    // over the scaled inputs becomes one over the originals after
    // multiplying entry k by `scales[k]`.
    let reps = raw.reps.map(|reps| {
        reps.iter()
            .map(|rep| rep.iter().zip(&scales).map(|(r, s)| ctx.q_out(&scale_q(r, s))).collect())
            .collect()
    });
    Ok(GroebnerBasis { ctx, order: ord.clone(), internal: raw.polys, generators, reps, num_inputs: gens.len() })
}

/// Membership of `f` in `⟨gens⟩` under grevlex, with a certificate when
/// `f` is a member.
pub fn ideal_membership(f: &Polynomial, gens: &[Polynomial]) -> Result<(bool, Option<MembershipCertificate>)> {
    ideal_membership_with(f, gens, &Limits::default())
}

pub fn ideal_membership_with(f: &Polynomial, gens: &[Polynomial], limits: &Limits) -> Result<(bool, Option<MembershipCertificate>)> {
    let vars = f.vars().clone();
    if f.is_zero() {
        return Ok((true, Some(MembershipCertificate { cofactors: vec![Polynomial::zero(&vars); gens.len()] })));
    }
    let ord = MonomialOrder::grevlex(vars.len());
    let gb = gb_over(&vars, gens, &ord, &GbOptions { limits: *limits, track: true })?;
    let cert = gb.certificate(f)?;
    Ok((cert.is_some(), cert))
}

/// Membership alone, without the cost of tracking representations.
pub fn is_member_with(f: &Polynomial, gens: &[Polynomial], limits: &Limits) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let vars = f.vars().clone();
    let gb = gb_over(&vars, gens, &MonomialOrder::grevlex(vars.len()), &GbOptions { limits: *limits, track: false })?;
    gb.contains_within(f, limits)
}

/// How the elimination order is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EliminationStrategy {
    /// Pure lex, eliminated variables ranked highest.
    Lex,
    /// Grevlex on the eliminated block, then grevlex on the kept block.
    #[default]
    Block,
}

/// Order used to eliminate everything outside `keep`: eliminated variables
/// first, each block in table order.
pub fn elimination_order(nvars: usize, keep: &[usize], strategy: EliminationStrategy) -> MonomialOrder {
    let mut ranking: Vec<usize> = (0..nvars).filter(|v| !keep.contains(v)).collect();
    let k = ranking.len();
    ranking.extend((0..nvars).filter(|v| keep.contains(v)));
    let kind = match strategy {
        EliminationStrategy::Lex => OrderKind::Lex,
        EliminationStrategy::Block if k == 0 || k == nvars => OrderKind::Grevlex,
        EliminationStrategy::Block => OrderKind::Elimination(k),
    };
    MonomialOrder::new(kind, ranking).expect("valid permutation")
}

/// Generators of `⟨gens⟩ ∩ ℚ[keep]`.
pub fn elimination_ideal(gens: &[Polynomial], keep: &[usize]) -> Result<Vec<Polynomial>> {
    elimination_ideal_with(gens, keep, EliminationStrategy::default(), &Limits::default())
}

pub fn elimination_ideal_with(
    gens: &[Polynomial],
    keep: &[usize],
    strategy: EliminationStrategy,
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let Some(vars) = check_tables(gens)? else { return Ok(Vec::new()) };
    if let Some(&bad) = keep.iter().find(|&&v| v >= vars.len()) {
        return Err(Error::InvalidVariable(format!("variable index {bad} out of range")));
    }
    let ord = elimination_order(vars.len(), keep, strategy);
    let gb = gb_over(&vars, gens, &ord, &GbOptions { limits: *limits, track: false })?;
    Ok(gb
        .generators()
        .iter()
        .filter(|g| g.support().iter().all(|v| keep.contains(v)))
        .cloned()
        .collect())
}
