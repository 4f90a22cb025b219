//! Ideals with cached Gröbner bases, radical membership, saturation,
//! containment, dimension and height.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::arith::{MonomialOrder, OrderKind, Polynomial, VarTable};
use crate::decompose::{minimal_primes, DecomposeOptions};
use crate::error::{Error, Result};
use crate::groebner::{gb_over, GbOptions, GroebnerBasis, Limits};

/// A finitely generated ideal. Gröbner bases are computed on demand and
/// cached per order.
pub struct Ideal {
    vars: Arc<VarTable>,
    generators: Vec<Polynomial>,
    cache: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.read().expect("cache lock").clone();
        Ideal { vars: self.vars.clone(), generators: self.generators.clone(), cache: RwLock::new(cache) }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩")
    }
}

impl Ideal {
    /// Zero generators are dropped; an empty list is the zero ideal.
    pub fn new(vars: &Arc<VarTable>, generators: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = Vec::new();
        for g in generators {
            if g.vars() != vars && **g.vars() != **vars {
                return Err(Error::VarTableMismatch);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal { vars: vars.clone(), generators: gens, cache: RwLock::new(HashMap::new()) })
    }

    pub fn zero(vars: &Arc<VarTable>) -> Ideal {
        Ideal { vars: vars.clone(), generators: Vec::new(), cache: RwLock::new(HashMap::new()) }
    }

    /// The ideal generated by a reduced basis, with that basis cached.
    pub fn from_basis(gb: GroebnerBasis) -> Ideal {
        let vars = gb.vars().clone();
        let generators = gb.generators().to_vec();
        let mut cache = HashMap::new();
        cache.insert(gb.order().clone(), Arc::new(gb));
        Ideal { vars, generators, cache: RwLock::new(cache) }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// `self + ⟨extra⟩`.
    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        Ideal::new(&self.vars, self.generators.iter().cloned().chain(extra))
    }

    /// Reduced basis under `ord`, computed once.
    pub fn gb(&self, ord: &MonomialOrder, limits: &Limits) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.read().expect("cache lock").get(ord) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(gb_over(&self.vars, &self.generators, ord, &GbOptions { limits: *limits, track: false })?);
        let mut cache = self.cache.write().expect("cache lock");
        Ok(cache.entry(ord.clone()).or_insert(gb).clone())
    }

    /// Reduced basis under grevlex in table order.
    pub fn grevlex(&self, limits: &Limits) -> Result<Arc<GroebnerBasis>> {
        self.gb(&MonomialOrder::grevlex(self.nvars()), limits)
    }

    pub fn is_unit(&self, limits: &Limits) -> Result<bool> {
        if self.generators.iter().any(Polynomial::is_constant) {
            return Ok(true);
        }
        Ok(self.grevlex(limits)?.is_unit())
    }

    pub fn contains_poly(&self, f: &Polynomial, limits: &Limits) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        self.grevlex(limits)?.contains_within(f, limits)
    }
}

/// `f ∈ √I`, decided by `1 ∈ I + ⟨1 - t·f⟩` over the table extended by `t`.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal, limits: &Limits) -> Result<bool> {
    if **f.vars() != *ideal.vars {
        return Err(Error::VarTableMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    if ideal.contains_poly(f, limits)? {
        return Ok(true);
    }
    if f.is_constant() {
        return Ok(false);
    }
    let ext = ideal.vars.with_aux()?;
    let n = ideal.nvars();
    let t = Polynomial::var(&ext, n);
    let mut gens = Vec::with_capacity(ideal.generators.len() + 1);
    for g in &ideal.generators {
        gens.push(g.embed(&ext)?);
    }
    gens.push(&Polynomial::one(&ext) - &(&t * &f.embed(&ext)?));
    let ord = MonomialOrder::grevlex(n).with_top_variable();
    let gb = gb_over(&ext, &gens, &ord, &GbOptions { limits: *limits, track: false })?;
    Ok(gb.is_unit())
}

/// `I : f^∞`, by eliminating `t` from `I + ⟨1 - t·f⟩`.
pub fn saturate(ideal: &Ideal, f: &Polynomial, limits: &Limits) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if **f.vars() != *ideal.vars {
        return Err(Error::VarTableMismatch);
    }
    let vars = &ideal.vars;
    let n = ideal.nvars();
    let grevlex = MonomialOrder::grevlex(n);
    if f.is_constant() {
        return Ok(ideal.clone());
    }
    let ext = vars.with_aux()?;
    let t = Polynomial::var(&ext, n);
    let mut gens = Vec::with_capacity(ideal.generators.len() + 1);
    for g in &ideal.generators {
        gens.push(g.embed(&ext)?);
    }
    gens.push(&Polynomial::one(&ext) - &(&t * &f.embed(&ext)?));
    let mut ranking = vec![n];
    ranking.extend(0..n);
    let ord = MonomialOrder::new(OrderKind::Elimination(1), ranking)?;
    let gb = gb_over(&ext, &gens, &ord, &GbOptions { limits: *limits, track: false })?;
    let kept: Vec<Polynomial> = gb.generators().iter().filter_map(|g| g.restrict(vars)).collect();
    // The kept elements form the reduced basis of the elimination ideal
    // under the restricted order, which is grevlex in table order.
    Ok(Ideal::from_basis(GroebnerBasis::from_reduced_unchecked(vars, kept, &grevlex)))
}

/// Whether `J ⊆ I`.
pub fn ideal_contains(i: &Ideal, j: &Ideal, limits: &Limits) -> Result<bool> {
    if *i.vars != *j.vars {
        return Err(Error::VarTableMismatch);
    }
    let gb = i.grevlex(limits)?;
    if gb.is_unit() {
        return Ok(true);
    }
    for g in &j.generators {
        if !gb.contains_within(g, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality through the reduced grevlex bases, which are unique.
pub fn ideal_equal(i: &Ideal, j: &Ideal, limits: &Limits) -> Result<bool> {
    if *i.vars != *j.vars {
        return Err(Error::VarTableMismatch);
    }
    Ok(i.grevlex(limits)?.generators() == j.grevlex(limits)?.generators())
}

/// Krull dimension of `ℚ[x]/I` from the leading monomials of the grevlex
/// basis: the largest set of variables containing the support of no
/// leading monomial.
pub fn dimension(ideal: &Ideal, limits: &Limits) -> Result<usize> {
    Ok(independent_set(ideal, limits)?.len())
}

/// A largest set of variables independent modulo the ideal.
pub fn independent_set(ideal: &Ideal, limits: &Limits) -> Result<Vec<usize>> {
    independent_set_among(ideal, &vec![true; ideal.nvars()], limits)
}

/// A largest independent set using only variables with `allowed[v]`.
pub fn independent_set_among(ideal: &Ideal, allowed: &[bool], limits: &Limits) -> Result<Vec<usize>> {
    let gb = ideal.grevlex(limits)?;
    if gb.is_unit() {
        return Err(Error::TrivialIdeal);
    }
    let n = ideal.nvars();
    let supports: Vec<Vec<usize>> = gb.leading_monomials().iter().map(|m| m.support().collect()).collect();
    Ok(max_independent(n, &supports, allowed))
}

fn max_independent(n: usize, supports: &[Vec<usize>], allowed: &[bool]) -> Vec<usize> {
    // Only minimal supports matter.
    let mut sets: Vec<Vec<usize>> = supports.to_vec();
    sets.sort_by_key(|s| s.len());
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|m| m.iter().all(|v| s.contains(v))) {
            minimal.push(s);
        }
    }
    let mut chosen = vec![false; n];
    let mut best = Vec::new();
    search(0, n, &minimal, allowed, &mut chosen, &mut best);
    best
}

fn search(i: usize, n: usize, sets: &[Vec<usize>], allowed: &[bool], chosen: &mut Vec<bool>, best: &mut Vec<usize>) {
    let size = chosen[..i].iter().filter(|&&c| c).count();
    if size + allowed[i..].iter().filter(|&&a| a).count() <= best.len() {
        return;
    }
    if i == n {
        *best = (0..n).filter(|&v| chosen[v]).collect();
        return;
    }
    chosen[i] = true;
    let ok = allowed[i] && sets.iter().all(|s| !s.contains(&i) || s.iter().any(|&v| !chosen[v]));
    if ok {
        search(i + 1, n, sets, allowed, chosen, best);
    }
    chosen[i] = false;
    search(i + 1, n, sets, allowed, chosen, best);
}

/// Height of a prime ideal as `n - dim`.
pub fn height_of_prime(p: &Ideal, limits: &Limits) -> Result<usize> {
    Ok(p.nvars() - dimension(p, limits)?)
}

/// Outcome of the recoverability precheck.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precheck {
    Guaranteed,
    Unknown,
}

/// Reports `Guaranteed` when `q` lies in no minimal prime of the known
/// axioms; advisory only.
pub fn recoverability_precheck(axioms: &Ideal, q: &Polynomial, opts: &DecomposeOptions) -> Result<Precheck> {
    if axioms.is_unit(&opts.limits)? {
        return Err(Error::TrivialIdeal);
    }
    let dec = minimal_primes(axioms, opts)?;
    if !dec.exhausted {
        return Ok(Precheck::Unknown);
    }
    for c in &dec.components {
        if radical_membership(q, &c.ideal, &opts.limits)? {
            return Ok(Precheck::Unknown);
        }
    }
    Ok(Precheck::Guaranteed)
}
