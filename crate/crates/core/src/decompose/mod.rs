//! Minimal-prime decomposition by recursive factor splitting.
//!
//! Each node takes the reduced grevlex basis of its ideal, replaces every
//! element by its square-free part, and splits on the lowest-degree element
//! that factors. Branch `j` adds the `j`-th factor and is saturated by the
//! product of the factors before it, which removes the overlap with earlier
//! branches without losing any point of the variety. Nodes where nothing
//! splits are emitted as (pseudo-)prime components.

use serde::Serialize;

use crate::arith::{Monomial, MonomialOrder, Polynomial};
use crate::error::Result;
use crate::factor::{splits, squarefree_part};
use crate::groebner::Limits;
use crate::idealops::{dimension, ideal_contains, saturate, Ideal};

pub const DEFAULT_MAX_NODES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecomposeOptions {
    pub limits: Limits,
    pub max_nodes: usize,
    /// Saturate each branch by the factors split off before it.
    pub saturate_branches: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { limits: Limits::default(), max_nodes: DEFAULT_MAX_NODES, saturate_branches: true }
    }
}

#[derive(Debug, Clone)]
pub struct Component {
    /// Generated by its reduced grevlex basis, which is cached.
    pub ideal: Ideal,
    /// No basis element splits further under the factor module.
    pub pseudo_prime: bool,
    pub height: usize,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub components: Vec<Component>,
    pub input: Ideal,
    /// False when the node budget cut the search short; unsplit leftovers
    /// are then emitted with `pseudo_prime = false`.
    pub exhausted: bool,
}

impl Decomposition {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

struct Walk<'a> {
    opts: &'a DecomposeOptions,
    nodes: usize,
    exhausted: bool,
    out: Vec<(Ideal, bool)>,
}

pub fn minimal_primes(input: &Ideal, opts: &DecomposeOptions) -> Result<Decomposition> {
    let mut walk = Walk { opts, nodes: 0, exhausted: true, out: Vec::new() };
    walk.visit(input.clone())?;
    let limits = &opts.limits;

    // Reduced bases are unique, so equal ideals have equal generator lists.
    let mut unique: Vec<(Ideal, bool)> = Vec::new();
    for (ideal, pseudo) in walk.out {
        match unique.iter_mut().find(|(u, _)| u.generators() == ideal.generators()) {
            Some(slot) => slot.1 &= pseudo,
            None => unique.push((ideal, pseudo)),
        }
    }
    let mut keep = vec![true; unique.len()];
    for i in 0..unique.len() {
        for j in 0..unique.len() {
            if i != j && keep[j] && ideal_contains(&unique[i].0, &unique[j].0, limits)? {
                keep[i] = false;
                break;
            }
        }
    }
    let mut components = Vec::new();
    for ((ideal, pseudo_prime), k) in unique.into_iter().zip(keep) {
        if !k {
            continue;
        }
        let height = ideal.nvars() - dimension(&ideal, limits)?;
        components.push(Component { ideal, pseudo_prime, height });
    }
    Ok(Decomposition { components, input: input.clone(), exhausted: walk.exhausted })
}

impl Walk<'_> {
    fn visit(&mut self, ideal: Ideal) -> Result<()> {
        let limits = &self.opts.limits;
        let mut ideal = ideal;
        let gb = loop {
            let gb = ideal.grevlex(limits)?;
            if gb.is_unit() {
                return Ok(());
            }
            let sq: Vec<Polynomial> = gb.generators().iter().map(squarefree_part).collect();
            if sq.iter().zip(gb.generators()).all(|(s, g)| s.is_associate(g)) {
                break gb;
            }
            ideal = Ideal::new(ideal.vars(), sq)?;
        };
        let fresh = Ideal::from_basis((*gb).clone());
        if self.nodes >= self.opts.max_nodes {
            self.exhausted = false;
            self.out.push((fresh, false));
            return Ok(());
        }
        self.nodes += 1;

        let mut order: Vec<usize> = (0..gb.len()).collect();
        order.sort_by_key(|&i| gb.generators()[i].total_degree());
        for i in order {
            let Some(factors) = splits(&gb.generators()[i]) else { continue };
            let mut before = Polynomial::one(ideal.vars());
            for f in &factors {
                let mut branch = fresh.with([f.clone()])?;
                if self.opts.saturate_branches && !before.is_one() {
                    branch = saturate(&branch, &before, limits)?;
                }
                self.visit(branch)?;
                before = &before * f;
            }
            return Ok(());
        }
        self.out.push((fresh, true));
        Ok(())
    }
}

/// Generators ordered by total degree, then leading monomial under grevlex,
/// then printed form.
pub fn component_generators(c: &Component) -> Vec<Polynomial> {
    let n = c.ideal.nvars();
    let ord = MonomialOrder::grevlex(n);
    let mut gens: Vec<Polynomial> = c.ideal.generators().iter().map(|g| g.normalized(&ord)).collect();
    let key = |g: &Polynomial| -> (u32, Monomial, String) {
        let lm = g.leading_term(&ord).map(|t| t.0).unwrap_or_else(|_| Monomial::one(n));
        (g.total_degree(), lm, crate::syntax::print_polynomial(g, &ord))
    };
    gens.sort_by(|a, b| {
        let (da, ma, sa) = key(a);
        let (db, mb, sb) = key(b);
        da.cmp(&db).then_with(|| ord.compare(&ma, &mb)).then_with(|| sa.cmp(&sb))
    });
    gens
}

/// Summary of a component for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub generators: Vec<String>,
    pub pseudo_prime: bool,
    pub height: usize,
}

impl ComponentSummary {
    pub fn of(c: &Component) -> ComponentSummary {
        let ord = MonomialOrder::grevlex(c.ideal.nvars());
        ComponentSummary {
            generators: component_generators(c)
                .iter()
                .map(|g| crate::syntax::print_polynomial_compact(g, &ord))
                .collect(),
            pseudo_prime: c.pseudo_prime,
            height: c.height,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::VarTable;
    use crate::syntax::parse_polynomial;

    #[test]
    fn product_of_variables() {
        let v = VarTable::new(["x", "y"]).unwrap();
        let p = |s: &str| parse_polynomial(s, &v).unwrap();
        let dec = minimal_primes(&Ideal::new(&v, [p("x*y")]).unwrap(), &DecomposeOptions::default()).unwrap();
        let gens: Vec<Vec<Polynomial>> = dec.components.iter().map(component_generators).collect();
        assert_eq!(gens, vec![vec![p("x")], vec![p("y")]]);
        assert!(dec.exhausted);
        assert!(dec.components.iter().all(|c| c.pseudo_prime && c.height == 1));
    }

    #[test]
    fn unit_ideal_is_empty() {
        let v = VarTable::new(["x"]).unwrap();
        let one = Polynomial::one(&v);
        let dec = minimal_primes(&Ideal::new(&v, [one]).unwrap(), &DecomposeOptions::default()).unwrap();
        assert!(dec.is_empty());
    }

    #[test]
    fn embedded_duplicates_are_pruned() {
        let v = VarTable::new(["x", "y"]).unwrap();
        let p = |s: &str| parse_polynomial(s, &v).unwrap();
        // V(x²y, xy²) is the union of the two axes.
        let i = Ideal::new(&v, [p("x^2*y"), p("x*y^2")]).unwrap();
        let dec = minimal_primes(&i, &DecomposeOptions::default()).unwrap();
        let gens: Vec<Vec<Polynomial>> = dec.components.iter().map(component_generators).collect();
        assert_eq!(gens, vec![vec![p("x")], vec![p("y")]]);
        let opts = DecomposeOptions { saturate_branches: false, ..Default::default() };
        let dec = minimal_primes(&Ideal::new(&v, [p("x*y*(x - y)"), p("x^2 - x")]).unwrap(), &opts).unwrap();
        for c in &dec.components {
            assert!(ideal_contains(&c.ideal, &dec.input, &opts.limits).unwrap());
        }
    }

    #[test]
    fn node_budget() {
        let v = VarTable::new(["x", "y", "z"]).unwrap();
        let p = |s: &str| parse_polynomial(s, &v).unwrap();
        let i = Ideal::new(&v, [p("x*y*z*(x-1)*(y-1)")]).unwrap();
        let opts = DecomposeOptions { max_nodes: 1, ..Default::default() };
        let dec = minimal_primes(&i, &opts).unwrap();
        assert!(!dec.exhausted);
        assert!(dec.components.iter().any(|c| !c.pseudo_prime));
    }
}
