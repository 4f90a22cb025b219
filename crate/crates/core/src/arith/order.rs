use std::cmp::Ordering;

use serde::Serialize;

use super::Monomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// Two-block elimination order: the first `k` ranked variables compared
    /// by grevlex, ties broken by grevlex on the remaining variables.
    Elimination(usize),
}

/// A monomial order together with a variable ranking.
///
/// `ranking[0]` is the index of the highest-ranked variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    ranking: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, ranking: Vec<usize>) -> Result<Self> {
        let n = ranking.len();
        let mut seen = vec![false; n];
        for &r in &ranking {
            if r >= n || std::mem::replace(&mut seen[r], true) {
                return Err(Error::InvalidOrder(format!("{ranking:?} is not a permutation")));
            }
        }
        if let OrderKind::Elimination(k) = kind {
            if k > n {
                return Err(Error::InvalidOrder(format!("block size {k} exceeds {n} variables")));
            }
        }
        Ok(MonomialOrder { kind, ranking })
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, ranking: (0..nvars).collect() }
    }

    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, ranking: (0..nvars).collect() }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    /// Same kind, ranking extended by one variable (index `nvars`) placed at
    /// the top.
    pub fn with_top_variable(&self) -> Self {
        let n = self.ranking.len();
        let mut ranking = Vec::with_capacity(n + 1);
        ranking.push(n);
        ranking.extend_from_slice(&self.ranking);
        let kind = match self.kind {
            OrderKind::Elimination(k) => OrderKind::Elimination(k + 1),
            k => k,
        };
        MonomialOrder { kind, ranking }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => lex_cmp(&self.ranking, a, b),
            OrderKind::Grevlex => grevlex_cmp(&self.ranking, a, b),
            OrderKind::Elimination(k) => {
                let (hi, lo) = self.ranking.split_at(k);
                grevlex_cmp(hi, a, b).then_with(|| grevlex_cmp(lo, a, b))
            }
        }
    }
}

fn lex_cmp(ranking: &[usize], a: &[u16], b: &[u16]) -> Ordering {
    for &v in ranking {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(ranking: &[usize], a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = ranking.iter().map(|&v| a[v] as u32).sum();
    let db: u32 = ranking.iter().map(|&v| b[v] as u32).sum();
    da.cmp(&db).then_with(|| {
        for &v in ranking.iter().rev() {
            match a[v].cmp(&b[v]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}
