use std::sync::Arc;

use crate::arith::{Polynomial, VarTable};
use crate::error::{Error, Result};

/// Named variables, axioms in declaration order, and hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSystem {
    pub vars: Arc<VarTable>,
    pub axioms: Vec<(String, Polynomial)>,
    pub hypotheses: Vec<(String, Polynomial)>,
}

impl AxiomSystem {
    pub fn new(vars: Arc<VarTable>) -> Self {
        AxiomSystem { vars, axioms: Vec::new(), hypotheses: Vec::new() }
    }

    pub fn axiom(&self, name: &str) -> Result<&Polynomial> {
        self.axioms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn hypothesis(&self, name: &str) -> Result<&Polynomial> {
        self.hypotheses
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn axiom_names(&self) -> impl Iterator<Item = &str> {
        self.axioms.iter().map(|(n, _)| n.as_str())
    }

    /// Fails with the first name that is not an axiom of this system.
    pub fn check_axiom_names<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> Result<()> {
        for n in names {
            self.axiom(n)?;
        }
        Ok(())
    }

    /// Axioms not in `dropped`, in declaration order.
    pub fn known_except(&self, dropped: &[String]) -> Vec<String> {
        self.axioms.iter().filter(|(n, _)| !dropped.contains(n)).map(|(n, _)| n.clone()).collect()
    }
}
