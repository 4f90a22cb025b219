use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Name of the auxiliary variable appended by saturation and radical
/// membership. The parser refuses it.
pub const AUX_VAR: &str = "__t";

/// Ordered, duplicate-free list of variable names. Position in the list is
/// the variable index used by [`Monomial`](super::Monomial) exponent vectors
/// and the default ranking of monomial orders (first name ranks highest).
#[derive(Debug, Clone)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for VarTable {}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for name in &names {
            if name == AUX_VAR {
                return Err(Error::InvalidVariable(format!("`{AUX_VAR}` is reserved")));
            }
            if !is_identifier(name) {
                return Err(Error::InvalidVariable(format!("`{name}` is not an identifier")));
            }
        }
        Self::build(names).map(Arc::new)
    }

    fn build(names: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidVariable(format!("duplicate variable `{name}`")));
            }
        }
        Ok(VarTable { names, index })
    }

    /// Table with the auxiliary variable [`AUX_VAR`] appended as the last index.
    pub fn with_aux(&self) -> Result<Arc<Self>> {
        if self.index.contains_key(AUX_VAR) {
            return Err(Error::InvalidVariable(format!("`{AUX_VAR}` already present")));
        }
        let mut names = self.names.clone();
        names.push(AUX_VAR.to_string());
        Self::build(names).map(Arc::new)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// True when `self` is a prefix of `other`, so polynomials embed by
    /// zero-padding their exponent vectors.
    pub fn is_prefix_of(&self, other: &VarTable) -> bool {
        other.names.len() >= self.names.len() && other.names[..self.names.len()] == self.names[..]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_reserved() {
        assert!(VarTable::new(["x", "y", "x"]).is_err());
        assert!(VarTable::new(["__t"]).is_err());
        assert!(VarTable::new(["1x"]).is_err());
        assert!(VarTable::new(["dt0", "m_1"]).is_ok());
    }

    #[test]
    fn aux_extension_is_prefix() {
        let v = VarTable::new(["x", "y"]).unwrap();
        let w = v.with_aux().unwrap();
        assert!(v.is_prefix_of(&w));
        assert_eq!(w.index_of(AUX_VAR), Some(2));
        assert!(w.with_aux().is_err());
    }
}
