use std::fmt;

use thiserror::Error;

use crate::syntax::ParseError;

/// Which resource budget a computation ran out of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Resource {
    Degree,
    BasisSize,
    Deadline,
    BranchNodes,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Resource::Degree => "polynomial degree",
            Resource::BasisSize => "basis size",
            Resource::Deadline => "time",
            Resource::BranchNodes => "decomposition branch nodes",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("polynomials are defined over different variable tables")]
    VarTableMismatch,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(Resource),
    #[error("ideal is the whole ring")]
    TrivialIdeal,
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid variable table: {0}")]
    InvalidVariable(String),
    #[error("invalid monomial ordering: {0}")]
    InvalidOrder(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
