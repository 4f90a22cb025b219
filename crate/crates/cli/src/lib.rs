//! Command implementations behind the `noether` binary.
//!
//! Every command returns an [`Output`] holding the exit code, a JSON value
//! and a text rendering of the same content; `main` only picks one of them.

pub mod bench;
pub mod commands;
pub mod expected;

use std::path::Path;

use noether::abduce::AxiomSystem;
use noether::syntax::parse_system;
use noether::{MonomialOrder, Polynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Clone)]
pub struct Output {
    pub code: i32,
    pub json: serde_json::Value,
    pub text: String,
}

/// An error that ends the command with the given exit code.
#[derive(Debug, Clone)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    /// Resource limits map to exit 3, everything else to 2.
    pub fn from_engine(e: noether::Error) -> Self {
        let code = if e.is_resource_limit() { EXIT_RESOURCE } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

/// A parsed system file and the name used in reports (the file stem).
pub struct LoadedSystem {
    pub name: String,
    pub system: AxiomSystem,
}

pub fn load_system(path: &Path) -> Result<LoadedSystem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let file = parse_system(&text).map_err(|e| Failure::usage(format!("{}:{e}", path.display())))?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(LoadedSystem { name, system: file.system })
}

/// Splits `A1,A2` (or repeated flags) into names and checks them against the
/// axioms of `system`.
pub fn axiom_list(system: &AxiomSystem, raw: &[String]) -> Result<Vec<String>, Failure> {
    let names: Vec<String> =
        raw.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
    system.check_axiom_names(names.iter().map(String::as_str)).map_err(Failure::from_engine)?;
    Ok(names)
}

/// The comparison key for candidates: integer-primitive, positive leading
/// coefficient, compact grevlex print.
pub fn normal_string(p: &Polynomial) -> String {
    let ord = MonomialOrder::grevlex(p.nvars());
    noether::syntax::print_polynomial_compact(&p.normalized(&ord), &ord)
}

/// Parses `text` over the variables of `system` and returns its normal string.
pub fn normalize_text(system: &AxiomSystem, text: &str) -> Result<String, Failure> {
    let p = noether::syntax::parse_polynomial(text, &system.vars).map_err(|e| Failure::usage(format!("`{text}`: {e}")))?;
    Ok(normal_string(&p))
}
