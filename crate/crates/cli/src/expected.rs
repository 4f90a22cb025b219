//! Recorded recovery expectations for `bench --expected`.
//!
//! ```json
//! { "protocol": "loo", "hypothesis": "Q",
//!   "systems": [ { "system": "kepler",
//!                  "cases": [ { "drop": ["A1"], "recovered": true,
//!                               "accepted_exactly": ["(d1+d2)^2*Fg - G*m1*m2"] } ] } ] }
//! ```
//!
//! Candidate strings are parsed against the system's variables and compared
//! in normal form, so any scalar multiple may be written.

use serde::Deserialize;

use crate::bench::Protocol;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedFile {
    pub protocol: Protocol,
    #[serde(default = "default_hypothesis")]
    pub hypothesis: String,
    pub systems: Vec<ExpectedSystem>,
}

fn default_hypothesis() -> String {
    "Q".to_string()
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedSystem {
    pub system: String,
    /// Mismatches on a non-gating system are reported but do not fail the run.
    #[serde(default = "yes")]
    pub gating: bool,
    /// Axioms the tuple protocol draws from; all axioms when absent.
    #[serde(default)]
    pub axioms: Option<Vec<String>>,
    #[serde(default)]
    pub cases: Vec<ExpectedCase>,
    /// Number of recovered cases when per-case outcomes are not recorded.
    #[serde(default)]
    pub recovered_total: Option<usize>,
    /// Scan protocol: removals that leave a consistent system.
    #[serde(default)]
    pub consistent_removals: Option<Vec<String>>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedCase {
    pub drop: Vec<String>,
    #[serde(default)]
    pub recovered: Option<bool>,
    /// Report status, e.g. `inconsistent`.
    #[serde(default)]
    pub status: Option<String>,
    /// Overrides the system's flag for this case.
    #[serde(default)]
    pub gating: Option<bool>,
    #[serde(default)]
    pub accepted_exactly: Option<Vec<String>>,
    #[serde(default)]
    pub accepted_includes: Vec<String>,
    #[serde(default)]
    pub accepted_excludes: Vec<String>,
    #[serde(default)]
    pub note: Option<String>,
}

impl ExpectedFile {
    pub fn load(path: &std::path::Path) -> Result<ExpectedFile, crate::Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| crate::Failure::usage(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| crate::Failure::usage(format!("{}: {e}", path.display())))
    }

    pub fn system(&self, name: &str) -> Option<&ExpectedSystem> {
        self.systems.iter().find(|s| s.system == name)
    }
}
