//! Benchmark protocols over the corpus and comparison with recorded
//! expectations.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use noether::abduce::{abduce_sweep, scan_inconsistent, AbduceOptions, AbductionReport, AxiomSystem, Status, DEFAULT_SWEEP_TIMEOUT};
use serde::{Deserialize, Serialize};

use crate::commands::to_json;
use crate::expected::{ExpectedCase, ExpectedFile, ExpectedSystem};
use crate::{load_system, normal_string, normalize_text, Failure, Output, EXIT_NEGATIVE, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Protocol {
    /// Drop each axiom in turn.
    #[serde(rename = "leave-one-out", alias = "loo")]
    #[value(name = "loo")]
    Loo,
    /// Drop every pair and triple from the axiom pool.
    #[serde(rename = "leave-k-out", alias = "tuples")]
    #[value(name = "tuples")]
    Tuples,
    /// Run the full system, then every single removal.
    #[serde(rename = "inconsistency-scan", alias = "scan")]
    #[value(name = "scan")]
    Scan,
}

pub struct BenchArgs {
    pub corpus: PathBuf,
    pub protocol: Option<Protocol>,
    pub systems: Vec<String>,
    pub expected: Option<PathBuf>,
    pub hypothesis: Option<String>,
    pub options: AbduceOptions,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub dropped: Vec<String>,
    pub status: String,
    pub recovered: bool,
    pub accepted: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemResult {
    pub system: String,
    pub cases: Vec<CaseResult>,
    pub recovered: usize,
    pub total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent_removals: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub system: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dropped: Option<Vec<String>>,
    pub gating: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub gating_failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkResult {
    pub protocol: Protocol,
    pub hypothesis: String,
    pub systems: Vec<SystemResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

pub fn bench(args: &BenchArgs) -> Result<Output, Failure> {
    let expected = args.expected.as_deref().map(ExpectedFile::load).transpose()?;
    let protocol = match (args.protocol, &expected) {
        (Some(p), Some(e)) if p != e.protocol => {
            return Err(Failure::usage(format!("--protocol disagrees with the expected file ({:?})", e.protocol)))
        }
        (Some(p), _) => p,
        (None, Some(e)) => e.protocol,
        (None, None) => Protocol::Loo,
    };
    let hypothesis = args.hypothesis.clone().or_else(|| expected.as_ref().map(|e| e.hypothesis.clone())).unwrap_or_else(|| "Q".into());
    let names = system_names(args, expected.as_ref(), &hypothesis)?;

    let mut systems = Vec::new();
    for name in &names {
        let loaded = load_system(&args.corpus.join(format!("{name}.axioms")))?;
        let pool = expected.as_ref().and_then(|e| e.system(name)).and_then(|s| s.axioms.clone());
        systems.push(run_system(name, &loaded.system, protocol, &hypothesis, pool, &args.options)?);
    }
    let comparison = expected.as_ref().map(|e| compare(e, &systems, &args.corpus));
    let result = BenchmarkResult { protocol, hypothesis, systems, comparison };
    let code = match &result.comparison {
        Some(c) if c.gating_failures > 0 => EXIT_NEGATIVE,
        _ => EXIT_OK,
    };
    let text = render(&result);
    Ok(Output { code, json: to_json(&result), text })
}

fn system_names(args: &BenchArgs, expected: Option<&ExpectedFile>, hypothesis: &str) -> Result<Vec<String>, Failure> {
    let names: Vec<String> = args.systems.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
    if !names.is_empty() {
        return Ok(names);
    }
    if let Some(e) = expected {
        return Ok(e.systems.iter().map(|s| s.system.clone()).collect());
    }
    let mut found = Vec::new();
    let dir = std::fs::read_dir(&args.corpus).map_err(|e| Failure::usage(format!("{}: {e}", args.corpus.display())))?;
    for entry in dir.flatten() {
        let path = entry.path();
        if path.extension().and_then(|x| x.to_str()) != Some("axioms") {
            continue;
        }
        let loaded = load_system(&path)?;
        if loaded.system.hypothesis(hypothesis).is_ok() {
            found.push(loaded.name);
        }
    }
    found.sort();
    Ok(found)
}

/// Pairs then triples of `pool`, each in pool order.
pub fn tuples(pool: &[String]) -> Vec<Vec<String>> {
    let n = pool.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(vec![pool[i].clone(), pool[j].clone()]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(vec![pool[i].clone(), pool[j].clone(), pool[k].clone()]);
            }
        }
    }
    out
}

fn case_of(dropped: Vec<String>, r: Result<AbductionReport, noether::Error>, wall_ms: u64) -> CaseResult {
    match r {
        Ok(r) => CaseResult {
            dropped,
            status: r.status.as_str().to_string(),
            recovered: r.status == Status::CandidatesFound,
            accepted: r.accepted().map(|c| normal_string(&c.polynomial)).collect(),
            error: None,
            wall_ms: r.timings.total_ms,
        },
        Err(e) => CaseResult {
            dropped,
            status: if e.is_resource_limit() { Status::ResourceExhausted.as_str().into() } else { "error".into() },
            recovered: false,
            accepted: Vec::new(),
            error: Some(e.to_string()),
            wall_ms,
        },
    }
}

fn run_system(
    name: &str,
    system: &AxiomSystem,
    protocol: Protocol,
    q: &str,
    pool: Option<Vec<String>>,
    opts: &AbduceOptions,
) -> Result<SystemResult, Failure> {
    system.hypothesis(q).map_err(Failure::from_engine)?;
    let all: Vec<String> = system.axiom_names().map(String::from).collect();
    let (cases, consistent_removals) = match protocol {
        Protocol::Loo | Protocol::Tuples => {
            let drops: Vec<Vec<String>> = match protocol {
                Protocol::Loo => all.iter().map(|a| vec![a.clone()]).collect(),
                _ => tuples(&pool.unwrap_or(all)),
            };
            let start = Instant::now();
            let reports = abduce_sweep(system, &drops, q, opts, Some(DEFAULT_SWEEP_TIMEOUT));
            let elapsed = start.elapsed().as_millis() as u64;
            (drops.into_iter().zip(reports).map(|(d, r)| case_of(d, r, elapsed)).collect::<Vec<_>>(), None)
        }
        Protocol::Scan => {
            let start = Instant::now();
            let scan = scan_inconsistent(system, q, opts);
            let elapsed = start.elapsed().as_millis() as u64;
            match scan {
                Ok(s) => {
                    let consistent = s.consistent_removals().into_iter().map(String::from).collect();
                    let mut cases = vec![case_of(Vec::new(), Ok(s.base), elapsed)];
                    for r in s.removals {
                        cases.push(case_of(r.dropped.clone(), Ok(r), elapsed));
                    }
                    (cases, Some(consistent))
                }
                Err(e) => (vec![case_of(Vec::new(), Err(e), elapsed)], None),
            }
        }
    };
    let recovered = cases.iter().filter(|c| c.recovered).count();
    Ok(SystemResult { system: name.to_string(), total: cases.len(), recovered, cases, consistent_removals })
}

fn same_set(a: &[String], b: &[String]) -> bool {
    a.iter().collect::<BTreeSet<_>>() == b.iter().collect::<BTreeSet<_>>()
}

fn compare(expected: &ExpectedFile, results: &[SystemResult], corpus: &Path) -> Comparison {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for es in &expected.systems {
        let Some(res) = results.iter().find(|r| r.system == es.system) else { continue };
        let system = match load_system(&corpus.join(format!("{}.axioms", es.system))) {
            Ok(l) => l.system,
            Err(f) => {
                mismatches.push(Mismatch { system: es.system.clone(), dropped: None, gating: es.gating, detail: f.message });
                continue;
            }
        };
        for ec in &es.cases {
            checked += 1;
            let gating = ec.gating.unwrap_or(es.gating);
            let found = res.cases.iter().find(|c| same_set(&c.dropped, &ec.drop));
            let details = match found {
                None => vec!["case was not run".to_string()],
                Some(c) => case_mismatches(&system, ec, c),
            };
            for detail in details {
                mismatches.push(Mismatch { system: es.system.clone(), dropped: Some(ec.drop.clone()), gating, detail });
            }
        }
        system_totals(es, res, &mut checked, &mut mismatches);
    }
    let gating_failures = mismatches.iter().filter(|m| m.gating).count();
    Comparison { checked, mismatches, gating_failures }
}

fn system_totals(es: &ExpectedSystem, res: &SystemResult, checked: &mut usize, out: &mut Vec<Mismatch>) {
    if let Some(t) = es.recovered_total {
        *checked += 1;
        if t != res.recovered {
            out.push(Mismatch {
                system: es.system.clone(),
                dropped: None,
                gating: es.gating,
                detail: format!("expected {t}/{} recovered, got {}/{}", res.total, res.recovered, res.total),
            });
        }
    }
    if let Some(want) = &es.consistent_removals {
        *checked += 1;
        let got = res.consistent_removals.clone().unwrap_or_default();
        if !same_set(want, &got) {
            out.push(Mismatch {
                system: es.system.clone(),
                dropped: None,
                gating: es.gating,
                detail: format!("expected consistent removals {{{}}}, got {{{}}}", want.join(","), got.join(",")),
            });
        }
    }
}

fn case_mismatches(system: &AxiomSystem, ec: &ExpectedCase, c: &CaseResult) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(want) = ec.recovered {
        if want != c.recovered {
            out.push(format!("expected recovered={want}, got {}", c.status));
        }
    }
    if let Some(want) = &ec.status {
        if *want != c.status {
            out.push(format!("expected status {want}, got {}", c.status));
        }
    }
    let norm = |list: &[String]| -> Result<Vec<String>, String> {
        list.iter().map(|t| normalize_text(system, t).map_err(|f| f.message)).collect()
    };
    if let Some(exact) = &ec.accepted_exactly {
        match norm(exact) {
            Ok(want) if !same_set(&want, &c.accepted) => {
                out.push(format!("expected accepted set {{{}}}, got {{{}}}", want.join(", "), c.accepted.join(", ")))
            }
            Ok(_) => {}
            Err(e) => out.push(e),
        }
    }
    match norm(&ec.accepted_includes) {
        Ok(want) => {
            for w in want.iter().filter(|w| !c.accepted.contains(w)) {
                out.push(format!("expected {w} among the accepted candidates"));
            }
        }
        Err(e) => out.push(e),
    }
    match norm(&ec.accepted_excludes) {
        Ok(want) => {
            for w in want.iter().filter(|w| c.accepted.contains(w)) {
                out.push(format!("{w} should not be accepted"));
            }
        }
        Err(e) => out.push(e),
    }
    out
}

fn render(r: &BenchmarkResult) -> String {
    let mut out = String::new();
    for s in &r.systems {
        let _ = writeln!(out, "{}: {}/{} recovered", s.system, s.recovered, s.total);
        for c in &s.cases {
            let dropped = if c.dropped.is_empty() { "-".to_string() } else { c.dropped.join(",") };
            let _ = writeln!(out, "  {:<12} {:<18} {}", dropped, c.status, c.accepted.join("  "));
        }
        if let Some(cr) = &s.consistent_removals {
            let _ = writeln!(out, "  consistent removals: {}", if cr.is_empty() { "none".to_string() } else { cr.join(",") });
        }
    }
    if let Some(c) = &r.comparison {
        let _ = writeln!(out, "checked {} expectations, {} mismatches ({} gating)", c.checked, c.mismatches.len(), c.gating_failures);
        for m in &c.mismatches {
            let dropped = m.dropped.as_ref().map(|d| format!(" drop {}", d.join(","))).unwrap_or_default();
            let _ = writeln!(out, "  {}{} {}: {}", if m.gating { "FAIL" } else { "note" }, dropped, m.system, m.detail);
        }
    }
    out
}
