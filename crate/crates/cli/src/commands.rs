use std::fmt::Write;
use std::time::Duration;

use noether::abduce::{abduce_single, check_derivable, scan_inconsistent, AbduceOptions, AbductionReport, ScanReport, Status};
use noether::decompose::{minimal_primes, ComponentSummary, DecomposeOptions};
use noether::groebner::Limits;
use noether::idealops::Ideal;
use serde::Serialize;
use serde_json::json;

use crate::{axiom_list, load_system, normal_string, Failure, Output, EXIT_NEGATIVE, EXIT_OK, EXIT_RESOURCE};

pub struct CheckArgs<'a> {
    pub system: &'a std::path::Path,
    pub hypothesis: &'a str,
    pub drop: &'a [String],
    pub certificate: bool,
}

#[derive(Serialize)]
struct Cofactor {
    axiom: String,
    cofactor: String,
}

#[derive(Serialize)]
struct CheckReport {
    system: String,
    hypothesis: String,
    dropped: Vec<String>,
    known: Vec<String>,
    derivable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Vec<Cofactor>>,
}

pub fn check(args: &CheckArgs) -> Result<Output, Failure> {
    let loaded = load_system(args.system)?;
    let sys = &loaded.system;
    let dropped = axiom_list(sys, args.drop)?;
    sys.hypothesis(args.hypothesis).map_err(Failure::from_engine)?;
    let known = sys.known_except(&dropped);
    let (derivable, cert) = check_derivable(sys, &known, args.hypothesis, &Limits::default()).map_err(Failure::from_engine)?;
    let certificate = match (args.certificate, cert) {
        (true, Some(c)) => Some(
            known
                .iter()
                .zip(&c.cofactors)
                .map(|(n, p)| Cofactor { axiom: n.clone(), cofactor: noether::syntax::print_polynomial_compact(p, &noether::MonomialOrder::grevlex(p.nvars())) })
                .collect::<Vec<_>>(),
        ),
        _ => None,
    };
    let report = CheckReport {
        system: loaded.name,
        hypothesis: args.hypothesis.to_string(),
        dropped,
        known,
        derivable,
        certificate,
    };
    let mut text = format!("{} {}: {}\n", report.system, report.hypothesis, if derivable { "derivable" } else { "not derivable" });
    if let Some(c) = &report.certificate {
        for f in c {
            let _ = writeln!(text, "  {}: {}", f.axiom, f.cofactor);
        }
    }
    Ok(Output { code: if derivable { EXIT_OK } else { EXIT_NEGATIVE }, json: to_json(&report), text })
}

pub struct DecomposeArgs<'a> {
    pub system: &'a std::path::Path,
    pub drop: &'a [String],
    pub with_hypothesis: Option<&'a str>,
    pub max_nodes: usize,
}

#[derive(Serialize)]
struct DecomposeReport {
    system: String,
    dropped: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hypothesis: Option<String>,
    inconsistent: bool,
    exhausted: bool,
    components: Vec<ComponentSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

pub fn decompose(args: &DecomposeArgs) -> Result<Output, Failure> {
    let loaded = load_system(args.system)?;
    let sys = &loaded.system;
    let dropped = axiom_list(sys, args.drop)?;
    let mut gens: Vec<_> = sys.axioms.iter().filter(|(n, _)| !dropped.contains(n)).map(|(_, p)| p.clone()).collect();
    if let Some(h) = args.with_hypothesis {
        gens.push(sys.hypothesis(h).map_err(Failure::from_engine)?.clone());
    }
    let ideal = Ideal::new(&sys.vars, gens).map_err(Failure::from_engine)?;
    let opts = DecomposeOptions { max_nodes: args.max_nodes, ..Default::default() };
    let dec = minimal_primes(&ideal, &opts).map_err(Failure::from_engine)?;
    let inconsistent = dec.is_empty();
    let report = DecomposeReport {
        system: loaded.name,
        dropped,
        hypothesis: args.with_hypothesis.map(String::from),
        inconsistent,
        exhausted: dec.exhausted,
        components: dec.components.iter().map(ComponentSummary::of).collect(),
        note: inconsistent.then(|| "inconsistent: ideal is the whole ring".to_string()),
    };
    let mut text = String::new();
    if let Some(n) = &report.note {
        let _ = writeln!(text, "{n}");
    }
    for (i, c) in report.components.iter().enumerate() {
        let _ = writeln!(text, "component {i} (height {}{}):", c.height, if c.pseudo_prime { "" } else { ", not split further" });
        for g in &c.generators {
            let _ = writeln!(text, "  {g}");
        }
    }
    if !report.exhausted {
        let _ = writeln!(text, "branch budget of {} nodes exhausted", args.max_nodes);
    }
    let code = if report.exhausted { EXIT_OK } else { EXIT_RESOURCE };
    Ok(Output { code, json: to_json(&report), text })
}

pub struct AbduceArgs<'a> {
    pub system: &'a std::path::Path,
    pub hypothesis: &'a str,
    pub drop: &'a [String],
    pub scan_inconsistent: bool,
    pub options: AbduceOptions,
}

/// Default options with the given budget, timeout in seconds (0 disables
/// it) and exactness test.
pub fn abduce_options(max_nodes: usize, timeout_secs: u64, exactness: noether::abduce::Exactness) -> AbduceOptions {
    let mut opts = AbduceOptions::default();
    opts.decompose.max_nodes = max_nodes;
    opts.timeout = (timeout_secs > 0).then(|| Duration::from_secs(timeout_secs));
    opts.exactness = exactness;
    opts
}

pub fn status_code(status: Status) -> i32 {
    match status {
        Status::CandidatesFound | Status::AlreadyDerivable => EXIT_OK,
        Status::NoSingleAxiom | Status::Inconsistent => EXIT_NEGATIVE,
        Status::ResourceExhausted => EXIT_RESOURCE,
    }
}

pub fn abduce(args: &AbduceArgs) -> Result<Output, Failure> {
    let loaded = load_system(args.system)?;
    let sys = &loaded.system;
    let dropped = axiom_list(sys, args.drop)?;
    sys.hypothesis(args.hypothesis).map_err(Failure::from_engine)?;
    if args.scan_inconsistent {
        let mut scan = scan_inconsistent(sys, args.hypothesis, &args.options).map_err(Failure::from_engine)?;
        scan.base.system = loaded.name.clone();
        for r in &mut scan.removals {
            r.system = loaded.name.clone();
        }
        let text = render_scan(&scan);
        let consistent: Vec<String> = scan.consistent_removals().into_iter().map(String::from).collect();
        let code = if scan.removals.iter().any(|r| r.status == Status::ResourceExhausted) {
            EXIT_RESOURCE
        } else if scan.removals.iter().any(|r| r.status == Status::CandidatesFound) {
            EXIT_OK
        } else {
            EXIT_NEGATIVE
        };
        let mut json = to_json(&scan);
        json["consistent_removals"] = json!(consistent);
        return Ok(Output { code, json, text });
    }
    let mut report = abduce_single(sys, &dropped, args.hypothesis, &args.options).map_err(Failure::from_engine)?;
    report.system = loaded.name;
    Ok(Output { code: status_code(report.status), json: to_json(&report), text: render_report(&report) })
}

/// Text form of a report. Lists the same accepted set as the JSON form.
pub fn render_report(r: &AbductionReport) -> String {
    let mut out = String::new();
    let dropped = if r.dropped.is_empty() { "-".to_string() } else { r.dropped.join(",") };
    let _ = writeln!(out, "{} {} drop {}: {}", r.system, r.hypothesis, dropped, r.status.as_str());
    if let Some(n) = &r.note {
        let _ = writeln!(out, "  note: {n}");
    }
    let _ = writeln!(out, "  components: {}{}", r.components.len(), if r.decomposition_exhausted { "" } else { " (budget exhausted)" });
    let accepted: Vec<_> = r.accepted().collect();
    if !accepted.is_empty() {
        let _ = writeln!(out, "  accepted:");
        for c in accepted {
            let _ = writeln!(out, "    {}", normal_string(&c.polynomial));
        }
    }
    let rejected: Vec<_> = r.candidates.iter().filter(|c| !c.accepted).collect();
    if !rejected.is_empty() {
        let _ = writeln!(out, "  rejected:");
        for c in rejected {
            let reason = c.rejection.map(|x| to_json(&x).as_str().unwrap_or_default().to_string()).unwrap_or_default();
            let _ = writeln!(out, "    {}  [{}]", normal_string(&c.polynomial), reason);
        }
    }
    out
}

fn render_scan(s: &ScanReport) -> String {
    let mut out = render_report(&s.base);
    for r in &s.removals {
        out.push_str(&render_report(r));
    }
    let consistent = s.consistent_removals();
    let _ = writeln!(out, "consistent removals: {}", if consistent.is_empty() { "none".to_string() } else { consistent.join(",") });
    out
}

pub(crate) fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("reports serialize")
}
