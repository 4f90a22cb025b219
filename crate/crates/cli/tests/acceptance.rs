//! Acceptance criteria, one PASS or FAIL line each. Exits nonzero when any
//! criterion fails.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use noether::abduce::AbduceOptions;
use noether::syntax::parse_polynomial;
use noether::Polynomial;
use noether_cli::bench::{bench, BenchArgs, Protocol};
use noether_cli::commands::{abduce, check, AbduceArgs, CheckArgs};
use noether_cli::{load_system, normalize_text};
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn system_path(name: &str) -> PathBuf {
    root().join("corpus").join(format!("{name}.axioms"))
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn accepted(report: &Value) -> Vec<String> {
    let mut v: Vec<String> = report["candidates"]
        .as_array()
        .map(|a| a.iter().filter(|c| c["accepted"] == true).map(|c| c["polynomial"].as_str().unwrap().to_string()).collect())
        .unwrap_or_default();
    v.sort();
    v
}

fn normal_set(system: &str, texts: &[&str]) -> Vec<String> {
    let sys = load_system(&system_path(system)).unwrap().system;
    let mut v: Vec<String> = texts.iter().map(|t| normalize_text(&sys, t).unwrap()).collect();
    v.sort();
    v
}

fn run_abduce(system: &str, drop: &[&str], scan: bool) -> (Value, i32, Duration) {
    let path = system_path(system);
    let drop: Vec<String> = drop.iter().map(|s| s.to_string()).collect();
    let start = Instant::now();
    let out = abduce(&AbduceArgs { system: &path, hypothesis: "Q", drop: &drop, scan_inconsistent: scan, options: AbduceOptions::default() })
        .unwrap_or_else(|f| panic!("{system}: {}", f.message));
    (out.json, out.code, start.elapsed())
}

fn run_bench(protocol: Protocol, expected: &str, systems: &[&str]) -> Value {
    let args = BenchArgs {
        corpus: root().join("corpus"),
        protocol: Some(protocol),
        systems: systems.iter().map(|s| s.to_string()).collect(),
        expected: Some(root().join("corpus/expected").join(expected)),
        hypothesis: None,
        options: AbduceOptions::default(),
    };
    bench(&args).unwrap_or_else(|f| panic!("{}", f.message)).json
}

fn mismatch_lines(result: &Value, gating_only: bool) -> Vec<String> {
    result["comparison"]["mismatches"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|m| !gating_only || m["gating"] == true)
        .map(|m| {
            let drop = m["dropped"].as_array().map(|d| d.iter().map(|x| x.as_str().unwrap()).collect::<Vec<_>>().join(",")).unwrap_or_default();
            format!("{} {}: {}", m["system"].as_str().unwrap(), drop, m["detail"].as_str().unwrap())
        })
        .collect()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let path = system_path("toy");
    let out = match check(&CheckArgs { system: &path, hypothesis: "q", drop: &[], certificate: true }) {
        Ok(o) => o,
        Err(f) => return verdict(false, f.message),
    };
    let sys = load_system(&path).unwrap().system;
    let mut sum = Polynomial::zero(&sys.vars);
    for entry in out.json["certificate"].as_array().unwrap() {
        let cof = parse_polynomial(entry["cofactor"].as_str().unwrap(), &sys.vars).unwrap();
        let axiom = sys.axiom(entry["axiom"].as_str().unwrap()).unwrap();
        sum = &sum + &(&cof * axiom);
    }
    let q = sys.hypothesis("q").unwrap();
    let secs = start.elapsed().as_secs_f64();
    let ok = out.json["derivable"] == true && &sum == q && secs < 1.0;
    verdict(ok, format!("derivable={}, certificate expands to q: {}, {secs:.2} s", out.json["derivable"], &sum == q))
}

fn criterion_2() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for drop in ["A1", "A2", "A3", "A4"] {
        let (r, _, t) = run_abduce("kepler", &[drop], false);
        let good = r["status"] == "candidates-found" && t < Duration::from_secs(10);
        ok &= good;
        notes.push(format!("{drop} {} {:.2} s", r["status"].as_str().unwrap(), t.as_secs_f64()));
        if drop == "A1" {
            let exact = accepted(&r) == normal_set("kepler", &["(d1+d2)^2*Fg - G*m1*m2"]);
            ok &= exact;
            notes.push(format!("A1 set exact: {exact}"));
        }
        if drop == "A4" {
            let got = accepted(&r);
            let exact = got == normal_set("kepler", &["w*p - 1", "w*p + 1", "Fg*p^2 - m2*d2"]);
            let excluded = normal_set("kepler", &["m2", "d2", "(d1+d2)^2"]).iter().all(|b| !got.contains(b));
            ok &= exact && excluded;
            notes.push(format!("A4 set exact: {exact}, m2/d2/(d1+d2)^2 excluded: {excluded}"));
        }
    }
    verdict(ok, notes.join("; "))
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let want = normal_set("kepler", &["Fg*p^2 - m2*d2"]).pop().unwrap();
    let mut ok = true;
    let mut notes = Vec::new();
    for drop in [&["A3", "A4"][..], &["A2", "A3", "A4"]] {
        let (r, _, _) = run_abduce("kepler", drop, false);
        let has = accepted(&r).contains(&want);
        ok &= has;
        notes.push(format!("{} recovers Fg*p^2-d2*m2: {has}", drop.join(",")));
    }
    let result = run_bench(Protocol::Tuples, "tuples.json", &["kepler"]);
    let sys = &result["systems"][0];
    let rows = mismatch_lines(&result, false);
    ok &= rows.is_empty() && sys["recovered"] == 5 && sys["total"] == 10;
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 60.0;
    notes.push(format!("matrix {}/{} recovered, {} row mismatches, {secs:.1} s", sys["recovered"], sys["total"], rows.len()));
    verdict(ok, notes.join("; "))
}

fn criterion_4() -> Verdict {
    let (r, _, t) = run_abduce("einstein_newton", &[], true);
    let base = r["base"]["status"].as_str().unwrap().to_string();
    let consistent: Vec<String> = r["consistent_removals"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
    let newton = r["removals"].as_array().unwrap().iter().find(|x| x["dropped"][0] == "N").cloned().unwrap_or(Value::Null);
    let got = accepted(&newton);
    let wanted = normal_set("einstein_newton", &["c*dt - 2*L", "c*dt + 2*L", "2*L*f - c", "2*L*f + c"]);
    let includes = wanted.iter().all(|w| got.contains(w));
    let ok = base == "inconsistent" && consistent == ["N"] && includes && t < Duration::from_secs(30);
    verdict(
        ok,
        format!(
            "full system {base}; consistent removals {{{}}}; N candidates include cdt±2L, 2Lf±c: {includes}; {:.1} s",
            consistent.join(","),
            t.as_secs_f64()
        ),
    )
}

fn criterion_5(result: &Value) -> Verdict {
    let gating = mismatch_lines(result, true);
    let mut summary: Vec<String> = result["systems"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| format!("{} {}/{}", s["system"].as_str().unwrap(), s["recovered"], s["total"]))
        .collect();
    summary.push(format!("{} gating mismatches", gating.len()));
    let mut detail = summary.join(", ");
    for g in &gating {
        detail.push_str(&format!("\n        {g}"));
    }
    verdict(gating.is_empty(), detail)
}

fn criterion_6() -> Verdict {
    type Suite = fn(u64) -> support::Outcome;
    let suites: [(&str, Suite, u64); 5] = [
        ("groebner", support::groebner_suite, 1),
        ("elimination", support::elimination_suite, 2),
        ("decomposition", support::decomposition_suite, 3),
        ("factor", support::factor_suite, 4),
        ("parser", support::parser_suite, 5),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, suite, seed) in suites {
        match suite(seed) {
            Ok(s) => notes.push(format!("{name}: {s}")),
            Err(e) => {
                ok = false;
                notes.push(format!("{name} FAILED: {e}"));
            }
        }
    }
    verdict(ok, notes.join("; "))
}

fn masked(mut v: Value) -> String {
    fn walk(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("wall_ms");
                m.remove("timings");
                m.values_mut().for_each(walk);
            }
            Value::Array(a) => a.iter_mut().for_each(walk),
            _ => {}
        }
    }
    walk(&mut v);
    serde_json::to_string_pretty(&v).unwrap()
}

fn criterion_7(first: &Value) -> Verdict {
    let second = run_bench(Protocol::Loo, "loo.json", &[]);
    let same = masked(first.clone()) == masked(second);
    verdict(same, format!("two leave-one-out runs identical after masking timings: {same}"))
}

fn main() {
    let mut failures = 0;
    let mut report = |n: usize, title: &str, v: Verdict| {
        failures += !v.pass as usize;
        println!("{} {n} {title}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    };
    report(1, "membership certificate for the toy system", criterion_1());
    report(2, "Kepler single-axiom recovery", criterion_2());
    report(3, "Kepler multi-axiom recovery", criterion_3());
    report(4, "Einstein inconsistency scan", criterion_4());
    let loo = run_bench(Protocol::Loo, "loo.json", &[]);
    report(5, "leave-one-out matrix", criterion_5(&loo));
    report(6, "property suites", criterion_6());
    report(7, "benchmark determinism", criterion_7(&loo));
    println!("{} of 7 criteria passed", 7 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
