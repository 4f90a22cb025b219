use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::AxiomSystem;
use crate::arith::{MonomialOrder, Polynomial, Rational};
use crate::decompose::{component_generators, minimal_primes, ComponentSummary, DecomposeOptions, Decomposition};
use crate::error::{Error, Result};
use crate::groebner::{elimination_ideal_with, ideal_membership_with, is_member_with, EliminationStrategy, Limits, MembershipCertificate};
use crate::idealops::{independent_set_among, radical_membership, recoverability_precheck, Ideal, Precheck};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(120);
pub const DEFAULT_SWEEP_TIMEOUT: Duration = Duration::from_secs(600);

#[derive(Debug, Clone, Copy)]
pub struct AbduceOptions {
    pub decompose: DecomposeOptions,
    /// Wall-clock budget per report; `None` disables it.
    pub timeout: Option<Duration>,
    pub elimination: EliminationStrategy,
    pub exactness: Exactness,
    /// Run the recoverability precheck on the known axioms.
    pub precheck: bool,
    /// Reason about candidates concurrently.
    pub parallel: bool,
}

impl Default for AbduceOptions {
    fn default() -> Self {
        AbduceOptions {
            decompose: DecomposeOptions::default(),
            timeout: Some(DEFAULT_TIMEOUT),
            elimination: EliminationStrategy::default(),
            exactness: Exactness::default(),
            precheck: true,
            parallel: true,
        }
    }
}

impl AbduceOptions {
    fn limits_until(&self, deadline: Option<Instant>) -> Limits {
        let own = self.decompose.limits.deadline;
        let d = match (own, deadline) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.decompose.limits.with_deadline(d)
    }
}

/// How the projection of a candidate onto the variables of `Q` is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    /// The projection must contain that of every component of `V(known, Q)`.
    #[default]
    Encoded,
    /// Some component of the projection must leave every variable of `Q`
    /// free to be nonzero, and no other candidate may project onto a
    /// strictly larger set.
    Nontrivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    AlreadyDerivable,
    CandidatesFound,
    NoSingleAxiom,
    Inconsistent,
    ResourceExhausted,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::AlreadyDerivable => "already-derivable",
            Status::CandidatesFound => "candidates-found",
            Status::NoSingleAxiom => "no-single-axiom",
            Status::Inconsistent => "inconsistent",
            Status::ResourceExhausted => "resource-exhausted",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rejection {
    NotDerivable,
    ProjectionNotExact,
    Duplicate,
    TriviallyQ,
    Resource,
}

#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    /// Integer-primitive with positive leading coefficient under grevlex.
    pub polynomial: Polynomial,
    pub source_component: usize,
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejection: Option<Rejection>,
    /// Cofactors over the known axioms followed by the candidate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<MembershipCertificate>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub check_ms: u64,
    pub decompose_ms: u64,
    pub reason_ms: u64,
    pub precheck_ms: u64,
    pub total_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AbductionReport {
    pub system: String,
    pub hypothesis: String,
    pub dropped: Vec<String>,
    pub known: Vec<String>,
    pub status: Status,
    /// Certificate over the known axioms when already derivable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<MembershipCertificate>,
    pub components: Vec<ComponentSummary>,
    pub decomposition_exhausted: bool,
    pub candidates: Vec<Candidate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precheck: Option<Precheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub timings: Timings,
}

impl AbductionReport {
    pub fn accepted(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| c.accepted)
    }

    /// Accepted candidates as compact normalized strings.
    pub fn accepted_strings(&self) -> Vec<String> {
        let ord = MonomialOrder::grevlex(self.candidates.first().map(|c| c.polynomial.nvars()).unwrap_or(0));
        self.accepted().map(|c| crate::syntax::print_polynomial_compact(&c.polynomial, &ord)).collect()
    }
}

fn ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn known_polys(system: &AxiomSystem, known: &[String]) -> Result<Vec<Polynomial>> {
    known.iter().map(|n| system.axiom(n).cloned()).collect()
}

/// `⟨A_i : i ∈ known⟩ + ⟨Q⟩`, axioms in declaration order.
pub fn encode(system: &AxiomSystem, known: &[String], q: &str) -> Result<Ideal> {
    system.check_axiom_names(known.iter().map(String::as_str))?;
    let qp = system.hypothesis(q)?.clone();
    let gens: Vec<Polynomial> =
        system.axioms.iter().filter(|(n, _)| known.contains(n)).map(|(_, p)| p.clone()).chain([qp]).collect();
    Ideal::new(&system.vars, gens)
}

/// Whether `Q` follows from the known axioms, with a certificate.
pub fn check_derivable(
    system: &AxiomSystem,
    known: &[String],
    q: &str,
    limits: &Limits,
) -> Result<(bool, Option<MembershipCertificate>)> {
    let gens = known_polys(system, known)?;
    let qp = system.hypothesis(q)?;
    ideal_membership_with(qp, &gens, limits)
}

/// Tests a single generator `g` as the missing axiom.
///
/// Accepted when `Q ∈ ⟨known, g⟩` and the elimination ideal `E` onto the
/// variables of `Q` passes the `exactness` test. `encoded` is the
/// decomposition of `⟨known, Q⟩`. The comparison between candidates done by
/// [`Exactness::Nontrivial`] happens in the pipeline.
pub fn reason_candidate(
    known: &[Polynomial],
    g: &Polynomial,
    q: &Polynomial,
    encoded: &Decomposition,
    strategy: EliminationStrategy,
    exactness: Exactness,
    limits: &Limits,
) -> Result<(Option<Rejection>, Option<MembershipCertificate>)> {
    reason_projected(known, g, q, encoded, &Specialization::default(), strategy, exactness, limits).map(|r| (r.rejection, r.certificate))
}

struct Reasoned {
    rejection: Option<Rejection>,
    certificate: Option<MembershipCertificate>,
    /// Elimination ideal of an accepted candidate.
    projection: Vec<Polynomial>,
}

#[allow(clippy::too_many_arguments)]
fn reason_projected(
    known: &[Polynomial],
    g: &Polynomial,
    q: &Polynomial,
    encoded: &Decomposition,
    spec: &Specialization,
    strategy: EliminationStrategy,
    exactness: Exactness,
    limits: &Limits,
) -> Result<Reasoned> {
    let reject = |r| Reasoned { rejection: Some(r), certificate: None, projection: Vec::new() };
    let mut j: Vec<Polynomial> = known.to_vec();
    j.push(g.clone());
    if spec.refutes(&j, q, &[g], limits)? {
        return Ok(reject(Rejection::NotDerivable));
    }
    if !is_member_with(q, &j, limits)? {
        return Ok(reject(Rejection::NotDerivable));
    }
    let keep: Vec<usize> = q.support().into_iter().collect();
    let e = elimination_ideal_with(&j, &keep, strategy, limits)?;
    let exact = match exactness {
        Exactness::Encoded => {
            let targets: Vec<&Ideal> = encoded.components.iter().map(|c| &c.ideal).collect();
            let mut ok = true;
            for p in &e {
                if !vanishes_on(p, &targets, limits)? {
                    ok = false;
                    break;
                }
            }
            ok
        }
        Exactness::Nontrivial => {
            let vars = encoded.input.vars();
            let monomial = keep.iter().fold(Polynomial::one(vars), |acc, &v| &acc * &Polynomial::var(vars, v));
            !radical_membership(&monomial, &Ideal::new(vars, e.clone())?, limits)?
        }
    };
    if !exact {
        return Ok(reject(Rejection::ProjectionNotExact));
    }
    let (_, cert) = ideal_membership_with(q, &j, limits)?;
    Ok(Reasoned { rejection: None, certificate: cert, projection: e })
}

/// Tests membership after replacing an independent set of variables of the
/// known axioms by small primes. Substitution is a ring map, so a non-member
/// after it was a non-member before, and the smaller ring makes that test
/// cheap.
#[derive(Default)]
struct Specialization {
    known: Option<Ideal>,
}

impl Specialization {
    const VALUES: [i64; 12] = [11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

    fn of(known: &Ideal) -> Specialization {
        Specialization { known: Some(known.clone()) }
    }

    /// True when `q ∉ ⟨gens⟩` is shown after specialization. The variables
    /// of `avoid` stay free; others are released one at a time while the
    /// specialized system is inconsistent, since then it proves nothing.
    fn refutes(&self, gens: &[Polynomial], q: &Polynomial, avoid: &[&Polynomial], limits: &Limits) -> Result<bool> {
        let Some(known) = &self.known else { return Ok(false) };
        let vars = known.vars();
        let mut allowed = vec![true; vars.len()];
        for v in avoid.iter().flat_map(|p| p.support()) {
            allowed[v] = false;
        }
        let mut free = match independent_set_among(known, &allowed, limits) {
            Ok(f) => f,
            Err(Error::TrivialIdeal) => return Ok(false),
            Err(e) => return Err(e),
        };
        free.truncate(Self::VALUES.len());
        while !free.is_empty() {
            let apply = |p: &Polynomial| -> Result<Polynomial> {
                let mut out = p.clone();
                for (&v, c) in free.iter().zip(Self::VALUES) {
                    out = out.substitute(v, &Polynomial::constant(vars, Rational::from_integer(c.into())))?;
                }
                Ok(out)
            };
            let js = gens.iter().map(apply).collect::<Result<Vec<_>>>()?;
            if !is_member_with(&apply(q)?, &js, limits)? {
                return Ok(true);
            }
            if !is_member_with(&Polynomial::one(vars), &js, limits)? {
                return Ok(false);
            }
            free.pop();
        }
        Ok(false)
    }
}

/// `√⟨b⟩ ⊆ √⟨a⟩`.
fn radical_within(a: &Ideal, b: &[Polynomial], limits: &Limits) -> Result<bool> {
    for p in b {
        if !a.contains_poly(p, limits)? && !radical_membership(p, a, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Indices of accepted candidates whose projected variety is strictly
/// contained in that of another accepted candidate.
fn non_maximal(projections: &[(usize, Vec<Polynomial>)], system: &AxiomSystem, limits: &Limits) -> Result<Vec<usize>> {
    let ideals: Vec<Ideal> =
        projections.iter().map(|(_, e)| Ideal::new(&system.vars, e.clone())).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (a, (ia, _)) in projections.iter().enumerate() {
        for (b, (_, eb)) in projections.iter().enumerate() {
            if a == b || !radical_within(&ideals[a], eb, limits)? {
                continue;
            }
            if !radical_within(&ideals[b], &projections[a].1, limits)? {
                out.push(*ia);
                break;
            }
        }
    }
    Ok(out)
}

/// `p` vanishes on every listed component: membership is sufficient, and a
/// failure is confirmed against the component radical.
fn vanishes_on(p: &Polynomial, components: &[&Ideal], limits: &Limits) -> Result<bool> {
    for c in components {
        if c.contains_poly(p, limits)? {
            continue;
        }
        if !radical_membership(p, c, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One run of the pipeline with the axioms in `dropped` removed.
pub fn abduce_single(system: &AxiomSystem, dropped: &[String], q: &str, opts: &AbduceOptions) -> Result<AbductionReport> {
    let deadline = opts.timeout.map(|t| Instant::now() + t);
    abduce_until(system, dropped, q, opts, deadline)
}

fn abduce_until(
    system: &AxiomSystem,
    dropped: &[String],
    q: &str,
    opts: &AbduceOptions,
    deadline: Option<Instant>,
) -> Result<AbductionReport> {
    let start = Instant::now();
    system.check_axiom_names(dropped.iter().map(String::as_str))?;
    let qp = system.hypothesis(q)?.clone();
    let known = system.known_except(dropped);
    let known_p = known_polys(system, &known)?;
    let limits = opts.limits_until(deadline);
    let dopts = DecomposeOptions { limits, ..opts.decompose };

    let mut report = AbductionReport {
        system: String::new(),
        hypothesis: q.to_string(),
        dropped: dropped.to_vec(),
        known: known.clone(),
        status: Status::ResourceExhausted,
        certificate: None,
        components: Vec::new(),
        decomposition_exhausted: true,
        candidates: Vec::new(),
        precheck: None,
        note: None,
        timings: Timings::default(),
    };
    let exhausted = |mut r: AbductionReport, e: Error| -> Result<AbductionReport> {
        if !e.is_resource_limit() {
            return Err(e);
        }
        r.status = Status::ResourceExhausted;
        r.note = Some(e.to_string());
        r.timings.total_ms = ms(start);
        Ok(r)
    };

    // Derivability and consistency.
    let t = Instant::now();
    let known_ideal = Ideal::new(&system.vars, known_p.clone())?;
    match known_ideal.is_unit(&limits) {
        Ok(true) => {
            report.status = Status::Inconsistent;
            report.note = Some("known axioms generate the whole ring".into());
            report.timings.check_ms = ms(t);
            report.timings.total_ms = ms(start);
            return Ok(report);
        }
        Ok(false) => {}
        Err(e) => return exhausted(report, e),
    }
    match ideal_membership_with(&qp, &known_p, &limits) {
        Ok((true, cert)) => {
            report.status = Status::AlreadyDerivable;
            report.certificate = cert;
            report.timings.check_ms = ms(t);
            report.timings.total_ms = ms(start);
            return Ok(report);
        }
        Ok((false, _)) => {}
        Err(e) => return exhausted(report, e),
    }
    let encoded = encode(system, &known, q)?;
    match encoded.is_unit(&limits) {
        Ok(true) => {
            report.status = Status::Inconsistent;
            report.note = Some("axioms together with the hypothesis generate the whole ring".into());
            report.timings.check_ms = ms(t);
            report.timings.total_ms = ms(start);
            return Ok(report);
        }
        Ok(false) => {}
        Err(e) => return exhausted(report, e),
    }
    report.timings.check_ms = ms(t);

    // Decompose.
    let t = Instant::now();
    let dec = match minimal_primes(&encoded, &dopts) {
        Ok(d) => d,
        Err(e) => {
            report.timings.decompose_ms = ms(t);
            return exhausted(report, e);
        }
    };
    report.timings.decompose_ms = ms(t);
    report.decomposition_exhausted = dec.exhausted;
    report.components = dec.components.iter().map(ComponentSummary::of).collect();

    // Reason.
    let t = Instant::now();
    let mut pool: Vec<Candidate> = Vec::new();
    for (ci, c) in dec.components.iter().enumerate() {
        for g in component_generators(c) {
            let rejection = if g.is_associate(&qp) {
                Some(Rejection::TriviallyQ)
            } else if pool.iter().any(|p| p.polynomial == g) {
                Some(Rejection::Duplicate)
            } else {
                None
            };
            pool.push(Candidate { polynomial: g, source_component: ci, accepted: false, rejection, certificate: None });
        }
    }
    let strategy = opts.elimination;
    let spec = Specialization::of(&known_ideal);
    let run = |c: &Candidate| -> Reasoned {
        if let Some(r) = c.rejection {
            return Reasoned { rejection: Some(r), certificate: None, projection: Vec::new() };
        }
        match reason_projected(&known_p, &c.polynomial, &qp, &dec, &spec, strategy, opts.exactness, &limits) {
            Ok(r) => r,
            Err(_) => Reasoned { rejection: Some(Rejection::Resource), certificate: None, projection: Vec::new() },
        }
    };
    let outcomes: Vec<Reasoned> =
        if opts.parallel { pool.par_iter().map(run).collect() } else { pool.iter().map(run).collect() };
    let mut resource_hit = false;
    let mut projections = Vec::new();
    for (i, (c, r)) in pool.iter_mut().zip(outcomes).enumerate() {
        resource_hit |= r.rejection == Some(Rejection::Resource);
        c.accepted = r.rejection.is_none();
        c.rejection = r.rejection;
        c.certificate = r.certificate;
        if c.accepted {
            projections.push((i, r.projection));
        }
    }
    // Among the survivors keep those that constrain the variables of Q least.
    let ranked = if opts.exactness == Exactness::Nontrivial { non_maximal(&projections, system, &limits) } else { Ok(Vec::new()) };
    match ranked {
        Ok(drop) => {
            for i in drop {
                pool[i].accepted = false;
                pool[i].rejection = Some(Rejection::ProjectionNotExact);
                pool[i].certificate = None;
            }
        }
        Err(e) if e.is_resource_limit() => resource_hit = true,
        Err(e) => return Err(e),
    }
    report.candidates = pool;
    report.timings.reason_ms = ms(t);

    report.status = if report.candidates.iter().any(|c| c.accepted) {
        Status::CandidatesFound
    } else if resource_hit {
        report.note = Some("some candidates ran out of resources".into());
        Status::ResourceExhausted
    } else {
        Status::NoSingleAxiom
    };

    if opts.precheck {
        let t = Instant::now();
        report.precheck = recoverability_precheck(&known_ideal, &qp, &dopts).ok();
        report.timings.precheck_ms = ms(t);
    }
    report.timings.total_ms = ms(start);
    Ok(report)
}

/// One report per drop set, in input order; a failing case never aborts
/// the sweep.
pub fn abduce_sweep(
    system: &AxiomSystem,
    drop_sets: &[Vec<String>],
    q: &str,
    opts: &AbduceOptions,
    sweep_timeout: Option<Duration>,
) -> Vec<Result<AbductionReport>> {
    let sweep_deadline = sweep_timeout.map(|t| Instant::now() + t);
    let one = |d: &Vec<String>| {
        let own = opts.timeout.map(|t| Instant::now() + t);
        let deadline = match (own, sweep_deadline) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        abduce_until(system, d, q, opts, deadline)
    };
    if opts.parallel {
        drop_sets.par_iter().map(one).collect()
    } else {
        drop_sets.iter().map(one).collect()
    }
}

/// Result of removing each axiom in turn from an inconsistent system.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub base: AbductionReport,
    pub removals: Vec<AbductionReport>,
}

impl ScanReport {
    /// Axioms whose removal leaves a consistent system.
    pub fn consistent_removals(&self) -> Vec<&str> {
        self.removals
            .iter()
            .filter(|r| r.status != Status::Inconsistent)
            .filter_map(|r| r.dropped.first().map(String::as_str))
            .collect()
    }
}

/// Runs the full system, then every single-axiom removal.
pub fn scan_inconsistent(system: &AxiomSystem, q: &str, opts: &AbduceOptions) -> Result<ScanReport> {
    let base = abduce_single(system, &[], q, opts)?;
    let drops: Vec<Vec<String>> = system.axiom_names().map(|n| vec![n.to_string()]).collect();
    let removals = abduce_sweep(system, &drops, q, opts, Some(DEFAULT_SWEEP_TIMEOUT)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ScanReport { base, removals })
}
