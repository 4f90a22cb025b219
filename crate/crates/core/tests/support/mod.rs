//! Seeded property suites shared by the integration tests and the
//! acceptance runner. Each suite returns the first violated property.

#![allow(dead_code)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;

use noether::abduce::AxiomSystem;
use noether::decompose::{minimal_primes, DecomposeOptions};
use noether::factor::factor;
use noether::groebner::{
    buchberger, elimination_ideal_with, ideal_membership, is_member_with, normal_form, EliminationStrategy, Limits,
};
use noether::idealops::{ideal_contains, radical_membership, Ideal};
use noether::syntax::{parse_polynomial, parse_system, print_polynomial};
use noether::arith::rat;
use noether::{Monomial, MonomialOrder, Polynomial, VarTable};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<String, String>;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus() -> Vec<(String, AxiomSystem)> {
    let mut paths: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .flatten()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "axioms"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let sys = parse_system(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display())).system;
            (name, sys)
        })
        .collect()
}

pub fn corpus_polynomials() -> Vec<(String, Polynomial)> {
    let mut out = Vec::new();
    for (name, sys) in corpus() {
        for (n, p) in sys.axioms.iter().chain(&sys.hypotheses) {
            out.push((format!("{name}.{n}"), p.clone()));
        }
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &Arc<VarTable>, max_deg: u32, max_terms: usize) -> Polynomial {
    let n = vars.len();
    loop {
        let terms = rng.gen_range(1..=max_terms);
        let p = Polynomial::from_terms(
            vars,
            (0..terms).map(|_| {
                let deg = rng.gen_range(0..=max_deg);
                let mut e = vec![0; n];
                for _ in 0..deg {
                    e[rng.gen_range(0..n)] += 1;
                }
                let c = loop {
                    let c: i64 = rng.gen_range(-3..=3);
                    if c != 0 {
                        break c;
                    }
                };
                (Monomial::from_exponents(&e), rat(c))
            }),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_linear(rng: &mut ChaCha8Rng, vars: &Arc<VarTable>) -> Polynomial {
    loop {
        let mut terms = Vec::new();
        for v in 0..vars.len() {
            let c: i64 = rng.gen_range(-2..=2);
            terms.push((Monomial::var(vars.len(), v), rat(c)));
        }
        terms.push((Monomial::one(vars.len()), rat(rng.gen_range(-2..=2))));
        let p = Polynomial::from_terms(vars, terms);
        if p.total_degree() == 1 {
            return p;
        }
    }
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Polynomial {
    let (mf, cf) = f.leading_term(ord).unwrap();
    let (mg, cg) = g.leading_term(ord).unwrap();
    let l = mf.lcm(&mg);
    let a = f.mul_monomial(&l.div(&mf).unwrap(), &(rat(1) / cf));
    let b = g.mul_monomial(&l.div(&mg).unwrap(), &(rat(1) / cg));
    &a - &b
}

/// 200 random ideals in three variables, generators of degree at most 3:
/// every S-polynomial of the reduced basis reduces to zero, the basis does
/// not depend on generator order, and the basis is {1} exactly when 1 is a
/// member.
pub fn groebner_suite(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = VarTable::new(["x", "y", "z"]).unwrap();
    let ord = MonomialOrder::grevlex(3);
    let mut units = 0;
    for case in 0..200 {
        let k = rng.gen_range(1..=3);
        let gens: Vec<_> = (0..k).map(|_| random_poly(&mut rng, &vars, 3, 4)).collect();
        let gb = buchberger(&gens, &ord).map_err(|e| format!("case {case}: {e}"))?;
        let basis = gb.generators();
        for g in &gens {
            if !normal_form(g, basis, &ord).unwrap().0.is_zero() {
                return Err(format!("case {case}: input {g} does not reduce to zero"));
            }
        }
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = s_polynomial(&basis[i], &basis[j], &ord);
                if !normal_form(&s, basis, &ord).unwrap().0.is_zero() {
                    return Err(format!("case {case}: S({}, {}) has a nonzero remainder", basis[i], basis[j]));
                }
            }
        }
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        shuffled.reverse();
        let gb2 = buchberger(&shuffled, &ord).unwrap();
        if gb2.generators() != basis {
            return Err(format!("case {case}: basis depends on generator order"));
        }
        let one = Polynomial::one(&vars);
        let (member, _) = ideal_membership(&one, &gens).unwrap();
        if member != gb.is_unit() {
            return Err(format!("case {case}: unit basis {} but 1-membership {member}", gb.is_unit()));
        }
        units += gb.is_unit() as usize;
    }
    Ok(format!("200 ideals, {units} unit"))
}

/// 100 systems x - p(z,w), y - q(z,w), h(z,w,x,y). Eliminating x and y must
/// give the ideal of h(p, q, z, w), under both elimination orders.
pub fn elimination_suite(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = VarTable::new(["z", "w", "x", "y"]).unwrap();
    let sub = VarTable::new(["z", "w"]).unwrap();
    let limits = Limits::default();
    for case in 0..100 {
        let p = random_poly(&mut rng, &sub, 2, 3).embed(&vars).unwrap();
        let q = random_poly(&mut rng, &sub, 2, 3).embed(&vars).unwrap();
        let h = random_poly(&mut rng, &vars, 2, 4);
        let x = Polynomial::var(&vars, 2);
        let y = Polynomial::var(&vars, 3);
        let gens = vec![&x - &p, &y - &q, h.clone()];
        let oracle = h.substitute(2, &p).unwrap().substitute(3, &q).unwrap();
        for strategy in [EliminationStrategy::Block, EliminationStrategy::Lex] {
            let elim = elimination_ideal_with(&gens, &[0, 1], strategy, &limits).map_err(|e| format!("case {case}: {e}"))?;
            let ok_down = elim.iter().all(|g| is_member_with(g, std::slice::from_ref(&oracle), &limits).unwrap());
            let ok_up = is_member_with(&oracle, &elim, &limits).unwrap();
            if !ok_down || !ok_up {
                return Err(format!("case {case} ({strategy:?}): elimination of {gens:?} is {elim:?}, expected <{oracle}>"));
            }
        }
    }
    Ok("100 systems, both orders".into())
}

/// Containment, covering and irredundancy of a decomposition.
pub fn check_decomposition(ideal: &Ideal, opts: &DecomposeOptions, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let limits = opts.limits;
    let dec = minimal_primes(ideal, opts).map_err(|e| e.to_string())?;
    let comps = &dec.components;
    if comps.is_empty() {
        return if ideal.is_unit(&limits).unwrap() { Ok(0) } else { Err("no components for a proper ideal".into()) };
    }
    for (i, c) in comps.iter().enumerate() {
        for g in ideal.generators() {
            if !c.ideal.contains_poly(g, &limits).unwrap() {
                return Err(format!("component {i} misses generator {g}"));
            }
        }
    }
    for i in 0..comps.len() {
        for j in 0..comps.len() {
            if i != j && ideal_contains(&comps[i].ideal, &comps[j].ideal, &limits).unwrap() {
                return Err(format!("component {i} contains component {j}"));
            }
        }
    }
    let sizes: Vec<usize> = comps.iter().map(|c| c.ideal.generators().len()).collect();
    let total: f64 = sizes.iter().map(|&s| s as f64).product();
    let tuples: Vec<Vec<usize>> = if total <= 256.0 {
        let mut all = vec![Vec::new()];
        for &s in &sizes {
            all = all.into_iter().flat_map(|t| (0..s).map(move |k| [t.clone(), vec![k]].concat())).collect();
        }
        all
    } else {
        (0..256).map(|_| sizes.iter().map(|&s| rng.gen_range(0..s)).collect()).collect()
    };
    for t in &tuples {
        let mut prod = Polynomial::one(ideal.vars());
        for (c, &k) in comps.iter().zip(t) {
            prod = &prod * &c.ideal.generators()[k];
        }
        if !radical_membership(&prod, ideal, &limits).unwrap() {
            return Err(format!("product over tuple {t:?} is not in the radical"));
        }
    }
    Ok(comps.len())
}

/// Decomposition invariants on every corpus system, with and without its
/// hypotheses, and on 50 ideals generated by products of linear forms.
pub fn decomposition_suite(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = DecomposeOptions::default();
    let mut ideals = 0;
    for (name, sys) in corpus() {
        let axioms: Vec<_> = sys.axioms.iter().map(|(_, p)| p.clone()).collect();
        let mut inputs = vec![("axioms".to_string(), axioms.clone())];
        for (h, q) in &sys.hypotheses {
            inputs.push((format!("axioms+{h}"), [axioms.clone(), vec![q.clone()]].concat()));
        }
        for (label, gens) in inputs {
            let ideal = Ideal::new(&sys.vars, gens).unwrap();
            check_decomposition(&ideal, &opts, &mut rng).map_err(|e| format!("{name} {label}: {e}"))?;
            ideals += 1;
        }
    }
    let vars = VarTable::new(["x", "y", "z"]).unwrap();
    for case in 0..50 {
        let k = rng.gen_range(1..=3);
        let gens: Vec<_> = (0..k)
            .map(|_| {
                let m = rng.gen_range(1..=3);
                (0..m).fold(Polynomial::one(&vars), |acc, _| &acc * &random_linear(&mut rng, &vars))
            })
            .collect();
        let ideal = Ideal::new(&vars, gens.clone()).unwrap();
        check_decomposition(&ideal, &opts, &mut rng).map_err(|e| format!("linear case {case} {gens:?}: {e}"))?;
        ideals += 1;
    }
    Ok(format!("{ideals} ideals"))
}

/// unit * prod factor^mult equals the input on the corpus and on 1000 random
/// products of small factors.
pub fn factor_suite(seed: u64) -> Outcome {
    for (name, p) in corpus_polynomials() {
        let f = factor(&p);
        if f.expand() != p {
            return Err(format!("{name}: factorization does not expand back"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = VarTable::new(["x", "y", "z"]).unwrap();
    let mut split = 0;
    for case in 0..1000 {
        let k = rng.gen_range(1..=3);
        let mut p = Polynomial::constant(&vars, rat(rng.gen_range(1..=6)));
        for _ in 0..k {
            p = &p * &random_poly(&mut rng, &vars, 2, 3);
        }
        let f = factor(&p);
        if f.expand() != p {
            return Err(format!("random case {case}: factorization of {p} does not expand back"));
        }
        split += (f.factors.len() > 1) as usize;
    }
    Ok(format!("corpus plus 1000 products, {split} split"))
}

const FUZZ_TOKENS: &[&str] = &[
    "x", "y", "z", "w", "dt", "q", "1", "0", "2", "17", "3/4", "1/0", "+", "-", "*", "^", "(", ")", " ", "^-1", "__t", "#", "@", ".",
    "99999999999999999999", "^100000", "x1",
];

/// print(parse(t)) reparses to the same polynomial on the corpus, and 10,000
/// random token streams never panic and fail with a positioned error.
pub fn parser_suite(seed: u64) -> Outcome {
    for (name, sys) in corpus() {
        let ord = MonomialOrder::grevlex(sys.vars.len());
        for (n, p) in sys.axioms.iter().chain(&sys.hypotheses) {
            let printed = print_polynomial(p, &ord);
            let back = parse_polynomial(&printed, &sys.vars).map_err(|e| format!("{name}.{n}: {printed}: {e}"))?;
            if &back != p || print_polynomial(&back, &ord) != printed {
                return Err(format!("{name}.{n}: round trip changed {printed}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = VarTable::new(["x", "y", "z", "w", "dt"]).unwrap();
    let mut accepted = 0;
    for case in 0..10_000 {
        let len = rng.gen_range(0..12);
        let text: String = (0..len).map(|_| *FUZZ_TOKENS.choose(&mut rng).unwrap()).collect();
        let r = catch_unwind(AssertUnwindSafe(|| parse_polynomial(&text, &vars)));
        match r {
            Err(_) => return Err(format!("case {case}: parser panicked on {text:?}")),
            Ok(Ok(p)) => {
                accepted += 1;
                let ord = MonomialOrder::grevlex(vars.len());
                let again = parse_polynomial(&print_polynomial(&p, &ord), &vars);
                if !matches!(&again, Ok(q) if *q == p) {
                    return Err(format!("case {case}: {text:?} does not round trip"));
                }
            }
            Ok(Err(e)) => {
                if e.span.line == 0 || e.span.column == 0 {
                    return Err(format!("case {case}: unpositioned error for {text:?}"));
                }
            }
        }
    }
    Ok(format!("10000 fuzz inputs, {accepted} parsed"))
}
