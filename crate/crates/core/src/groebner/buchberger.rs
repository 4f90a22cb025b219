use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::internal::{content, make_primitive, max_degree, scale_q, Ctx, Mon, QPoly, ZPoly};
use crate::arith::Rational;
use crate::error::{Error, Resource, Result};

/// Budgets for a single Gröbner computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest total degree allowed for a new basis element.
    pub max_degree: u32,
    pub max_basis: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 40, max_basis: 5000, deadline: None }
    }
}

impl Limits {
    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    pub(crate) fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::ResourceLimit(Resource::Deadline)),
            _ => Ok(()),
        }
    }
}

/// Representation of a polynomial as a combination of the original inputs.
pub(crate) type Rep = Vec<QPoly>;

fn rep_combine(ctx: &Ctx, a: &BigInt, rp: &Rep, c: &BigInt, m: &Mon, rg: &Rep) -> Rep {
    let (a, c) = (Rational::from_integer(a.clone()), Rational::from_integer(c.clone()));
    rp.iter().zip(rg).map(|(p, g)| ctx.axpy(&a, p, &c, m, g)).collect()
}

fn rep_scale(rep: &mut Rep, s: &Rational) {
    if s.is_one() {
        return;
    }
    for p in rep.iter_mut() {
        *p = scale_q(p, s);
    }
}

/// Fraction-free reduction of integer polynomials.
pub(crate) struct Reducer<'a> {
    pub ctx: &'a Ctx,
    pub limits: &'a Limits,
    steps: usize,
}

impl<'a> Reducer<'a> {
    pub fn new(ctx: &'a Ctx, limits: &'a Limits) -> Self {
        Reducer { ctx, limits, steps: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps.is_multiple_of(64) {
            self.limits.check_deadline()?;
        }
        Ok(())
    }

    /// Reduces `f` by the basis elements listed in `active` (first divisor
    /// wins). With `full` the tail is reduced too. The result is a nonzero
    /// integer multiple of the true remainder.
    pub fn reduce(
        &mut self,
        f: ZPoly,
        mut rep: Option<Rep>,
        polys: &[ZPoly],
        reps: Option<&[Rep]>,
        active: &[usize],
        full: bool,
    ) -> Result<(ZPoly, Option<Rep>)> {
        let ctx = self.ctx;
        let mut r: ZPoly = Vec::new();
        let mut p = f;
        let mut start = 0usize;
        let mut scaled_since_content = 0u32;
        while start < p.len() {
            let lm = &p[start].0;
            let divisor = active.iter().copied().find(|&i| polys[i][0].0.divides(lm));
            let Some(gi) = divisor else {
                if !full {
                    break;
                }
                r.push(p[start].clone());
                start += 1;
                continue;
            };
            self.tick()?;
            let g = &polys[gi];
            let (ga, pc) = (&g[0].1, &p[start].1);
            let d = ga.gcd(pc);
            let (mut a, mut c) = (ga / &d, pc / &d);
            if a.is_negative() {
                a = -a;
                c = -c;
            }
            let m = lm.div(&g[0].0);
            let next = ctx.axpy(&a, &p[start + 1..], &c, &m, &g[1..]);
            if let (Some(rp), Some(reps)) = (rep.as_mut(), reps) {
                *rp = rep_combine(ctx, &a, rp, &c, &m, &reps[gi]);
            }
            if !a.is_one() {
                for t in r.iter_mut() {
                    t.1 = &t.1 * &a;
                }
                scaled_since_content += 1;
            }
            p = next;
            start = 0;
            if scaled_since_content >= 8 {
                scaled_since_content = 0;
                let g = content(&r).gcd(&content(&p));
                if !g.is_zero() && !g.is_one() {
                    for t in r.iter_mut().chain(p.iter_mut()) {
                        t.1 = &t.1 / &g;
                    }
                    if let Some(rp) = rep.as_mut() {
                        rep_scale(rp, &Rational::new(BigInt::one(), g));
                    }
                }
            }
        }
        r.extend(p.drain(start..));
        Ok((r, rep))
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mon,
    seq: u64,
}

/// Output of the engine: the reduced basis in integer-primitive form sorted
/// by ascending leading monomial, and optionally each element's
/// representation over the inputs, scaled so that it represents the monic
/// element.
pub(crate) struct RawBasis {
    pub polys: Vec<ZPoly>,
    pub reps: Option<Vec<Rep>>,
}

pub(crate) fn groebner(ctx: &Ctx, inputs: Vec<ZPoly>, track: bool, limits: &Limits) -> Result<RawBasis> {
    let n_in = inputs.len();
    let mut engine = Engine { ctx, limits, polys: Vec::new(), reps: track.then(Vec::new), active: Vec::new(), pairs: Vec::new(), seq: 0 };

    let mut order: Vec<usize> = (0..n_in).filter(|&i| !inputs[i].is_empty()).collect();
    order.sort_by(|&a, &b| ctx.cmp(&inputs[a][0].0, &inputs[b][0].0).then(a.cmp(&b)));
    for idx in order {
        let rep = track.then(|| {
            let mut r: Rep = vec![Vec::new(); n_in];
            r[idx] = vec![(Mon::one(ctx.nvars()), Rational::one())];
            r
        });
        if engine.insert(inputs[idx].clone(), rep)? {
            return engine.finish();
        }
    }

    while let Some(k) = engine.select() {
        let pair = engine.pairs.swap_remove(k);
        limits.check_deadline()?;
        // Most pairs reduce to zero, so representations are only built for
        // those that do not.
        if engine.reps.is_some() && engine.reduces_to_zero(&pair)? {
            continue;
        }
        let (s, srep) = engine.spoly(&pair);
        if s.is_empty() {
            continue;
        }
        if engine.insert(s, srep)? {
            break;
        }
    }
    engine.finish()
}

struct Engine<'a> {
    ctx: &'a Ctx,
    limits: &'a Limits,
    polys: Vec<ZPoly>,
    reps: Option<Vec<Rep>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    seq: u64,
}

impl Engine<'_> {
    fn select(&self) -> Option<usize> {
        self.pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.lcm.deg.cmp(&b.lcm.deg).then(a.seq.cmp(&b.seq)))
            .map(|(k, _)| k)
    }

    fn reduces_to_zero(&self, pair: &Pair) -> Result<bool> {
        let ctx = self.ctx;
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let d = f[0].1.gcd(&g[0].1);
        let (a, c) = (&g[0].1 / &d, &f[0].1 / &d);
        let fs = ctx.shift(&BigInt::one(), &pair.lcm.div(&f[0].0), &f[1..]);
        let s = ctx.axpy(&a, &fs, &c, &pair.lcm.div(&g[0].0), &g[1..]);
        let mut reducer = Reducer::new(ctx, self.limits);
        Ok(reducer.reduce(s, None, &self.polys, None, &self.active, false)?.0.is_empty())
    }

    fn spoly(&self, pair: &Pair) -> (ZPoly, Option<Rep>) {
        let ctx = self.ctx;
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let d = f[0].1.gcd(&g[0].1);
        let (mut a, mut c) = (&g[0].1 / &d, &f[0].1 / &d);
        if a.is_negative() {
            a = -a;
            c = -c;
        }
        let mf = pair.lcm.div(&f[0].0);
        let mg = pair.lcm.div(&g[0].0);
        let fs = ctx.shift(&BigInt::one(), &mf, &f[1..]);
        let s = ctx.axpy(&a, &fs, &c, &mg, &g[1..]);
        let rep = self.reps.as_ref().map(|reps| {
            let one = Rational::one();
            let r_f: Rep = reps[pair.i].iter().map(|p| ctx.shift(&one, &mf, p)).collect();
            rep_combine(ctx, &a, &r_f, &c, &mg, &reps[pair.j])
        });
        (s, rep)
    }

    /// Reduces `f`, adds it to the basis and updates the pair set. Returns
    /// true once the basis contains a constant.
    fn insert(&mut self, f: ZPoly, rep: Option<Rep>) -> Result<bool> {
        let mut reducer = Reducer::new(self.ctx, self.limits);
        let (mut h, mut hrep) = reducer.reduce(f, rep, &self.polys, self.reps.as_deref(), &self.active, true)?;
        if h.is_empty() {
            return Ok(false);
        }
        let s = make_primitive(&mut h);
        if let Some(r) = hrep.as_mut() {
            rep_scale(r, &s);
        }
        if max_degree(&h) > self.limits.max_degree {
            return Err(Error::ResourceLimit(Resource::Degree));
        }
        if self.active.len() >= self.limits.max_basis {
            return Err(Error::ResourceLimit(Resource::BasisSize));
        }
        let idx = self.polys.len();
        let is_constant = h[0].0.is_one();
        self.polys.push(h);
        if let (Some(reps), Some(r)) = (self.reps.as_mut(), hrep) {
            reps.push(r);
        }
        if is_constant {
            self.active = vec![idx];
            self.pairs.clear();
            return Ok(true);
        }
        self.update(idx);
        Ok(false)
    }

    /// Gebauer–Möller installation of a new element `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.polys[h][0].0.clone();
        let cands: Vec<(usize, Mon)> = self.active.iter().map(|&g| (g, lm_h.lcm(&self.polys[g][0].0))).collect();
        let mut kept: Vec<usize> = Vec::new();
        for idx in 0..cands.len() {
            let (g, ref l) = cands[idx];
            if lm_h.coprime(&self.polys[g][0].0) {
                kept.push(idx);
                continue;
            }
            let dominated = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(l)) || kept.iter().any(|&k| cands[k].1.divides(l));
            if !dominated {
                kept.push(idx);
            }
        }
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !lm_h.divides(&p.lcm) {
                return true;
            }
            let li = lm_h.lcm(&polys[p.i][0].0);
            let lj = lm_h.lcm(&polys[p.j][0].0);
            li == p.lcm || lj == p.lcm
        });
        for k in kept {
            let (g, ref l) = cands[k];
            if lm_h.coprime(&self.polys[g][0].0) {
                continue;
            }
            self.seq += 1;
            self.pairs.push(Pair { i: g, j: h, lcm: l.clone(), seq: self.seq });
        }
        let polys = &self.polys;
        self.active.retain(|&g| !lm_h.divides(&polys[g][0].0));
        self.active.push(h);
    }

    fn finish(self) -> Result<RawBasis> {
        let ctx = self.ctx;
        let mut active = self.active.clone();
        // Minimal basis: drop elements whose leading monomial is divisible
        // by another's (keeping the earliest among equals).
        let lms: Vec<Mon> = active.iter().map(|&i| self.polys[i][0].0.clone()).collect();
        let mut keep = vec![true; active.len()];
        for a in 0..active.len() {
            for b in 0..active.len() {
                if a != b && keep[b] && lms[b].divides(&lms[a]) && (lms[a] != lms[b] || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        active = active.into_iter().zip(keep).filter(|(_, k)| *k).map(|(i, _)| i).collect();
        active.sort_by(|&a, &b| ctx.cmp(&self.polys[a][0].0, &self.polys[b][0].0));

        let mut reducer = Reducer::new(ctx, self.limits);
        let mut out_polys = Vec::with_capacity(active.len());
        let mut out_reps = self.reps.as_ref().map(|_| Vec::with_capacity(active.len()));
        for (pos, &i) in active.iter().enumerate() {
            let others: Vec<usize> = active.iter().enumerate().filter(|(q, _)| *q != pos).map(|(_, &j)| j).collect();
            // The leading term survives: no other leading monomial of a
            // minimal basis divides it.
            let rep_i = self.reps.as_ref().map(|r| r[i].clone());
            let (mut g, mut grep) = reducer.reduce(self.polys[i].clone(), rep_i, &self.polys, self.reps.as_deref(), &others, true)?;
            let s = make_primitive(&mut g);
            if let Some(r) = grep.as_mut() {
                rep_scale(r, &s);
                rep_scale(r, &Rational::new(BigInt::one(), g[0].1.clone()));
            }
            out_polys.push(g);
            if let (Some(v), Some(r)) = (out_reps.as_mut(), grep) {
                v.push(r);
            }
        }
        Ok(RawBasis { polys: out_polys, reps: out_reps })
    }
}
