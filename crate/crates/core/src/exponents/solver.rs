use serde::{Deserialize, Serialize};

use super::gamma::{branches, Gamma, Term};
use super::spec::{AuxSpec, ExponentTriple, RateTuple};
use crate::error::{Error, Result};
use crate::measures::{compose, Channel};
use crate::types::compositions;

/// Tuning of the minimisation over V.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentOptions {
    /// Step of the per-row simplex grid.
    pub grid_step: f64,
    /// Smallest mass-transfer step of the coordinate-descent refinement.
    pub refine_tol: f64,
    /// Target Frank-Wolfe gap of the inner convex solves.
    pub dual_tol: f64,
    pub max_inner_iters: usize,
}

impl Default for ExponentOptions {
    fn default() -> Self {
        ExponentOptions { grid_step: 1.0 / 32.0, refine_tol: 1e-6, dual_tol: 1e-8, max_inner_iters: 20_000 }
    }
}

/// Result of one exponent minimisation. `value` is the smallest objective found at an
/// evaluated V, so it bounds the true minimum from above; `lower_bound` is a certified
/// lower bound from the convex dual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentBound {
    pub gamma: Gamma,
    pub value: f64,
    pub lower_bound: f64,
    pub tolerance: f64,
    /// Best value among grid points, before refinement.
    pub grid_value: f64,
    pub minimizer: Channel,
}

/// The three exponent bounds with their minimisers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentReport {
    pub exponents: ExponentTriple,
    pub bob: ExponentBound,
    pub eve: ExponentBound,
    pub secrecy: ExponentBound,
}

const TINY: f64 = 1e-300;

type Rows = Vec<Vec<f64>>;

struct Stats {
    d: f64,
    a: f64,
    b: f64,
    /// ln P_u(y)
    lpu: Rows,
    /// ln P(y)
    lp: Vec<f64>,
}

struct Problem {
    nxt: usize,
    nout: usize,
    q0: Vec<f64>,
    q1: Rows,
    q: Vec<f64>,
    w0: Rows,
    lw0: Rows,
    support: Vec<Vec<usize>>,
    active: Vec<usize>,
}

impl Problem {
    fn new(w0: &Channel, aux: &AuxSpec) -> Self {
        let q = aux.joint().probs().to_vec();
        let rows = w0.rows().to_vec();
        let support: Vec<Vec<usize>> =
            rows.iter().map(|r| r.iter().enumerate().filter(|(_, &p)| p > 0.0).map(|(y, _)| y).collect()).collect();
        let active = (0..rows.len()).filter(|&r| q[r] > 0.0 && support[r].len() > 1).collect();
        Problem {
            nxt: aux.xt_alphabet().len(),
            nout: w0.output().len(),
            q0: aux.q0().probs().to_vec(),
            q1: aux.q1().rows().to_vec(),
            q,
            lw0: rows.iter().map(|r| r.iter().map(|&p| p.max(TINY).ln()).collect()).collect(),
            w0: rows,
            support,
            active,
        }
    }

    fn stats(&self, v: &Rows) -> Stats {
        let nu = self.q0.len();
        let mut pu = vec![vec![0.0; self.nout]; nu];
        for (u, row) in pu.iter_mut().enumerate() {
            for x in 0..self.nxt {
                let w = self.q1[u][x];
                for (p, &vy) in row.iter_mut().zip(&v[u * self.nxt + x]) {
                    *p += w * vy;
                }
            }
        }
        let mut p = vec![0.0; self.nout];
        for (u, row) in pu.iter().enumerate() {
            for (acc, &x) in p.iter_mut().zip(row) {
                *acc += self.q0[u] * x;
            }
        }
        let (mut d, mut a, mut b) = (0.0, 0.0, 0.0);
        for (r, row) in v.iter().enumerate() {
            let qr = self.q[r];
            if qr == 0.0 {
                continue;
            }
            let u = r / self.nxt;
            for &y in &self.support[r] {
                let vy = row[y];
                if vy > 0.0 {
                    d += qr * vy * (vy / self.w0[r][y]).ln();
                    a += qr * vy * (vy / pu[u][y]).ln();
                }
            }
        }
        for (u, row) in pu.iter().enumerate() {
            for (y, &x) in row.iter().enumerate() {
                if x > 0.0 && self.q0[u] > 0.0 {
                    b += self.q0[u] * x * (x / p[y]).ln();
                }
            }
        }
        let lpu = pu.iter().map(|r| r.iter().map(|&x| x.max(TINY).ln()).collect()).collect();
        let lp = p.iter().map(|&x| x.max(TINY).ln()).collect();
        Stats { d: d.max(0.0), a: a.max(0.0), b: b.max(0.0), lpu, lp }
    }

    fn objective(&self, v: &Rows, brs: &[(Term, f64)]) -> f64 {
        let s = self.stats(v);
        s.d + brs.iter().map(|&(t, c)| (t.eval(s.a, s.b) + c).max(0.0)).fold(f64::INFINITY, f64::min)
    }

    fn lagrangian(&self, s: &Stats, term: Term, c: f64, theta: f64) -> f64 {
        s.d + theta * (term.eval(s.a, s.b) + c)
    }

    /// Per-row gradient of D + θM divided by Q(r), and the Frank-Wolfe gap.
    fn gradient(&self, v: &Rows, s: &Stats, term: Term, theta: f64) -> (Rows, f64) {
        let mut grad = vec![vec![0.0; self.nout]; v.len()];
        let mut gap = 0.0;
        for &r in &self.active {
            let u = r / self.nxt;
            let mut inner = 0.0;
            let mut min = f64::INFINITY;
            for &y in &self.support[r] {
                let lv = v[r][y].max(TINY).ln();
                let m = match term {
                    Term::Zero => 0.0,
                    Term::A => lv - s.lpu[u][y],
                    Term::B => s.lpu[u][y] - s.lp[y],
                    Term::AB => lv - s.lp[y],
                    Term::NegA => s.lpu[u][y] - lv,
                };
                let g = lv - self.lw0[r][y] + 1.0 + theta * m;
                grad[r][y] = g;
                inner += v[r][y] * g;
                min = min.min(g);
            }
            gap += self.q[r] * (inner - min);
        }
        (grad, gap.max(0.0))
    }

    fn mirror_step(&self, v: &Rows, grad: &Rows, eta: f64) -> Rows {
        let mut out = v.clone();
        for &r in &self.active {
            let sup = &self.support[r];
            let shift = sup.iter().map(|&y| grad[r][y]).fold(f64::INFINITY, f64::min);
            let mut total = 0.0;
            for &y in sup {
                let x = v[r][y] * (-eta * (grad[r][y] - shift)).exp();
                out[r][y] = x;
                total += x;
            }
            for &y in sup {
                out[r][y] /= total;
            }
        }
        out
    }

    /// Minimises D + θ(M + c) from `v`; returns (value, Frank-Wolfe gap).
    fn solve_inner(&self, term: Term, c: f64, theta: f64, v: &mut Rows, opts: &ExponentOptions) -> (f64, f64) {
        let mut s = self.stats(v);
        let mut f = self.lagrangian(&s, term, c, theta);
        let mut eta = 1.0;
        let mut gap = f64::INFINITY;
        for _ in 0..opts.max_inner_iters {
            let (grad, g) = self.gradient(v, &s, term, theta);
            gap = g;
            if gap <= opts.dual_tol {
                break;
            }
            let mut accepted = false;
            while eta > 1e-14 {
                let cand = self.mirror_step(v, &grad, eta);
                let predicted: f64 = self
                    .active
                    .iter()
                    .map(|&r| self.q[r] * self.support[r].iter().map(|&y| grad[r][y] * (v[r][y] - cand[r][y])).sum::<f64>())
                    .sum();
                let cs = self.stats(&cand);
                let fc = self.lagrangian(&cs, term, c, theta);
                if fc <= f - 1e-4 * predicted.max(0.0) && fc <= f {
                    *v = cand;
                    s = cs;
                    f = fc;
                    eta = (eta * 1.5).min(64.0);
                    accepted = true;
                    break;
                }
                eta *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        (f, gap)
    }
}

struct Tracker<'a> {
    problem: &'a Problem,
    branches: &'a [(Term, f64)],
    best: f64,
    best_v: Rows,
}

impl Tracker<'_> {
    fn offer(&mut self, v: &Rows) -> f64 {
        let f = self.problem.objective(v, self.branches);
        if f < self.best {
            self.best = f;
            self.best_v = v.clone();
        }
        f
    }
}

fn grid_sweep(t: &mut Tracker<'_>, steps: u64) -> f64 {
    let mut v = t.best_v.clone();
    let mut current = t.best;
    for _ in 0..3 {
        let mut improved = false;
        for &r in &t.problem.active.clone() {
            let sup = t.problem.support[r].clone();
            for counts in compositions(steps, sup.len()) {
                let mut cand = v.clone();
                for (k, &y) in sup.iter().enumerate() {
                    cand[r][y] = counts[k] as f64 / steps as f64;
                }
                let f = t.offer(&cand);
                if f < current {
                    current = f;
                    v = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    current
}

fn coordinate_descent(t: &mut Tracker<'_>, start_step: f64, min_step: f64) {
    let mut v = t.best_v.clone();
    let mut current = t.best;
    let mut step = start_step;
    while step >= min_step {
        let mut passes = 0;
        loop {
            let mut improved = false;
            for &r in &t.problem.active.clone() {
                let sup = t.problem.support[r].clone();
                for &a in &sup {
                    for &b in &sup {
                        if a == b || v[r][a] <= 0.0 {
                            continue;
                        }
                        let mut cand = v.clone();
                        let moved = step.min(cand[r][a]);
                        cand[r][a] -= moved;
                        cand[r][b] += moved;
                        let f = t.offer(&cand);
                        if f < current {
                            current = f;
                            v = cand;
                            improved = true;
                        }
                    }
                }
            }
            passes += 1;
            if !improved || passes >= 50 {
                break;
            }
        }
        step /= 2.0;
    }
}

/// Certified bounds on min_V max(D, D + M + c) via the dual max_θ min_V D + θ(M + c).
fn dual_branch(t: &mut Tracker<'_>, term: Term, c: f64, opts: &ExponentOptions) -> f64 {
    let p = t.problem;
    let w0 = p.w0.clone();
    let s0 = p.stats(&w0);
    if term == Term::Zero {
        return c.max(0.0);
    }
    if term.eval(s0.a, s0.b) + c <= 0.0 {
        return 0.0;
    }
    let mut lower: f64 = 0.0;
    let mut v = w0;
    let eval = |theta: f64, v: &mut Rows, t: &mut Tracker<'_>, lower: &mut f64| -> f64 {
        let (f, gap) = p.solve_inner(term, c, theta, v, opts);
        *lower = lower.max(f - gap);
        t.offer(v);
        f
    };
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    eval(1.0, &mut v, t, &mut lower);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut v1 = v.clone();
    let mut f1 = eval(x1, &mut v1, t, &mut lower);
    let mut v2 = v1.clone();
    let mut f2 = eval(x2, &mut v2, t, &mut lower);
    for _ in 0..60 {
        if hi - lo < 1e-9 {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            v1 = v2.clone();
            x2 = lo + phi * (hi - lo);
            f2 = eval(x2, &mut v2, t, &mut lower);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            v2 = v1.clone();
            x1 = hi - phi * (hi - lo);
            f1 = eval(x1, &mut v1, t, &mut lower);
        }
    }
    lower
}

fn to_channel(rows: &Rows, w0: &Channel) -> Channel {
    Channel::new(w0.input().clone(), w0.output().clone(), rows.clone())
        .unwrap_or_else(|_| w0.clone())
}

/// min over V ∈ 𝒫(out)^{U×X̃} of D(V‖ṼW|Q) + γ(V), where W takes X as input and the prefix
/// Ṽ of `aux` is composed in. Grid search over each row, pairwise coordinate descent, then
/// a dual solve of each convex branch that also certifies a lower bound.
pub fn exponent_bound(
    w: &Channel,
    aux: &AuxSpec,
    gamma: Gamma,
    r: &RateTuple,
    opts: &ExponentOptions,
) -> Result<ExponentBound> {
    if !(opts.grid_step > 0.0 && opts.grid_step <= 1.0) || !(opts.refine_tol > 0.0) {
        return Err(Error::InvalidGrid);
    }
    let w0 = compose(aux.prefix(), w)?;
    let problem = Problem::new(&w0, aux);
    let brs = branches(gamma, r);
    let mut tracker = Tracker { problem: &problem, branches: &brs, best: f64::INFINITY, best_v: problem.w0.clone() };
    tracker.offer(&problem.w0.clone());
    let steps = (1.0 / opts.grid_step).round().max(1.0) as u64;
    let grid_value = grid_sweep(&mut tracker, steps);
    coordinate_descent(&mut tracker, opts.grid_step / 2.0, opts.refine_tol);
    let lower = brs
        .iter()
        .map(|&(term, c)| dual_branch(&mut tracker, term, c, opts))
        .fold(f64::INFINITY, f64::min)
        .min(tracker.best);
    let value = tracker.best;
    Ok(ExponentBound {
        gamma,
        value,
        lower_bound: lower,
        tolerance: (value - lower).max(0.0),
        grid_value,
        minimizer: to_channel(&tracker.best_v, &w0),
    })
}

/// (E_b, E_e, S_e) lower bounds with default options.
pub fn exponent_triple(w_b: &Channel, w_e: &Channel, aux: &AuxSpec, r: &RateTuple) -> Result<ExponentTriple> {
    Ok(exponent_report(w_b, w_e, aux, r, &ExponentOptions::default())?.exponents)
}

/// All three minimisations with their minimisers and tolerances.
pub fn exponent_report(
    w_b: &Channel,
    w_e: &Channel,
    aux: &AuxSpec,
    r: &RateTuple,
    opts: &ExponentOptions,
) -> Result<ExponentReport> {
    let (bob, (eve, secrecy)) = rayon::join(
        || exponent_bound(w_b, aux, Gamma::Bob, r, opts),
        || {
            rayon::join(
                || exponent_bound(w_e, aux, Gamma::Eve, r, opts),
                || exponent_bound(w_e, aux, Gamma::Secrecy, r, opts),
            )
        },
    );
    let (bob, eve, secrecy) = (bob?, eve?, secrecy?);
    Ok(ExponentReport {
        exponents: ExponentTriple { e_b: bob.value, e_e: eve.value, s_e: secrecy.value },
        bob,
        eve,
        secrecy,
    })
}

/// Evaluates every candidate aux and returns the reports in order.
pub fn exponent_sweep(
    w_b: &Channel,
    w_e: &Channel,
    candidates: &[AuxSpec],
    r: &RateTuple,
    opts: &ExponentOptions,
) -> Result<Vec<ExponentReport>> {
    use rayon::prelude::*;
    candidates.par_iter().map(|aux| exponent_report(w_b, w_e, aux, r, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::gamma::gamma_from;
    use crate::exponents::mi_pair;
    use crate::measures::{divergence, Alphabet, Distribution};

    fn bsc(p: f64) -> Channel {
        Channel::from_rows(&[vec![1.0 - p, p], vec![p, 1.0 - p]]).unwrap()
    }

    fn rates(r_m: f64, r_l: f64, r_lambda: f64, r: f64, r_j: f64) -> RateTuple {
        RateTuple::new(r_m, r_l, r_lambda, r, r_j).unwrap()
    }

    /// Brute force over V: X → {0,1} for |U| = 1, X̃ = X binary, on a square grid.
    fn brute_force(w: &Channel, aux: &AuxSpec, gamma: Gamma, r: &RateTuple, step: f64) -> f64 {
        let n = (1.0 / step).round() as usize;
        let w0 = compose(aux.prefix(), w).unwrap();
        let q = aux.joint();
        let mut best = f64::INFINITY;
        for i in 0..=n {
            for j in 0..=n {
                let (a, b) = (i as f64 / n as f64, j as f64 / n as f64);
                let v = Channel::new(w0.input().clone(), w0.output().clone(), vec![vec![a, 1.0 - a], vec![b, 1.0 - b]])
                    .unwrap();
                let d = divergence(&v, &w0, &q).unwrap();
                if d.is_finite() {
                    let (ia, ib) = mi_pair(&v, aux).unwrap();
                    best = best.min(d + gamma_from(gamma, ia, ib, r));
                }
            }
        }
        best
    }

    #[test]
    fn zero_gamma_is_minimised_at_the_channel() {
        let aux = AuxSpec::direct(&Distribution::from_probs(&[0.3, 0.7]).unwrap());
        let b = exponent_bound(&bsc(0.2), &aux, Gamma::Zero, &rates(0.0, 0.0, 0.0, 0.0, 0.0), &ExponentOptions::default())
            .unwrap();
        assert_eq!(b.value, 0.0);
        assert!(b.minimizer.max_row_deviation() >= 0.0);
        assert_eq!(b.minimizer.rows(), bsc(0.2).rows());
    }

    #[test]
    fn matches_brute_force_on_binary_inputs() {
        let aux = AuxSpec::direct(&Distribution::from_probs(&[0.5, 0.5]).unwrap());
        let w = bsc(0.1);
        let cases = [
            (Gamma::Eve, rates(0.1, 0.0, 0.0, 0.0, 0.0)),
            (Gamma::Bob, rates(0.0, 0.2, 0.0, 0.0, 0.1)),
            (Gamma::Secrecy, rates(0.0, 0.4, 0.1, 0.0, 0.05)),
        ];
        for (g, r) in cases {
            let got = exponent_bound(&w, &aux, g, &r, &ExponentOptions::default()).unwrap();
            let oracle = brute_force(&w, &aux, g, &r, 0.002);
            assert!(got.value <= oracle + 1e-9, "{g:?}: {} vs {oracle}", got.value);
            assert!(oracle - got.value < 1e-3, "{g:?}: {} vs {oracle}", got.value);
            assert!(got.lower_bound <= got.value && got.tolerance < 1e-4, "{got:?}");
            assert!(got.value <= got.grid_value);
        }
    }

    #[test]
    fn identity_channel_eve_case() {
        // U = X̃ = X, so B = I(U ∧ Z)
        let two = Alphabet::indexed(2);
        let aux = AuxSpec::new(Distribution::uniform(two.clone()), Channel::identity(two.clone()), Channel::identity(two))
            .unwrap();
        let w = Channel::identity(Alphabet::indexed(2));
        let r = rates(0.0, 0.0, 0.0, 0.0, 0.0);
        let got = exponent_bound(&w, &aux, Gamma::Eve, &r, &ExponentOptions::default()).unwrap();
        // only V = identity has finite divergence, so the value is I = ln 2
        assert!((got.value - 2f64.ln()).abs() < 1e-12, "{got:?}");
    }

    #[test]
    fn violated_constraints_give_zero() {
        let aux = AuxSpec::direct(&Distribution::from_probs(&[0.5, 0.5]).unwrap());
        let w = bsc(0.1);
        let r = rates(5.0, 0.0, 0.0, 0.0, 0.0);
        let e = exponent_triple(&w, &w, &aux, &r).unwrap();
        assert_eq!(e.e_e, 0.0);
        assert_eq!(e.s_e, 0.0);
    }

    #[test]
    fn monotone_in_list_rate() {
        let aux = AuxSpec::direct(&Distribution::from_probs(&[0.4, 0.6]).unwrap());
        let w = bsc(0.15);
        let mut last = f64::INFINITY;
        for k in 0..6 {
            let r = rates(0.0, 0.5, 0.05 * k as f64, 0.0, 0.1);
            let v = exponent_bound(&w, &aux, Gamma::Secrecy, &r, &ExponentOptions::default()).unwrap().value;
            assert!(v <= last + 1e-9);
            last = v;
        }
    }

    #[test]
    fn bad_grid_is_rejected() {
        let aux = AuxSpec::direct(&Distribution::from_probs(&[0.4, 0.6]).unwrap());
        let opts = ExponentOptions { grid_step: 0.0, ..Default::default() };
        let r = rates(0.0, 0.0, 0.0, 0.0, 0.0);
        assert!(matches!(exponent_bound(&bsc(0.1), &aux, Gamma::Eve, &r, &opts), Err(Error::InvalidGrid)));
    }
}
