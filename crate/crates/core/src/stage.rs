//! The belief-space game that follows the encoder's commitment. A
//! minimizer splits the prior into posteriors, each posterior is answered
//! by an action from the decoder's argmin set, and the encoder is charged
//! its worst case among the minimizer's optimal splittings.
//!
//! All costs are affine in the belief on each closed decoder region, so
//! without a rate bound the problem is a finite LP over region vertices
//! (pairs of interval endpoints in the binary case). The binary rate-bound
//! case walks the information boundary between pairs of regions.

use alloc::vec;
use alloc::vec::Vec;

use crate::info::{binary_entropy, entropy};
use crate::lp::{self, LinearProgram, LpOutcome};
use crate::numeric::{abs, solve_square};

const EDGE_EPS: f64 = 1e-12;
const CURVE_SAMPLES: usize = 24;
const CURVE_ZOOM_SAMPLES: usize = 12;
const CURVE_ZOOM_ROUNDS: usize = 4;
const LATTICE_RES: usize = 24;

#[derive(Debug, Clone)]
pub(crate) struct Stage<'a> {
    pub k: usize,
    pub nv: usize,
    pub prior: &'a [f64],
    /// Decoder criterion, `k × nv` row-major.
    pub select: &'a [f64],
    /// The minimizer's objective.
    pub minimize: &'a [f64],
    /// The encoder's objective, maximized over the minimizer's optima.
    pub maximize: &'a [f64],
    /// Bound on `H(prior) − Σ λ H(q)`.
    pub rate: Option<f64>,
    pub max_atoms: usize,
    pub tie_tol: f64,
    /// Decoder ties are broken against the encoder rather than by the minimizer.
    pub adversarial_decoder: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Atom {
    pub weight: f64,
    pub q: Vec<f64>,
    pub action: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct StageOutcome {
    pub min_value: f64,
    pub max_value: f64,
    pub atoms: Vec<Atom>,
    /// Other minimizer-optimal splittings found along the way.
    pub ties: Vec<Vec<Atom>>,
    pub attained: bool,
}

#[derive(Debug, Clone, Copy)]
struct Pair {
    rmin: f64,
    rmax: f64,
    t0: f64,
    v0: usize,
    t1: f64,
    v1: usize,
    w0: f64,
}

impl Stage<'_> {
    #[inline]
    fn line(&self, m: &[f64], v: usize, t: f64) -> f64 {
        m[v] * (1.0 - t) + m[self.nv + v] * t
    }

    #[inline]
    fn dot(&self, m: &[f64], q: &[f64], v: usize) -> f64 {
        q.iter().enumerate().map(|(x, qx)| qx * m[x * self.nv + v]).sum()
    }

    /// Decoder actions optimal at `q`, within `tie_tol`.
    pub fn admissible(&self, q: &[f64]) -> Vec<usize> {
        let vals: Vec<f64> = (0..self.nv).map(|v| self.dot(self.select, q, v)).collect();
        let best = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        (0..self.nv).filter(|&v| vals[v] <= best + self.tie_tol).collect()
    }

    fn rate_binds(&self) -> Option<f64> {
        let r = self.rate?;
        if r + crate::RATE_SLACK_TOL >= entropy(self.prior) {
            None
        } else {
            Some(r.max(0.0))
        }
    }

    pub fn solve(&self) -> StageOutcome {
        let rate = self.rate_binds();
        let reveal_nothing = matches!(rate, Some(r) if r <= crate::RATE_SLACK_TOL);
        let mut out = if self.k == 1 || self.max_atoms <= 1 || reveal_nothing {
            self.solve_uninformative()
        } else if self.k == 2 {
            match rate {
                None => self.solve_binary(),
                Some(r) => self.solve_binary_rate(r),
            }
        } else {
            self.solve_lp(rate)
        };
        out.atoms.retain(|a| a.weight > 0.0);
        out.attained = !self.adversarial_decoder || out.atoms.iter().all(|a| self.decoder_adversarial_ok(a));
        out
    }

    fn decoder_adversarial_ok(&self, a: &Atom) -> bool {
        let chosen = self.dot(self.maximize, &a.q, a.action);
        self.admissible(&a.q)
            .iter()
            .all(|&v| self.dot(self.maximize, &a.q, v) <= chosen + 1e-9)
    }

    fn solve_uninformative(&self) -> StageOutcome {
        let q = self.prior.to_vec();
        let pairs: Vec<Pair> = self
            .admissible(&q)
            .into_iter()
            .map(|v| Pair {
                rmin: self.dot(self.minimize, &q, v),
                rmax: self.dot(self.maximize, &q, v),
                t0: 0.0,
                v0: v,
                t1: 0.0,
                v1: v,
                w0: 1.0,
            })
            .collect();
        let (best, ties) = pick(&pairs, self.tie_tol);
        let as_atoms = |p: &Pair| vec![Atom { weight: 1.0, q: q.clone(), action: p.v0 }];
        StageOutcome {
            min_value: best.rmin,
            max_value: best.rmax,
            atoms: as_atoms(&best),
            ties: ties.iter().map(as_atoms).collect(),
            attained: true,
        }
    }

    /// Closed decoder region of each action as an interval of `t = q[1]`.
    fn intervals(&self) -> Vec<Option<(f64, f64)>> {
        let s = self.select;
        let nv = self.nv;
        let scale = 1.0 + s.iter().fold(0.0f64, |m, x| m.max(abs(*x)));
        (0..nv)
            .map(|v| {
                let (mut lo, mut hi) = (0.0f64, 1.0f64);
                for w in 0..nv {
                    if w == v {
                        continue;
                    }
                    let d0 = s[v] - s[w];
                    let d1 = s[nv + v] - s[nv + w];
                    let slope = d1 - d0;
                    if abs(slope) <= 1e-14 * scale {
                        if d0 > self.tie_tol {
                            return None;
                        }
                        continue;
                    }
                    let t = -d0 / slope;
                    if slope > 0.0 {
                        hi = hi.min(t);
                    } else {
                        lo = lo.max(t);
                    }
                }
                if lo > hi + EDGE_EPS {
                    None
                } else {
                    Some((lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0).max(lo.clamp(0.0, 1.0))))
                }
            })
            .collect()
    }

    fn pair(&self, t0: f64, v0: usize, t1: f64, v1: usize) -> Pair {
        let p = self.prior[1];
        let w0 = if t1 - t0 <= EDGE_EPS { 1.0 } else { ((t1 - p) / (t1 - t0)).clamp(0.0, 1.0) };
        Pair {
            rmin: w0 * self.line(self.minimize, v0, t0) + (1.0 - w0) * self.line(self.minimize, v1, t1),
            rmax: w0 * self.line(self.maximize, v0, t0) + (1.0 - w0) * self.line(self.maximize, v1, t1),
            t0,
            v0,
            t1,
            v1,
            w0,
        }
    }

    fn singles(&self, intervals: &[Option<(f64, f64)>], out: &mut Vec<Pair>) {
        let p = self.prior[1];
        let adm = self.admissible(self.prior);
        for (v, iv) in intervals.iter().enumerate() {
            if let Some((lo, hi)) = iv {
                if (*lo - EDGE_EPS..=*hi + EDGE_EPS).contains(&p) || adm.contains(&v) {
                    out.push(self.pair(p, v, p, v));
                }
            }
        }
    }

    fn pairs_to_outcome(&self, cands: &[Pair]) -> StageOutcome {
        let (best, ties) = pick(cands, self.tie_tol);
        StageOutcome {
            min_value: best.rmin,
            max_value: best.rmax,
            atoms: self.pair_atoms(&best),
            ties: ties.iter().map(|p| self.pair_atoms(p)).collect(),
            attained: true,
        }
    }

    fn pair_atoms(&self, p: &Pair) -> Vec<Atom> {
        let mk = |w: f64, t: f64, v: usize| Atom { weight: w, q: vec![1.0 - t, t], action: v };
        if p.w0 >= 1.0 {
            vec![mk(1.0, p.t0, p.v0)]
        } else if p.w0 <= 0.0 {
            vec![mk(1.0, p.t1, p.v1)]
        } else {
            vec![mk(p.w0, p.t0, p.v0), mk(1.0 - p.w0, p.t1, p.v1)]
        }
    }

    fn solve_binary(&self) -> StageOutcome {
        let p = self.prior[1];
        let intervals = self.intervals();
        let mut cands = Vec::with_capacity(16);
        self.singles(&intervals, &mut cands);
        let mut points: Vec<(f64, usize)> = Vec::with_capacity(2 * self.nv);
        for (v, iv) in intervals.iter().enumerate() {
            if let Some((lo, hi)) = *iv {
                points.push((lo, v));
                if hi > lo + EDGE_EPS {
                    points.push((hi, v));
                }
            }
        }
        for &(ta, va) in &points {
            if ta > p + EDGE_EPS {
                continue;
            }
            for &(tb, vb) in &points {
                if tb < p - EDGE_EPS || va == vb || tb - ta <= EDGE_EPS {
                    continue;
                }
                cands.push(self.pair(ta, va, tb, vb));
            }
        }
        self.pairs_to_outcome(&cands)
    }

    fn mi(&self, t0: f64, t1: f64) -> f64 {
        let p = self.prior[1];
        if t1 - t0 <= EDGE_EPS {
            return 0.0;
        }
        let w0 = ((t1 - p) / (t1 - t0)).clamp(0.0, 1.0);
        (binary_entropy(p) - w0 * binary_entropy(t0) - (1.0 - w0) * binary_entropy(t1)).max(0.0)
    }

    /// Smallest `t0 ∈ [lo, hi]` (with `hi ≤ p`) keeping the pair within rate.
    fn lower_on_curve(&self, t1: f64, lo: f64, hi: f64, rate: f64) -> Option<f64> {
        if self.mi(lo, t1) <= rate {
            return Some(lo);
        }
        if self.mi(hi, t1) > rate {
            return None;
        }
        Some(feasible_root(|t| self.mi(t, t1) - rate, hi, lo))
    }

    /// Largest `t1 ∈ [lo, hi]` (with `lo ≥ p`) keeping the pair within rate.
    fn upper_on_curve(&self, t0: f64, lo: f64, hi: f64, rate: f64) -> Option<f64> {
        if self.mi(t0, hi) <= rate {
            return Some(hi);
        }
        if self.mi(t0, lo) > rate {
            return None;
        }
        Some(feasible_root(|t| self.mi(t0, t) - rate, lo, hi))
    }

    fn solve_binary_rate(&self, rate: f64) -> StageOutcome {
        let p = self.prior[1];
        let intervals = self.intervals();
        let mut cands = Vec::with_capacity(128);
        self.singles(&intervals, &mut cands);
        for (v0, iv0) in intervals.iter().enumerate() {
            let Some((a0, b0)) = *iv0 else { continue };
            let (lo0, hi0) = (a0, b0.min(p));
            if lo0 > hi0 + EDGE_EPS {
                continue;
            }
            for (v1, iv1) in intervals.iter().enumerate() {
                let Some((a1, b1)) = *iv1 else { continue };
                if v1 == v0 {
                    continue;
                }
                let (lo1, hi1) = (a1.max(p), b1);
                if lo1 > hi1 + EDGE_EPS {
                    continue;
                }
                let push = |t0: f64, t1: f64, cands: &mut Vec<Pair>| {
                    if t1 - t0 > EDGE_EPS {
                        cands.push(self.pair(t0, v0, t1, v1));
                    }
                };
                for t1 in [lo1, hi1] {
                    if let Some(t0) = self.lower_on_curve(t1, lo0, hi0, rate) {
                        push(t0, t1, &mut cands);
                        push(hi0, t1, &mut cands);
                    }
                }
                for t0 in [lo0, hi0] {
                    if let Some(t1) = self.upper_on_curve(t0, lo1, hi1, rate) {
                        push(t0, t1, &mut cands);
                        push(t0, lo1, &mut cands);
                    }
                }
                // Interior of the information boundary.
                let eval = |t1: f64| -> Option<Pair> {
                    let t0 = self.lower_on_curve(t1, lo0, hi0, rate)?;
                    (t1 - t0 > EDGE_EPS).then(|| self.pair(t0, v0, t1, v1))
                };
                let (mut a, mut b) = (lo1, hi1);
                let mut n = CURVE_SAMPLES;
                for _ in 0..=CURVE_ZOOM_ROUNDS {
                    if b - a <= EDGE_EPS {
                        break;
                    }
                    let step = (b - a) / n as f64;
                    let mut best: Option<(f64, f64)> = None;
                    for i in 0..=n {
                        let t1 = a + step * i as f64;
                        if let Some(pr) = eval(t1) {
                            if best.is_none_or(|(_, r)| pr.rmin < r) {
                                best = Some((t1, pr.rmin));
                            }
                            cands.push(pr);
                        }
                    }
                    let Some((tb, _)) = best else { break };
                    a = (tb - step).max(lo1);
                    b = (tb + step).min(hi1);
                    n = CURVE_ZOOM_SAMPLES;
                }
            }
        }
        self.pairs_to_outcome(&cands)
    }

    /// Vertices of the closed decoder region of `v` inside the simplex.
    fn region_vertices(&self, v: usize) -> Vec<Vec<f64>> {
        let k = self.k;
        let nv = self.nv;
        let s = self.select;
        let scale = 1.0 + s.iter().fold(0.0f64, |m, x| m.max(abs(*x)));
        // Candidate active hyperplanes: q_x = 0, then indifference with each rival.
        let mut planes: Vec<Vec<f64>> = (0..k)
            .map(|x| {
                let mut h = vec![0.0; k];
                h[x] = 1.0;
                h
            })
            .collect();
        for w in 0..nv {
            if w != v {
                planes.push((0..k).map(|x| s[x * nv + v] - s[x * nv + w]).collect());
            }
        }
        let inside = |q: &[f64]| {
            q.iter().all(|x| *x >= -1e-10)
                && (0..nv).all(|w| {
                    (0..k).map(|x| q[x] * (s[x * nv + v] - s[x * nv + w])).sum::<f64>() <= 1e-9 * scale
                })
        };
        let mut out: Vec<Vec<f64>> = Vec::new();
        let mut choice: Vec<usize> = (0..k - 1).collect();
        loop {
            let mut a = vec![0.0; k * k];
            let mut b = vec![0.0; k];
            for (r, &pi) in choice.iter().enumerate() {
                a[r * k..(r + 1) * k].copy_from_slice(&planes[pi]);
            }
            for x in 0..k {
                a[(k - 1) * k + x] = 1.0;
            }
            b[k - 1] = 1.0;
            if let Some(mut q) = solve_square(&a, &b, k) {
                if inside(&q) {
                    for x in q.iter_mut() {
                        *x = x.max(0.0);
                    }
                    let t: f64 = q.iter().sum();
                    q.iter_mut().for_each(|x| *x /= t);
                    if !out.iter().any(|o| o.iter().zip(&q).all(|(a, b)| abs(a - b) < 1e-10)) {
                        out.push(q);
                    }
                }
            }
            if !next_combination(&mut choice, planes.len()) {
                break;
            }
        }
        out
    }

    fn solve_lp(&self, rate: Option<f64>) -> StageOutcome {
        let k = self.k;
        let mut cols: Vec<(Vec<f64>, usize)> = Vec::new();
        for v in 0..self.nv {
            for q in self.region_vertices(v) {
                cols.push((q, v));
            }
        }
        if rate.is_some() {
            for q in simplex_lattice(k, LATTICE_RES) {
                for v in self.admissible(&q) {
                    cols.push((q.clone(), v));
                }
            }
            for v in self.admissible(self.prior) {
                cols.push((self.prior.to_vec(), v));
            }
        }
        let best = self.lp_over(&cols, rate);
        let Some((mut lam, mut rmin, mut rmax)) = best else {
            return self.solve_uninformative();
        };
        let support: Vec<usize> = (0..cols.len()).filter(|&j| lam[j] > 1e-12).collect();
        if support.len() > self.max_atoms {
            let mut found: Option<(Vec<f64>, f64, f64)> = None;
            let mut choice: Vec<usize> = (0..self.max_atoms).collect();
            loop {
                let sub: Vec<(Vec<f64>, usize)> = choice.iter().map(|&i| cols[support[i]].clone()).collect();
                if let Some((l, a, b)) = self.lp_over(&sub, rate) {
                    let better = match &found {
                        None => true,
                        Some((_, fa, fb)) => a < fa - self.tie_tol || (a <= fa + self.tie_tol && b > *fb),
                    };
                    if better {
                        let mut full = vec![0.0; cols.len()];
                        for (i, &c) in choice.iter().enumerate() {
                            full[support[c]] = l[i];
                        }
                        found = Some((full, a, b));
                    }
                }
                if !next_combination(&mut choice, support.len()) {
                    break;
                }
            }
            match found {
                Some((l, a, b)) => {
                    lam = l;
                    rmin = a;
                    rmax = b;
                }
                None => return self.solve_uninformative(),
            }
        }
        let atoms: Vec<Atom> = lam
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > 1e-12)
            .map(|(j, w)| Atom { weight: *w, q: cols[j].0.clone(), action: cols[j].1 })
            .collect();
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        let atoms = atoms
            .into_iter()
            .map(|mut a| {
                a.weight /= total;
                a
            })
            .collect::<Vec<_>>();
        let _ = k;
        StageOutcome {
            min_value: rmin,
            max_value: rmax,
            atoms,
            ties: Vec::new(),
            attained: true,
        }
    }

    /// Lexicographic LP: minimizer first, then the encoder's max over the
    /// minimizer's optimal face. Returns weights and both values.
    fn lp_over(&self, cols: &[(Vec<f64>, usize)], rate: Option<f64>) -> Option<(Vec<f64>, f64, f64)> {
        let k = self.k;
        let n = cols.len();
        let mins: Vec<f64> = cols.iter().map(|(q, v)| self.dot(self.minimize, q, *v)).collect();
        let maxs: Vec<f64> = cols.iter().map(|(q, v)| self.dot(self.maximize, q, *v)).collect();
        let a_eq: Vec<Vec<f64>> = (0..k).map(|x| cols.iter().map(|(q, _)| q[x]).collect()).collect();
        let b_eq = self.prior.to_vec();
        let (mut a_le, mut b_le) = (Vec::new(), Vec::new());
        if let Some(r) = rate {
            a_le.push(cols.iter().map(|(q, _)| -entropy(q)).collect());
            b_le.push(r - entropy(self.prior));
        }
        let first = LinearProgram { cost: mins.clone(), a_eq: a_eq.clone(), b_eq: b_eq.clone(), a_le: a_le.clone(), b_le: b_le.clone() };
        let LpOutcome::Optimal { value: opt, x: x1 } = lp::minimize(&first) else {
            return None;
        };
        a_le.push(mins.clone());
        b_le.push(opt + self.tie_tol);
        let second = LinearProgram { cost: maxs.iter().map(|m| -m).collect(), a_eq, b_eq, a_le, b_le };
        let lam = match lp::minimize(&second) {
            LpOutcome::Optimal { x, .. } => x,
            _ => x1,
        };
        let rmin = (0..n).map(|j| lam[j] * mins[j]).sum();
        let rmax = (0..n).map(|j| lam[j] * maxs[j]).sum();
        Some((lam, rmin, rmax))
    }
}

/// Minimizer's optimum first, then the encoder's worst case among ties.
fn pick(cands: &[Pair], tie_tol: f64) -> (Pair, Vec<Pair>) {
    let best_min = cands.iter().map(|c| c.rmin).fold(f64::INFINITY, f64::min);
    let ties: Vec<Pair> = cands.iter().copied().filter(|c| c.rmin <= best_min + tie_tol).collect();
    let mut best = ties[0];
    for c in &ties[1..] {
        if c.rmax > best.rmax + 1e-15 {
            best = *c;
        }
    }
    (best, ties)
}

/// Root of a monotone `f` between a feasible end (`f ≤ 0`) and an
/// infeasible end (`f > 0`), returned on the feasible side. Illinois variant
/// of regula falsi.
fn feasible_root(f: impl Fn(f64) -> f64, mut good: f64, mut bad: f64) -> f64 {
    let mut fg = f(good);
    let mut fb = f(bad);
    let mut side = 0i8;
    for _ in 0..80 {
        if abs(bad - good) <= 1e-14 {
            break;
        }
        let x = if (fb - fg).abs() > 0.0 { (good * fb - bad * fg) / (fb - fg) } else { 0.5 * (good + bad) };
        let x = if x.is_finite() && (x - good) * (x - bad) < 0.0 { x } else { 0.5 * (good + bad) };
        let fx = f(x);
        if fx <= 0.0 {
            good = x;
            fg = fx;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            bad = x;
            fb = fx;
            if side == 1 {
                fg *= 0.5;
            }
            side = 1;
        }
    }
    good
}

pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    if k == 0 || k > n {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All points of the simplex in `k` coordinates with denominators `res`.
pub(crate) fn simplex_lattice(k: usize, res: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut counts = vec![0usize; k];
    fn rec(i: usize, left: usize, counts: &mut [usize], res: usize, out: &mut Vec<Vec<f64>>) {
        let k = counts.len();
        if i == k - 1 {
            counts[i] = left;
            out.push(counts.iter().map(|c| *c as f64 / res as f64).collect());
            return;
        }
        for c in (0..=left).rev() {
            counts[i] = c;
            rec(i + 1, left - c, counts, res, out);
        }
    }
    if k > 0 {
        rec(0, res, &mut counts, res, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference game: decoder indifferent at 0.6, relay prefers v0.
    const C13: [f64; 4] = [9.0, 0.0, 4.0, 10.0];
    const C2: [f64; 4] = [0.0, 1.0, 0.0, 1.0];

    fn stage<'a>(prior: &'a [f64], min: &'a [f64], max: &'a [f64], rate: Option<f64>, adv: bool) -> Stage<'a> {
        Stage {
            k: 2,
            nv: 2,
            prior,
            select: &C13,
            minimize: min,
            maximize: max,
            rate,
            max_atoms: 2,
            tie_tol: 1e-9,
            adversarial_decoder: adv,
        }
    }

    #[test]
    fn cooperative_geometry() {
        let out = stage(&[0.6, 0.4], &C13, &C13, None, true).solve();
        assert!((out.min_value - 1.6).abs() < 1e-12);
        assert!(out.attained);
    }

    #[test]
    fn relay_splits_at_indifference() {
        let out = stage(&[0.6, 0.4], &C2, &C13, None, false).solve();
        assert!((out.min_value - 1.0 / 3.0).abs() < 1e-12);
        let qs: Vec<f64> = out.atoms.iter().map(|a| a.q[1]).collect();
        assert!(qs.iter().any(|q| q.abs() < 1e-12) && qs.iter().any(|q| (q - 0.6).abs() < 1e-12));
        assert!((out.max_value - 4.0).abs() < 1e-12);
    }

    #[test]
    fn zero_rate_is_uninformative() {
        let out = stage(&[0.6, 0.4], &C13, &C13, Some(0.0), true).solve();
        assert!((out.min_value - 4.0).abs() < 1e-12);
        assert_eq!(out.atoms.len(), 1);
    }

    #[test]
    fn rate_bound_interpolates_and_is_respected() {
        let mut last = f64::INFINITY;
        for r in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let out = stage(&[0.6, 0.4], &C13, &C13, Some(r), true).solve();
            assert!(out.min_value <= last + 1e-9);
            last = out.min_value;
            let p = 0.4;
            let mi = binary_entropy(p)
                - out.atoms.iter().map(|a| a.weight * binary_entropy(a.q[1])).sum::<f64>();
            assert!(mi <= r + 1e-9, "rate {r}: information {mi}");
        }
        assert!(last < 4.0 && last > 1.6);
    }

    #[test]
    fn lp_path_agrees_with_binary_path() {
        let s = stage(&[0.6, 0.4], &C2, &C13, None, false);
        let lp = s.solve_lp(None);
        let bin = s.solve();
        assert!((lp.min_value - bin.min_value).abs() < 1e-9);
        assert!((lp.max_value - bin.max_value).abs() < 1e-9);
    }

    #[test]
    fn lattice_and_combinations() {
        assert_eq!(simplex_lattice(3, 2).len(), 6);
        let mut c = vec![0, 1];
        let mut n = 1;
        while next_combination(&mut c, 4) {
            n += 1;
        }
        assert_eq!(n, 6);
    }
}
