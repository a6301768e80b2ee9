//! Lower convex envelopes of belief-indexed costs.
//!
//! A [`BeliefCostFunction`] charges `Σ_x q(x)·objective(x, v)` where `v` is
//! the decoder's answer to the belief `q` under a separate criterion. The
//! function is affine on each closed decoder region, so its envelope at a
//! prior is attained by splitting over region vertices.

use alloc::vec::Vec;

use crate::belief::{Alphabet, Belief, Splitting};
use crate::game_model::CostMatrix;
use crate::stage::Stage;
use crate::{Error, Result, DEFAULT_TIE_TOL};

/// How a tie in the decoder's criterion is resolved when evaluating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieRule {
    /// The action with the smallest objective (relay-chosen ties).
    Min,
    /// The action with the largest objective (adversarial ties).
    Max,
}

#[derive(Debug, Clone)]
pub struct BeliefCostFunction {
    pub alphabet: Alphabet,
    /// Decoder criterion, beliefs × actions.
    pub select: CostMatrix,
    /// The charged cost, beliefs × actions.
    pub objective: CostMatrix,
    pub tie: TieRule,
    pub tie_tol: f64,
}

impl BeliefCostFunction {
    pub fn new(alphabet: Alphabet, select: CostMatrix, objective: CostMatrix, tie: TieRule) -> Result<Self> {
        if select.rows() != objective.rows() || select.cols() != objective.cols() {
            return Err(Error::Shape("criterion and objective shapes differ".into()));
        }
        Ok(Self {
            alphabet,
            select,
            objective,
            tie,
            tie_tol: DEFAULT_TIE_TOL,
        })
    }

    pub fn dim(&self) -> usize {
        self.select.rows()
    }

    /// Decoder actions optimal at `q`.
    pub fn actions(&self, q: &[f64]) -> Vec<usize> {
        let vals: Vec<f64> = (0..self.select.cols()).map(|v| self.select.expect(q, v)).collect();
        let best = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        (0..vals.len()).filter(|&v| vals[v] <= best + self.tie_tol).collect()
    }

    pub fn eval(&self, q: &[f64]) -> f64 {
        let it = self.actions(q).into_iter().map(|v| self.objective.expect(q, v));
        match self.tie {
            TieRule::Min => it.fold(f64::INFINITY, f64::min),
            TieRule::Max => it.fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// Value at `q` when the decoder plays `v`.
    pub fn eval_action(&self, q: &[f64], v: usize) -> f64 {
        self.objective.expect(q, v)
    }

    fn stage<'a>(&'a self, prior: &'a [f64]) -> Stage<'a> {
        Stage {
            k: self.dim(),
            nv: self.select.cols(),
            prior,
            select: self.select.data(),
            minimize: self.objective.data(),
            maximize: self.objective.data(),
            rate: None,
            max_atoms: self.dim(),
            tie_tol: self.tie_tol,
            adversarial_decoder: self.tie == TieRule::Max,
        }
    }
}

/// Envelope value at a prior with the splitting that realizes it.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub value: f64,
    pub splitting: Splitting,
    /// Decoder action at each posterior of `splitting`.
    pub actions: Vec<usize>,
    /// Lower hull of the graph, for one-dimensional belief spaces.
    pub breakpoints: Option<Hull1d>,
    /// False when the value is an infimum that adversarial ties keep out of reach.
    pub attained: bool,
}

/// Lower convex envelope of `f` at `prior`.
pub fn convex_envelope(f: &BeliefCostFunction, prior: &Belief) -> Result<Envelope> {
    if prior.len() != f.dim() {
        return Err(Error::Shape("prior and cost function dimensions differ".into()));
    }
    let out = f.stage(prior.p()).solve();
    let atoms = out
        .atoms
        .iter()
        .map(|a| (a.weight, Belief::new_unchecked(prior.alphabet(), a.q.clone())))
        .collect();
    let splitting = Splitting::new(prior.clone(), atoms)?;
    let breakpoints = if f.dim() == 2 { Some(graph_hull(f)?) } else { None };
    Ok(Envelope {
        value: out.min_value,
        splitting,
        actions: out.atoms.iter().map(|a| a.action).collect(),
        breakpoints,
        attained: out.attained,
    })
}

fn graph_hull(f: &BeliefCostFunction) -> Result<Hull1d> {
    let mut pts = Vec::new();
    let nv = f.select.cols();
    for v in 0..nv {
        for q in region_endpoints(f, v) {
            pts.push((q, f.eval_action(&[1.0 - q, q], v)));
        }
    }
    envelope_1d(&pts)
}

fn region_endpoints(f: &BeliefCostFunction, v: usize) -> Vec<f64> {
    // Closed region of `v` on [0, 1].
    let s = &f.select;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for w in 0..s.cols() {
        if w == v {
            continue;
        }
        let d0 = s.get(0, v) - s.get(0, w);
        let d1 = s.get(1, v) - s.get(1, w);
        let slope = d1 - d0;
        if slope.abs() <= 1e-14 {
            if d0 > f.tie_tol {
                return Vec::new();
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
    if lo > hi + 1e-12 {
        Vec::new()
    } else {
        alloc::vec![lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0)]
    }
}

/// Lower convex hull of a point set on a line.
#[derive(Debug, Clone, PartialEq)]
pub struct Hull1d {
    pub breakpoints: Vec<(f64, f64)>,
}

impl Hull1d {
    pub fn eval(&self, x: f64) -> Option<f64> {
        let (a, b, w) = self.bracket(x)?;
        Some(w * self.breakpoints[a].1 + (1.0 - w) * self.breakpoints[b].1)
    }

    /// Indices of the breakpoints around `x` and the weight on the left one.
    pub fn bracket(&self, x: f64) -> Option<(usize, usize, f64)> {
        let bp = &self.breakpoints;
        let first = bp.first()?.0;
        let last = bp.last()?.0;
        if x < first - 1e-12 || x > last + 1e-12 {
            return None;
        }
        for i in 0..bp.len() - 1 {
            let (x0, x1) = (bp[i].0, bp[i + 1].0);
            if x <= x1 + 1e-12 {
                let w = ((x1 - x) / (x1 - x0)).clamp(0.0, 1.0);
                return Some((i, i + 1, w));
            }
        }
        Some((bp.len() - 2, bp.len() - 1, 0.0))
    }
}

/// Lower hull of `(belief, value)` points by the monotone chain.
pub fn envelope_1d(points: &[(f64, f64)]) -> Result<Hull1d> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup_by(|b, a| (a.0 - b.0).abs() <= 1e-15);
    if pts.len() < 2 {
        return Err(Error::InvalidRange("need at least two distinct breakpoints".into()));
    }
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross <= 1e-15 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    Ok(Hull1d { breakpoints: hull })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c13() -> CostMatrix {
        CostMatrix::new(2, 2, alloc::vec![9.0, 0.0, 4.0, 10.0]).unwrap()
    }

    #[test]
    fn hull_examples() {
        let h = envelope_1d(&[(0.0, 0.0), (0.6, 6.0), (1.0, 4.0)]).unwrap();
        assert_eq!(h.breakpoints, alloc::vec![(0.0, 0.0), (1.0, 4.0)]);
        let convex = [(0.0, 1.0), (0.5, 0.2), (1.0, 1.0)];
        assert_eq!(envelope_1d(&convex).unwrap().breakpoints, convex.to_vec());
        assert_eq!(envelope_1d(&[(0.0, 1.0), (1.0, 2.0)]).unwrap().breakpoints.len(), 2);
        assert!(envelope_1d(&[(0.3, 1.0)]).is_err());
    }

    #[test]
    fn relay_step_cost() {
        let c2 = CostMatrix::new(2, 2, alloc::vec![0.0, 1.0, 0.0, 1.0]).unwrap();
        let f = BeliefCostFunction::new(Alphabet::W1, c13(), c2, TieRule::Min).unwrap();
        let env = convex_envelope(&f, &Belief::binary(Alphabet::W1, 0.4).unwrap()).unwrap();
        assert!((env.value - 1.0 / 3.0).abs() < 1e-12);
        assert!(env.attained);
    }

    #[test]
    fn decoder_optimal_encoder_cost() {
        let f = BeliefCostFunction::new(Alphabet::U, c13(), c13(), TieRule::Max).unwrap();
        let env = convex_envelope(&f, &Belief::binary(Alphabet::U, 0.4).unwrap()).unwrap();
        assert!((env.value - 1.6).abs() < 1e-12);
        let hull = env.breakpoints.unwrap();
        assert!((hull.eval(0.4).unwrap() - 1.6).abs() < 1e-12);
    }

    #[test]
    fn affine_function_is_its_own_envelope() {
        let zero_criterion = CostMatrix::zeros(2, 1);
        let obj = CostMatrix::new(2, 1, alloc::vec![2.0, 5.0]).unwrap();
        let f = BeliefCostFunction::new(Alphabet::U, zero_criterion, obj, TieRule::Min).unwrap();
        let env = convex_envelope(&f, &Belief::binary(Alphabet::U, 0.3).unwrap()).unwrap();
        assert!((env.value - 2.9).abs() < 1e-12);
        assert_eq!(env.splitting.atoms().len(), 1);
    }
}
