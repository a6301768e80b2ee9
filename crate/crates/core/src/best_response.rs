//! Decoder and relay best responses, the encoder's worst-case selection,
//! and the projection of costs onto the relay's input alphabet.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::belief::{Alphabet, Belief, Splitting};
use crate::game_model::{CostMatrix, GameSpec, Kernel};
use crate::numeric::abs;
use crate::stage::{Atom, Stage};
use crate::{Error, Result};

/// Optimizers of some objective, each with its achieved value.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseSet<T> {
    pub members: Vec<(T, f64)>,
    pub tie_tol: f64,
}

impl<T> ResponseSet<T> {
    pub fn best_value(&self) -> f64 {
        self.members.iter().map(|m| m.1).fold(f64::INFINITY, f64::min)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn items(&self) -> impl Iterator<Item = &T> {
        self.members.iter().map(|m| &m.0)
    }
}

/// Every action minimizing expected `cost` under `belief`, within `tie_tol`.
pub fn decoder_best_action(belief: &Belief, cost: &CostMatrix, tie_tol: f64) -> Result<ResponseSet<usize>> {
    if belief.len() != cost.rows() {
        return Err(Error::Shape(format!(
            "belief over {} symbols, cost has {} rows",
            belief.len(),
            cost.rows()
        )));
    }
    let vals: Vec<f64> = (0..cost.cols()).map(|v| cost.expect(belief.p(), v)).collect();
    let best = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(ResponseSet {
        members: (0..cost.cols())
            .filter(|&v| vals[v] <= best + tie_tol)
            .map(|v| (v, vals[v]))
            .collect(),
        tie_tol,
    })
}

/// Costs re-expressed over the relay's input: `cᵢˣ(x, v) = Σ_u P(u|x) cᵢ(u, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedCosts {
    /// `P(W1 = x)`.
    pub w1_marginal: Vec<f64>,
    /// Relay-input symbols with positive probability, ascending.
    pub reachable: Vec<usize>,
    /// `P(u | x)` for reachable `x`; `None` marks an unreachable row.
    pub posteriors: Vec<Option<Vec<f64>>>,
    /// One matrix per agent, `|W1| × |V|`. Unreachable rows are zero and must be skipped.
    pub costs: [CostMatrix; 3],
}

impl ProjectedCosts {
    /// Rows of cost `i` (1-based) restricted to reachable symbols, row-major.
    pub fn reachable_rows(&self, i: usize) -> Vec<f64> {
        let c = &self.costs[i - 1];
        self.reachable.iter().flat_map(|&x| c.row(x).iter().copied()).collect()
    }

    /// The W1 prior restricted to reachable symbols.
    pub fn reachable_prior(&self) -> Vec<f64> {
        self.reachable.iter().map(|&x| self.w1_marginal[x]).collect()
    }
}

pub fn project_costs(spec: &GameSpec, encoder: &Kernel) -> Result<ProjectedCosts> {
    if encoder.rows() != spec.u_size {
        return Err(Error::Shape(format!(
            "encoder has {} rows, |U| = {}",
            encoder.rows(),
            spec.u_size
        )));
    }
    let nx = encoder.cols();
    let nv = spec.v_size;
    let w1_marginal = encoder.push_forward(&spec.prior);
    let mut costs = [CostMatrix::zeros(nx, nv), CostMatrix::zeros(nx, nv), CostMatrix::zeros(nx, nv)];
    let mut posteriors = Vec::with_capacity(nx);
    let mut reachable = Vec::new();
    for x in 0..nx {
        if w1_marginal[x] <= 0.0 {
            posteriors.push(None);
            continue;
        }
        let post: Vec<f64> = (0..spec.u_size)
            .map(|u| spec.prior[u] * encoder.get(u, x) / w1_marginal[x])
            .collect();
        for (i, c) in costs.iter_mut().enumerate() {
            let src = spec.cost(i + 1);
            for v in 0..nv {
                c.set(x, v, src.expect(&post, v));
            }
        }
        posteriors.push(Some(post));
        reachable.push(x);
    }
    Ok(ProjectedCosts {
        w1_marginal,
        reachable,
        posteriors,
        costs,
    })
}

/// Where the decoder switches actions in a binary game, as a belief about
/// relay-input symbol 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    /// `below` is optimal on `[0, g]`, `above` on `[g, 1]`.
    Crossing { g: f64, below: usize, above: usize },
    /// One action is optimal at every belief.
    Dominant { action: usize },
    /// Both actions cost the same at every belief.
    Indifferent,
}

pub fn decoder_threshold(spec: &GameSpec, encoder: &Kernel) -> Result<Threshold> {
    if spec.v_size != 2 || encoder.cols() != 2 {
        return Err(Error::Unsupported("threshold needs two actions and two relay-input symbols".into()));
    }
    let proj = project_costs(spec, encoder)?;
    let c = &proj.costs[2];
    if proj.reachable.len() < 2 {
        // Only one relay-input symbol is ever emitted; the belief is pinned.
        let x = proj.reachable[0];
        let d = c.get(x, 0) - c.get(x, 1);
        return Ok(if abs(d) <= 1e-12 {
            Threshold::Indifferent
        } else {
            Threshold::Dominant { action: if d < 0.0 { 0 } else { 1 } }
        });
    }
    // d(t) = cost(v0) − cost(v1) at belief t on symbol 1.
    let d0 = c.get(0, 0) - c.get(0, 1);
    let d1 = c.get(1, 0) - c.get(1, 1);
    let scale = 1.0 + abs(d0) + abs(d1);
    if abs(d0) <= 1e-12 * scale && abs(d1) <= 1e-12 * scale {
        return Ok(Threshold::Indifferent);
    }
    if d0 * d1 < 0.0 || d0 == 0.0 || d1 == 0.0 {
        let g = d0 / (d0 - d1);
        if (0.0..=1.0).contains(&g) && d0 != d1 {
            let below = if d0 < 0.0 { 0 } else { 1 };
            let above = if d1 < 0.0 { 0 } else { 1 };
            if below != above {
                return Ok(Threshold::Crossing { g, below, above });
            }
        }
    }
    let action = if d0 + d1 < 0.0 { 0 } else { 1 };
    Ok(Threshold::Dominant { action })
}

/// A relay splitting of the W1 prior together with the decoder's answers.
#[derive(Debug, Clone, PartialEq)]
pub struct RelayResponse {
    pub relay: Kernel,
    pub decoder: Kernel,
    pub splitting: Splitting,
    /// Decoder action per posterior of `splitting`.
    pub actions: Vec<usize>,
    /// Encoder's expected cost under this response.
    pub encoder_cost: f64,
}

/// Which cost drives each layer below the encoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Rule {
    /// Decoder answers `c3`, the relay minimizes `c2`, the encoder suffers the worst relay optimum.
    Strategic,
    /// Relay and decoder act as one party minimizing `c2`.
    Merged,
    /// The encoder also controls the relay; decoder ties go against it.
    Joint,
}

pub(crate) fn stage_for<'a>(
    rule: Rule,
    proj_rows: &'a [Vec<f64>; 3],
    prior: &'a [f64],
    nv: usize,
    rate: Option<f64>,
    max_atoms: usize,
    tie_tol: f64,
) -> Stage<'a> {
    let [c1, c2, c3] = proj_rows;
    let (select, minimize) = match rule {
        Rule::Strategic => (c3, c2),
        Rule::Merged => (c2, c2),
        Rule::Joint => (c3, c1),
    };
    Stage {
        k: prior.len(),
        nv,
        prior,
        select,
        minimize,
        maximize: c1,
        rate,
        max_atoms,
        tie_tol,
        adversarial_decoder: rule == Rule::Joint,
    }
}

/// Witness kernels from a list of atoms over the reachable relay-input
/// symbols. Atoms sharing a posterior share a relay output and the decoder
/// mixes their actions.
pub(crate) fn witness_kernels(
    proj: &ProjectedCosts,
    atoms: &[Atom],
    w2_size: usize,
    nv: usize,
) -> Result<(Kernel, Kernel, Vec<(f64, Vec<f64>, Vec<(usize, f64)>)>)> {
    let mut merged: Vec<(f64, Vec<f64>, Vec<(usize, f64)>)> = Vec::new();
    for a in atoms.iter().filter(|a| a.weight > 0.0) {
        match merged
            .iter_mut()
            .find(|m| m.1.iter().zip(&a.q).all(|(x, y)| abs(x - y) <= 1e-12))
        {
            Some(m) => {
                m.0 += a.weight;
                m.2.push((a.action, a.weight));
            }
            None => merged.push((a.weight, a.q.clone(), vec![(a.action, a.weight)])),
        }
    }
    if merged.len() > w2_size {
        return Err(Error::Unsupported(format!(
            "splitting uses {} posteriors but |W2| = {w2_size}",
            merged.len()
        )));
    }
    let nx = proj.w1_marginal.len();
    let mut relay = vec![0.0; nx * w2_size];
    for x in 0..nx {
        match proj.reachable.iter().position(|&r| r == x) {
            Some(i) => {
                for (w, m) in merged.iter().enumerate() {
                    relay[x * w2_size + w] = m.0 * m.1[i] / proj.w1_marginal[x];
                }
            }
            None => relay[x * w2_size] = 1.0,
        }
    }
    let mut decoder = vec![0.0; w2_size * nv];
    for w in 0..w2_size {
        match merged.get(w) {
            Some(m) => {
                for (v, wt) in &m.2 {
                    decoder[w * nv + v] += wt / m.0;
                }
            }
            None => decoder[w * nv] = 1.0,
        }
    }
    Ok((
        Kernel::from_rows_normalized(nx, w2_size, relay),
        Kernel::from_rows_normalized(w2_size, nv, decoder),
        merged,
    ))
}

fn response_from_atoms(spec: &GameSpec, proj: &ProjectedCosts, atoms: &[Atom], encoder_cost: f64) -> Result<RelayResponse> {
    let (relay, decoder, merged) = witness_kernels(proj, atoms, spec.w2_size, spec.v_size)?;
    let prior = Belief::new_unchecked(Alphabet::W1, proj.reachable_prior());
    let splitting = Splitting::new(
        prior,
        merged
            .iter()
            .map(|m| (m.0, Belief::new_unchecked(Alphabet::W1, m.1.clone())))
            .collect(),
    )?;
    let actions = merged
        .iter()
        .map(|m| m.2.iter().max_by(|a, b| a.1.total_cmp(&b.1)).map_or(0, |a| a.0))
        .collect();
    Ok(RelayResponse {
        relay,
        decoder,
        splitting,
        actions,
        encoder_cost,
    })
}

fn atoms_value(proj_rows: &[f64], nv: usize, atoms: &[Atom]) -> f64 {
    atoms
        .iter()
        .map(|a| {
            a.weight
                * a.q
                    .iter()
                    .enumerate()
                    .map(|(x, qx)| qx * proj_rows[x * nv + a.action])
                    .sum::<f64>()
        })
        .sum()
}

/// The relay's optimal (splitting, decoder answer) pairs given the encoder.
/// Members carry the relay's expected `c2`; the encoder's cost for each is
/// in [`RelayResponse::encoder_cost`]. With `rate2_active` only splittings
/// within `I(W1;W2) ≤ R2` are admitted.
pub fn relay_best_response(
    spec: &GameSpec,
    encoder: &Kernel,
    rate2_active: bool,
    tie_tol: f64,
) -> Result<ResponseSet<RelayResponse>> {
    let proj = project_costs(spec, encoder)?;
    let rows = [proj.reachable_rows(1), proj.reachable_rows(2), proj.reachable_rows(3)];
    let prior = proj.reachable_prior();
    let rate = rate2_active.then_some(spec.r2);
    let stage = stage_for(Rule::Strategic, &rows, &prior, spec.v_size, rate, spec.w2_size, tie_tol);
    let out = stage.solve();
    let mut members = Vec::new();
    let mut seen: Vec<Vec<Atom>> = Vec::new();
    for atoms in core::iter::once(&out.atoms).chain(out.ties.iter()) {
        let mut atoms = atoms.clone();
        atoms.retain(|a| a.weight > 0.0);
        if seen.contains(&atoms) {
            continue;
        }
        let c2 = atoms_value(&rows[1], spec.v_size, &atoms);
        let c1 = atoms_value(&rows[0], spec.v_size, &atoms);
        members.push((response_from_atoms(spec, &proj, &atoms, c1)?, c2));
        seen.push(atoms);
    }
    // Canonical order: fewest posteriors first, then lexicographic relay entries.
    members.sort_by(|a, b| {
        a.0.splitting
            .atoms()
            .len()
            .cmp(&b.0.splitting.atoms().len())
            .then_with(|| lex(a.0.relay.data(), b.0.relay.data()))
    });
    Ok(ResponseSet { members, tie_tol })
}

fn lex(a: &[f64], b: &[f64]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            core::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    core::cmp::Ordering::Equal
}

/// The member that maximizes `objective`, with its value. Members are
/// scanned in order and the first maximizer wins.
pub fn adversarial_select<T: Clone>(
    responses: &ResponseSet<T>,
    objective: impl Fn(&T) -> f64,
) -> Result<(f64, T)> {
    let mut best: Option<(f64, &T)> = None;
    for (m, _) in &responses.members {
        let v = objective(m);
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, m));
        }
    }
    best.map(|(v, m)| (v, m.clone()))
        .ok_or_else(|| Error::Infeasible(String::from("empty response set")))
}
