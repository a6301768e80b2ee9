//! Optimal encoder costs for the six information regimes, by grid search
//! over encoder kernels with the belief-space stage solved exactly (or by
//! boundary search under a relay rate bound) for each candidate.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::best_response::{project_costs, stage_for, witness_kernels, ProjectedCosts, Rule};
use crate::game_model::{profile_costs, CostMatrix, GameSpec, Kernel};
use crate::info::{is_feasible, mutual_information, RateConstraint};
use crate::numeric::{abs, format_significant};
use crate::par::map_indexed;
use crate::stage::{simplex_lattice, Atom};
use crate::{Error, Result, DEFAULT_TIE_TOL, RATE_SLACK_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Regime {
    /// All three agents share one cost; only `min(R1, R2) ≥ I(U;W2)` binds.
    Cooperative,
    /// Both links at full rate.
    Unconstrained,
    /// Encoder at full rate, relay bounded by `R2 ≥ I(W1;W2)`.
    RelayRestricted,
    /// Relay at full rate, encoder bounded by `R1 ≥ I(U;W1)`.
    EncoderRestricted,
    /// Encoder and relay act jointly against the decoder.
    EncoderRelay,
    /// Relay and decoder act as one party.
    RelayDecoder,
}

impl Regime {
    pub const ALL: [Regime; 6] = [
        Regime::Cooperative,
        Regime::Unconstrained,
        Regime::RelayRestricted,
        Regime::EncoderRestricted,
        Regime::EncoderRelay,
        Regime::RelayDecoder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::Cooperative => "cooperative",
            Regime::Unconstrained => "unconstrained",
            Regime::RelayRestricted => "relay-restricted",
            Regime::EncoderRestricted => "encoder-restricted",
            Regime::EncoderRelay => "encoder-relay",
            Regime::RelayDecoder => "relay-decoder",
        }
    }

    pub(crate) fn rule(self) -> Rule {
        match self {
            Regime::Cooperative | Regime::EncoderRelay => Rule::Joint,
            Regime::RelayDecoder => Rule::Merged,
            _ => Rule::Strategic,
        }
    }

    pub fn encoder_rate_limited(self) -> bool {
        matches!(self, Regime::EncoderRestricted | Regime::EncoderRelay | Regime::RelayDecoder)
    }

    pub fn relay_rate_limited(self) -> bool {
        matches!(self, Regime::RelayRestricted | Regime::EncoderRelay | Regime::RelayDecoder)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Ok(match norm.as_str() {
            "cooperative" => Regime::Cooperative,
            "unconstrained" => Regime::Unconstrained,
            "relay-restricted" => Regime::RelayRestricted,
            "encoder-restricted" => Regime::EncoderRestricted,
            "encoder-relay" | "encoder-relay-coop" => Regime::EncoderRelay,
            "relay-decoder" | "relay-decoder-coop" => Regime::RelayDecoder,
            _ => return Err(Error::UnknownRegime(s.into())),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolveOptions {
    /// Points per parameter of the binary encoder grid.
    pub grid: usize,
    pub refine_passes: usize,
    /// Points per parameter in each local refinement window.
    pub refine_points: usize,
    /// A report counts as converged when the last pass improved by less than this.
    pub refine_tol: f64,
    pub tie_tol: f64,
    /// Simplex lattice resolution for encoder rows in non-binary games.
    pub lattice_res: usize,
    /// Cap on encoder candidates in non-binary games.
    pub budget: usize,
    /// Seed for the deterministic subsample when the lattice exceeds the budget.
    pub seed: u64,
    /// Extra encoder candidates scored alongside the grid. Kernels of the
    /// wrong shape are ignored.
    #[cfg_attr(feature = "serde", serde(default))]
    pub warm_start: Vec<Kernel>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            grid: 201,
            refine_passes: 2,
            refine_points: 21,
            refine_tol: 1e-3,
            tie_tol: DEFAULT_TIE_TOL,
            lattice_res: 20,
            budget: 20_000,
            seed: 0,
            warm_start: Vec::new(),
        }
    }
}

impl SolveOptions {
    fn validate(&self) -> Result<()> {
        if self.grid < 2 {
            return Err(Error::validation("grid", "needs at least 2 points"));
        }
        if self.refine_points < 3 {
            return Err(Error::validation("refine_points", "needs at least 3 points"));
        }
        if !(self.tie_tol >= 0.0) {
            return Err(Error::validation("tie_tol", "must be nonnegative"));
        }
        if self.lattice_res < 1 || self.budget < 1 {
            return Err(Error::validation("lattice_res", "lattice and budget must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RefineStep {
    pub pass: usize,
    pub step: f64,
    pub value: f64,
    pub improvement: f64,
}

/// One posterior of the reported splitting.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SplitAtom {
    pub weight: f64,
    /// Over `W1` (or over `U` in the cooperative regime).
    pub posterior: Vec<f64>,
    /// Decoder actions played at this posterior, with their probabilities.
    pub actions: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolveReport {
    pub regime: Regime,
    pub value: f64,
    /// Expected `(c1, c2, c3)` of the witness profile.
    pub costs: [f64; 3],
    pub encoder: Kernel,
    pub relay: Kernel,
    pub decoder: Kernel,
    pub splitting: Vec<SplitAtom>,
    pub constraints: Vec<RateConstraint>,
    pub grid: usize,
    pub refinement_passes: usize,
    pub refinement_trace: Vec<RefineStep>,
    pub converged: bool,
    /// False when the value is an infimum approached but not met by the witness's tie resolution.
    pub attained: bool,
    pub evaluations: usize,
    pub tie_tol: f64,
    pub precondition_violated: bool,
    pub notes: Vec<String>,
    pub elapsed_seconds: Option<f64>,
}

impl SolveReport {
    /// Re-evaluates the witness profile through the joint distribution.
    pub fn reevaluate(&self, spec: &GameSpec) -> Result<[f64; 3]> {
        profile_costs(spec, &self.encoder, &self.relay, &self.decoder)
    }

    /// A comma-free one-line description of the witness.
    pub fn witness_summary(&self) -> String {
        let mut s = String::new();
        for (i, a) in self.splitting.iter().enumerate() {
            if i > 0 {
                s.push_str(" | ");
            }
            let post: Vec<String> = a.posterior.iter().map(|x| format_significant(*x, 9)).collect();
            let acts: Vec<String> = a
                .actions
                .iter()
                .map(|(v, w)| format!("v{v}:{}", format_significant(*w, 9)))
                .collect();
            s.push_str(&format!(
                "w={} q=({}) play={}",
                format_significant(a.weight, 9),
                post.join(" "),
                acts.join("+")
            ));
        }
        s
    }
}

struct Eval {
    value: f64,
    atoms: Vec<Atom>,
    attained: bool,
    proj: ProjectedCosts,
}

fn evaluate(spec: &GameSpec, regime: Regime, enc: &Kernel, tie_tol: f64) -> Option<Eval> {
    if regime.encoder_rate_limited() {
        let mi = mutual_information(&spec.prior_belief(), enc);
        if mi > spec.r1 + RATE_SLACK_TOL {
            return None;
        }
    }
    let proj = project_costs(spec, enc).ok()?;
    let rows = [proj.reachable_rows(1), proj.reachable_rows(2), proj.reachable_rows(3)];
    let prior = proj.reachable_prior();
    let rate = regime.relay_rate_limited().then_some(spec.r2);
    let out = stage_for(regime.rule(), &rows, &prior, spec.v_size, rate, spec.w2_size, tie_tol).solve();
    Some(Eval {
        value: out.max_value,
        atoms: out.atoms,
        attained: out.attained,
        proj,
    })
}

fn value_of(spec: &GameSpec, regime: Regime, enc: &Kernel, tie_tol: f64) -> f64 {
    evaluate(spec, regime, enc, tie_tol).map_or(f64::INFINITY, |e| e.value)
}

fn same(a: &CostMatrix, b: &CostMatrix) -> bool {
    a.approx_eq(b, 1e-12)
}

fn preconditions(spec: &GameSpec, regime: Regime) -> Vec<String> {
    let full = spec.full_rate();
    let mut notes = Vec::new();
    let need_full = |r: f64, name: &str, notes: &mut Vec<String>| {
        if r + RATE_SLACK_TOL < full {
            notes.push(format!("{name} = {r} is below log2|U| = {full}; the regime treats that link as full rate"));
        }
    };
    match regime {
        Regime::Cooperative => {
            if !(same(&spec.cost1, &spec.cost2) && same(&spec.cost2, &spec.cost3)) {
                notes.push("costs differ; the cooperative formula assumes c1 = c2 = c3".into());
            }
        }
        Regime::Unconstrained => {
            need_full(spec.r1, "r1", &mut notes);
            need_full(spec.r2, "r2", &mut notes);
        }
        Regime::RelayRestricted => need_full(spec.r1, "r1", &mut notes),
        Regime::EncoderRestricted => need_full(spec.r2, "r2", &mut notes),
        Regime::EncoderRelay => {
            if !same(&spec.cost1, &spec.cost2) {
                notes.push("c1 and c2 differ; the encoder-relay formula assumes c1 = c2".into());
            }
        }
        Regime::RelayDecoder => {
            if !same(&spec.cost2, &spec.cost3) {
                notes.push("c2 and c3 differ; the relay-decoder formula assumes c2 = c3".into());
            }
        }
    }
    notes
}

#[cfg(feature = "std")]
struct Clock(std::time::Instant);
#[cfg(feature = "std")]
impl Clock {
    fn start() -> Self {
        Clock(std::time::Instant::now())
    }
    fn seconds(&self) -> Option<f64> {
        Some(self.0.elapsed().as_secs_f64())
    }
}
#[cfg(not(feature = "std"))]
struct Clock;
#[cfg(not(feature = "std"))]
impl Clock {
    fn start() -> Self {
        Clock
    }
    fn seconds(&self) -> Option<f64> {
        None
    }
}

struct Search {
    encoder: Kernel,
    value: f64,
    trace: Vec<RefineStep>,
    converged: bool,
    evaluations: usize,
    grid: usize,
}

fn search_binary(spec: &GameSpec, regime: Regime, opts: &SolveOptions) -> Search {
    let n = opts.grid;
    let step = 1.0 / (n - 1) as f64;
    let vals = map_indexed(n * n, |i| {
        let (a, b) = ((i / n) as f64 * step, (i % n) as f64 * step);
        value_of(spec, regime, &Kernel::binary(a, b).expect("grid point"), opts.tie_tol)
    });
    let mut best_i = 0;
    for (i, v) in vals.iter().enumerate() {
        if *v < vals[best_i] {
            best_i = i;
        }
    }
    let mut best = ((best_i / n) as f64 * step, (best_i % n) as f64 * step, vals[best_i]);
    let mut evaluations = n * n;
    for k in warm_starts(spec, opts) {
        let (a, b) = (k.get(0, 1), k.get(1, 0));
        let v = value_of(spec, regime, &Kernel::binary(a, b).expect("warm start"), opts.tie_tol);
        evaluations += 1;
        if v < best.2 {
            best = (a, b, v);
        }
    }
    let mut trace = vec![RefineStep { pass: 0, step, value: best.2, improvement: 0.0 }];
    let mut h = step;
    let m = opts.refine_points;
    for pass in 1..=opts.refine_passes {
        if !best.2.is_finite() {
            break;
        }
        let (lo_a, hi_a) = ((best.0 - h).max(0.0), (best.0 + h).min(1.0));
        let (lo_b, hi_b) = ((best.1 - h).max(0.0), (best.1 + h).min(1.0));
        let da = (hi_a - lo_a) / (m - 1) as f64;
        let db = (hi_b - lo_b) / (m - 1) as f64;
        let local = map_indexed(m * m, |i| {
            let (a, b) = (lo_a + (i / m) as f64 * da, lo_b + (i % m) as f64 * db);
            (a, b, value_of(spec, regime, &Kernel::binary(a, b).expect("grid point"), opts.tie_tol))
        });
        evaluations += m * m;
        let before = best.2;
        for c in local {
            if c.2 < best.2 {
                best = c;
            }
        }
        h = da.max(db);
        trace.push(RefineStep { pass, step: h, value: best.2, improvement: before - best.2 });
    }
    let converged = trace.last().is_none_or(|t| t.improvement <= opts.refine_tol);
    Search {
        encoder: Kernel::binary(best.0, best.1).expect("grid point"),
        value: best.2,
        trace,
        converged,
        evaluations,
        grid: n,
    }
}

fn warm_starts<'a>(spec: &GameSpec, opts: &'a SolveOptions) -> impl Iterator<Item = &'a Kernel> {
    let shape = (spec.u_size, spec.w1_size);
    opts.warm_start.iter().filter(move |k| (k.rows(), k.cols()) == shape)
}

fn kernel_from_rows(rows: &[&Vec<f64>]) -> Kernel {
    let cols = rows[0].len();
    Kernel::from_rows_normalized(rows.len(), cols, rows.iter().flat_map(|r| r.iter().copied()).collect())
}

fn search_general(spec: &GameSpec, regime: Regime, opts: &SolveOptions) -> Search {
    let nu = spec.u_size;
    let nw = spec.w1_size;
    let lattice = simplex_lattice(nw, opts.lattice_res);
    let m = lattice.len();
    let total = libm::pow(m as f64, nu as f64);
    let candidates: Vec<Vec<usize>> = if total <= opts.budget as f64 {
        (0..total as usize)
            .map(|mut i| {
                (0..nu)
                    .map(|_| {
                        let r = i % m;
                        i /= m;
                        r
                    })
                    .collect()
            })
            .collect()
    } else {
        // Deterministic kernels first, then a seeded subsample of the lattice.
        let vertices: Vec<usize> = (0..m).filter(|&i| lattice[i].contains(&1.0)).collect();
        let mut out = Vec::with_capacity(opts.budget);
        let nvert = libm::pow(vertices.len() as f64, nu as f64);
        if nvert <= (opts.budget / 2) as f64 {
            for mut i in 0..nvert as usize {
                out.push(
                    (0..nu)
                        .map(|_| {
                            let r = vertices[i % vertices.len()];
                            i /= vertices.len();
                            r
                        })
                        .collect(),
                );
            }
        }
        let uninformative: Vec<usize> = vec![vertices[0]; nu];
        out.push(uninformative);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        while out.len() < opts.budget {
            out.push((0..nu).map(|_| rng.gen_range(0..m)).collect());
        }
        out
    };
    let vals = map_indexed(candidates.len(), |i| {
        let rows: Vec<&Vec<f64>> = candidates[i].iter().map(|&r| &lattice[r]).collect();
        value_of(spec, regime, &kernel_from_rows(&rows), opts.tie_tol)
    });
    let mut best_i = 0;
    for (i, v) in vals.iter().enumerate() {
        if *v < vals[best_i] {
            best_i = i;
        }
    }
    let mut evaluations = candidates.len();
    let mut rows: Vec<Vec<f64>> = candidates[best_i].iter().map(|&r| lattice[r].clone()).collect();
    let mut best = vals[best_i];
    for k in warm_starts(spec, opts) {
        let v = value_of(spec, regime, k, opts.tie_tol);
        evaluations += 1;
        if v < best {
            best = v;
            rows = (0..nu).map(|u| k.row(u).to_vec()).collect();
        }
    }
    let mut trace = vec![RefineStep { pass: 0, step: 1.0 / opts.lattice_res as f64, value: best, improvement: 0.0 }];
    // Pattern search: move probability mass between two entries of one row.
    let mut step = 1.0 / opts.lattice_res as f64;
    for pass in 1..=opts.refine_passes {
        step /= 2.0;
        let before = best;
        for _ in 0..50 {
            let mut improved = false;
            for u in 0..nu {
                for a in 0..nw {
                    for b in 0..nw {
                        if a == b || rows[u][a] < step - 1e-15 {
                            continue;
                        }
                        let mut trial = rows.clone();
                        trial[u][a] -= step;
                        trial[u][b] += step;
                        let refs: Vec<&Vec<f64>> = trial.iter().collect();
                        let v = value_of(spec, regime, &kernel_from_rows(&refs), opts.tie_tol);
                        evaluations += 1;
                        if v < best - 1e-12 {
                            best = v;
                            rows = trial;
                            improved = true;
                        }
                    }
                }
            }
            if !improved {
                break;
            }
        }
        trace.push(RefineStep { pass, step, value: best, improvement: before - best });
    }
    let refs: Vec<&Vec<f64>> = rows.iter().collect();
    Search {
        encoder: kernel_from_rows(&refs),
        value: best,
        converged: trace.last().is_none_or(|t| t.improvement <= opts.refine_tol),
        trace,
        evaluations,
        grid: opts.lattice_res,
    }
}

fn split_atoms(merged: &[(f64, Vec<f64>, Vec<(usize, f64)>)], proj: &ProjectedCosts) -> Vec<SplitAtom> {
    let nx = proj.w1_marginal.len();
    merged
        .iter()
        .map(|(w, q, acts)| {
            let mut full = vec![0.0; nx];
            for (i, &x) in proj.reachable.iter().enumerate() {
                full[x] = q[i];
            }
            SplitAtom {
                weight: *w,
                posterior: full,
                actions: acts.iter().map(|(v, a)| (*v, a / w)).collect(),
            }
        })
        .collect()
}

fn finish(
    spec: &GameSpec,
    regime: Regime,
    opts: &SolveOptions,
    clock: Clock,
    search: Search,
    eval: Eval,
    kernels: (Kernel, Kernel, Kernel),
    splitting: Vec<SplitAtom>,
) -> Result<SolveReport> {
    let (encoder, relay, decoder) = kernels;
    let costs = profile_costs(spec, &encoder, &relay, &decoder)?;
    let mut notes = preconditions(spec, regime);
    let precondition_violated = !notes.is_empty();
    if abs(costs[0] - eval.value) > 1e-8 {
        notes.push(format!(
            "witness re-evaluates to {} against the stage value {}",
            costs[0], eval.value
        ));
    }
    if abs(search.value - eval.value) > 1e-8 {
        notes.push(format!("search value {} differs from the re-solved stage value {}", search.value, eval.value));
    }
    if !search.converged {
        notes.push("last refinement pass still improved the value by more than the refinement tolerance".into());
    }
    let constraints = is_feasible(spec, &encoder, &relay, regime)?.constraints;
    Ok(SolveReport {
        regime,
        value: eval.value,
        costs,
        encoder,
        relay,
        decoder,
        splitting,
        constraints,
        grid: search.grid,
        refinement_passes: opts.refine_passes,
        refinement_trace: search.trace,
        converged: search.converged,
        attained: eval.attained,
        evaluations: search.evaluations,
        tie_tol: opts.tie_tol,
        precondition_violated,
        notes,
        elapsed_seconds: clock.seconds(),
    })
}

fn solve_encoder_regime(spec: &GameSpec, regime: Regime, opts: &SolveOptions) -> Result<SolveReport> {
    spec.validate()?;
    opts.validate()?;
    let clock = Clock::start();
    let search = if spec.u_size == 2 && spec.w1_size == 2 {
        search_binary(spec, regime, opts)
    } else {
        search_general(spec, regime, opts)
    };
    let eval = evaluate(spec, regime, &search.encoder, opts.tie_tol)
        .ok_or_else(|| Error::Infeasible("no encoder kernel satisfies the rate bound".into()))?;
    let (relay, decoder, merged) = witness_kernels(&eval.proj, &eval.atoms, spec.w2_size, spec.v_size)?;
    let splitting = split_atoms(&merged, &eval.proj);
    let encoder = search.encoder.clone();
    finish(spec, regime, opts, clock, search, eval, (encoder, relay, decoder), splitting)
}

/// `inf` over end-to-end kernels `Q_{W2|U}` within `min(R1, R2)` of the
/// decoder's worst-case `c1`.
pub fn solve_cooperative(spec: &GameSpec, opts: &SolveOptions) -> Result<SolveReport> {
    spec.validate()?;
    opts.validate()?;
    let clock = Clock::start();
    let id = Kernel::identity(spec.u_size);
    let proj = project_costs(spec, &id)?;
    let rows = [proj.reachable_rows(1), proj.reachable_rows(2), proj.reachable_rows(3)];
    let prior = proj.reachable_prior();
    let width = spec.w1_size.min(spec.w2_size);
    let rate = Some(spec.r1.min(spec.r2));
    let out = stage_for(Rule::Joint, &rows, &prior, spec.v_size, rate, width, opts.tie_tol).solve();
    let (end_to_end, dec, merged) = witness_kernels(&proj, &out.atoms, width, spec.v_size)?;
    // Route Q_{W2|U} through the encoder; the relay forwards symbols unchanged.
    let mut enc = vec![0.0; spec.u_size * spec.w1_size];
    for u in 0..spec.u_size {
        for w in 0..width {
            enc[u * spec.w1_size + w] = end_to_end.get(u, w);
        }
    }
    let mut relay = vec![0.0; spec.w1_size * spec.w2_size];
    for a in 0..spec.w1_size {
        relay[a * spec.w2_size + if a < width { a } else { 0 }] = 1.0;
    }
    let mut decoder = vec![0.0; spec.w2_size * spec.v_size];
    for b in 0..spec.w2_size {
        if b < width {
            decoder[b * spec.v_size..(b + 1) * spec.v_size].copy_from_slice(dec.row(b));
        } else {
            decoder[b * spec.v_size] = 1.0;
        }
    }
    let kernels = (
        Kernel::from_rows_normalized(spec.u_size, spec.w1_size, enc),
        Kernel::from_rows_normalized(spec.w1_size, spec.w2_size, relay),
        Kernel::from_rows_normalized(spec.w2_size, spec.v_size, decoder),
    );
    let splitting = split_atoms(&merged, &proj);
    let search = Search {
        encoder: kernels.0.clone(),
        value: out.max_value,
        trace: Vec::new(),
        converged: true,
        evaluations: 1,
        grid: 0,
    };
    let eval = Eval { value: out.max_value, atoms: out.atoms, attained: out.attained, proj };
    finish(spec, Regime::Cooperative, opts, clock, search, eval, kernels, splitting)
}

/// Full-rate persuasion through a strategic relay.
pub fn solve_unconstrained(spec: &GameSpec, opts: &SolveOptions) -> Result<SolveReport> {
    solve_encoder_regime(spec, Regime::Unconstrained, opts)
}

/// Strategic relay bounded by `R2 ≥ I(W1;W2)`.
pub fn solve_relay_restricted(spec: &GameSpec, opts: &SolveOptions) -> Result<SolveReport> {
    solve_encoder_regime(spec, Regime::RelayRestricted, opts)
}

/// Encoder bounded by `R1 ≥ I(U;W1)`, relay unconstrained.
pub fn solve_encoder_restricted(spec: &GameSpec, opts: &SolveOptions) -> Result<SolveReport> {
    solve_encoder_regime(spec, Regime::EncoderRestricted, opts)
}

/// Encoder and relay choose their kernels jointly under both rate bounds.
pub fn solve_encoder_relay_coop(spec: &GameSpec, opts: &SolveOptions) -> Result<SolveReport> {
    solve_encoder_regime(spec, Regime::EncoderRelay, opts)
}

/// Relay and decoder minimize `c2` together; the encoder faces their worst optimum.
pub fn solve_relay_decoder_coop(spec: &GameSpec, opts: &SolveOptions) -> Result<SolveReport> {
    solve_encoder_regime(spec, Regime::RelayDecoder, opts)
}

pub fn solve(spec: &GameSpec, regime: Regime, opts: &SolveOptions) -> Result<SolveReport> {
    match regime {
        Regime::Cooperative => solve_cooperative(spec, opts),
        r => solve_encoder_regime(spec, r, opts),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SweepParam {
    /// `P(u1)` of a binary source.
    P0,
    R1,
    R2,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::P0 => "p0",
            SweepParam::R1 => "r1",
            SweepParam::R2 => "r2",
        }
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "p0" | "prior_p0" | "prior-p0" => Ok(SweepParam::P0),
            "r1" => Ok(SweepParam::R1),
            "r2" => Ok(SweepParam::R2),
            other => Err(Error::validation("param", format!("unknown sweep parameter `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub param: f64,
    pub report: SolveReport,
}

/// Solves `regime` at `steps` evenly spaced values of one parameter.
pub fn sweep(
    spec: &GameSpec,
    param: SweepParam,
    from: f64,
    to: f64,
    steps: usize,
    regime: Regime,
    opts: &SolveOptions,
) -> Result<Vec<SweepRow>> {
    if steps == 0 {
        return Err(Error::InvalidRange("steps must be at least 1".into()));
    }
    if !from.is_finite() || !to.is_finite() {
        return Err(Error::InvalidRange("range ends must be finite".into()));
    }
    let (lo, hi) = (from.min(to), from.max(to));
    match param {
        SweepParam::P0 if lo < 0.0 || hi > 1.0 => {
            return Err(Error::InvalidRange(format!("p0 range [{lo}, {hi}] leaves [0, 1]")))
        }
        SweepParam::R1 | SweepParam::R2 if lo < 0.0 => {
            return Err(Error::InvalidRange(format!("rate range [{lo}, {hi}] goes negative")))
        }
        _ => {}
    }
    // Each solve also tries the previous witness encoder, so a widening rate
    // never loses a kernel that was already feasible.
    let mut opts = opts.clone();
    let mut rows: Vec<SweepRow> = Vec::with_capacity(steps);
    for i in 0..steps {
        let x = if steps == 1 { from } else { from + (to - from) * i as f64 / (steps - 1) as f64 };
        let s = match param {
            SweepParam::P0 => spec.with_binary_prior(x)?,
            SweepParam::R1 => GameSpec { r1: x, ..spec.clone() },
            SweepParam::R2 => GameSpec { r2: x, ..spec.clone() },
        };
        let report = solve(&s, regime, &opts)?;
        opts.warm_start = vec![report.encoder.clone()];
        rows.push(SweepRow { param: x, report });
    }
    Ok(rows)
}

/// Sweep rows as CSV with header `param,value,witness_summary`.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("param,value,witness_summary\n");
    for r in rows {
        out.push_str(&format_significant(r.param, 10));
        out.push(',');
        out.push_str(&format_significant(r.report.value, 10));
        out.push(',');
        out.push_str(&r.report.witness_summary().replace(',', ";"));
        out.push('\n');
    }
    out
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "regime: {}", self.regime)?;
        writeln!(f, "value: {}", format_significant(self.value, 10))?;
        writeln!(f, "witness: {}", self.witness_summary())?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

#[doc(hidden)]
pub fn regime_names() -> Vec<String> {
    Regime::ALL.iter().map(|r| r.name().to_string()).collect()
}
