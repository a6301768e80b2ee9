//! Posteriors, binary belief parameters and splittings of a prior.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::game_model::Kernel;
use crate::lp::{self, LinearProgram, LpOutcome};
use crate::numeric::{abs, min_norm_solve};
use crate::{Error, Result, DERIVED_TOL, MARKOV_TOL, PROB_TOL};

/// Which random variable a belief is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Alphabet {
    U,
    W1,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Belief {
    alphabet: Alphabet,
    p: Vec<f64>,
}

impl Belief {
    pub fn new(alphabet: Alphabet, p: Vec<f64>) -> Result<Self> {
        check_distribution("belief", &p, PROB_TOL)?;
        Ok(Self { alphabet, p })
    }

    /// Skips validation; used for derived beliefs that are normalized by construction.
    pub(crate) fn new_unchecked(alphabet: Alphabet, p: Vec<f64>) -> Self {
        Self { alphabet, p }
    }

    /// Binary belief with `P(symbol 1) = q`.
    pub fn binary(alphabet: Alphabet, q: f64) -> Result<Self> {
        Self::new(alphabet, vec![1.0 - q, q])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// `P(symbol 1)`, the usual coordinate for binary beliefs.
    pub fn q1(&self) -> f64 {
        self.p[1]
    }
}

fn check_distribution(name: &str, p: &[f64], tol: f64) -> Result<()> {
    if p.is_empty() {
        return Err(Error::validation(name, "empty distribution"));
    }
    if let Some(i) = p.iter().position(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::validation(format!("{name}[{i}]"), "must be finite and nonnegative"));
    }
    let s: f64 = p.iter().sum();
    if abs(s - 1.0) > tol {
        return Err(Error::validation(name, format!("sums to {s}, expected 1")));
    }
    Ok(())
}

/// A Bayes-plausible decomposition of a prior into weighted posteriors.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Splitting {
    prior: Belief,
    atoms: Vec<(f64, Belief)>,
}

impl Splitting {
    pub fn new(prior: Belief, atoms: Vec<(f64, Belief)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::validation("splitting", "no posteriors"));
        }
        let weights: Vec<f64> = atoms.iter().map(|a| a.0).collect();
        check_distribution("splitting.weights", &weights, DERIVED_TOL)?;
        if atoms.iter().any(|(_, b)| b.len() != prior.len()) {
            return Err(Error::Shape("posterior and prior sizes differ".into()));
        }
        let s = Self { prior, atoms };
        let gap = s.plausibility_gap();
        if gap > MARKOV_TOL {
            return Err(Error::Infeasible(format!(
                "barycenter misses the prior by {gap:e}"
            )));
        }
        Ok(s)
    }

    /// The uninformative splitting.
    pub fn trivial(prior: Belief) -> Self {
        let atoms = vec![(1.0, prior.clone())];
        Self { prior, atoms }
    }

    pub fn prior(&self) -> &Belief {
        &self.prior
    }

    pub fn atoms(&self) -> &[(f64, Belief)] {
        &self.atoms
    }

    pub fn barycenter(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.prior.len()];
        for (w, b) in &self.atoms {
            for (o, x) in out.iter_mut().zip(b.p()) {
                *o += w * x;
            }
        }
        out
    }

    /// `max |Σ λ q − p|`.
    pub fn plausibility_gap(&self) -> f64 {
        self.barycenter()
            .iter()
            .zip(self.prior.p())
            .map(|(a, b)| abs(a - b))
            .fold(0.0, f64::max)
    }
}

/// `P(input | observation)` when the input is drawn from `prior` and sent
/// through `channel`.
pub fn posterior(prior: &Belief, channel: &Kernel, observation: usize) -> Result<Belief> {
    if channel.rows() != prior.len() {
        return Err(Error::Shape(format!(
            "prior has {} symbols, channel expects {}",
            prior.len(),
            channel.rows()
        )));
    }
    if observation >= channel.cols() {
        return Err(Error::Shape(format!(
            "observation {observation} out of range for {} outputs",
            channel.cols()
        )));
    }
    let joint: Vec<f64> = prior
        .p()
        .iter()
        .enumerate()
        .map(|(a, pa)| pa * channel.get(a, observation))
        .collect();
    let total: f64 = joint.iter().sum();
    if total <= 0.0 {
        return Err(Error::UnreachableObservation { index: observation });
    }
    Ok(Belief::new_unchecked(
        prior.alphabet(),
        joint.into_iter().map(|x| x / total).collect(),
    ))
}

/// The splitting a channel induces on its input prior: output marginals as
/// weights, posteriors as atoms. Unreachable outputs are dropped.
pub fn induced_splitting(prior: &Belief, channel: &Kernel) -> Result<Splitting> {
    let marginal = channel.push_forward(prior.p());
    let mut atoms = Vec::new();
    for (b, &w) in marginal.iter().enumerate() {
        if w > 0.0 {
            atoms.push((w, posterior(prior, channel, b)?));
        }
    }
    Splitting::new(prior.clone(), atoms)
}

/// `p1(α, β) = (1 − p0)·α + p0·(1 − β)`: probability the encoder emits
/// symbol 1 under the binary kernel `[[1−α, α], [β, 1−β]]`.
pub fn induced_w1_marginal(p0: f64, alpha: f64, beta: f64) -> f64 {
    (1.0 - p0) * alpha + p0 * (1.0 - beta)
}

/// Weights that split `prior` into `posteriors`. With more posteriors than
/// needed the minimum-norm solution is used, falling back to a feasibility
/// LP when that solution has negative entries.
pub fn split_weights(prior: &Belief, posteriors: &[Belief]) -> Result<Splitting> {
    let k = prior.len();
    let m = posteriors.len();
    if m == 0 {
        return Err(Error::Infeasible("no posteriors supplied".into()));
    }
    if posteriors.iter().any(|b| b.len() != k) {
        return Err(Error::Shape("posterior and prior sizes differ".into()));
    }
    // Rows: each coordinate, then the weight normalization.
    let rows = k + 1;
    let mut a = vec![0.0; rows * m];
    let mut rhs = vec![0.0; rows];
    for x in 0..k {
        for (j, b) in posteriors.iter().enumerate() {
            a[x * m + j] = b.p()[x];
        }
        rhs[x] = prior.p()[x];
    }
    for j in 0..m {
        a[k * m + j] = 1.0;
    }
    rhs[k] = 1.0;

    let (w, residual) = min_norm_solve(&a, &rhs, rows, m);
    let weights = if residual <= MARKOV_TOL && w.iter().all(|x| *x >= -1e-12) {
        w
    } else {
        let lp = LinearProgram {
            cost: vec![0.0; m],
            a_eq: (0..rows).map(|r| a[r * m..(r + 1) * m].to_vec()).collect(),
            b_eq: rhs,
            ..Default::default()
        };
        match lp::minimize(&lp) {
            LpOutcome::Optimal { x, .. } => x,
            _ => {
                return Err(Error::Infeasible(
                    "prior lies outside the convex hull of the posteriors".into(),
                ))
            }
        }
    };
    let total: f64 = weights.iter().map(|x| x.max(0.0)).sum();
    let atoms = weights
        .iter()
        .zip(posteriors)
        .map(|(w, b)| (w.max(0.0) / total, b.clone()))
        .collect();
    Splitting::new(prior.clone(), atoms).map_err(|_| {
        Error::Infeasible("prior lies outside the convex hull of the posteriors".into())
    })
}

/// Parameters `(γ, δ)` of the binary relay kernel `[[1−γ, γ], [δ, 1−δ]]`
/// that splits the relay-input belief `p1` into posteriors `q0 < q1`.
pub fn relay_params_for_split(p1: f64, q0: f64, q1: f64) -> Result<(f64, f64)> {
    let ordered = (0.0..=1.0).contains(&q0) && q0 <= p1 && p1 <= q1 && q1 <= 1.0 && q0 < q1;
    if !ordered || p1 <= 0.0 || p1 >= 1.0 {
        return Err(Error::Infeasible(format!(
            "need 0 ≤ q0 ≤ p1 ≤ q1 ≤ 1 with q0 < q1 and 0 < p1 < 1, got ({q0}, {p1}, {q1})"
        )));
    }
    let gamma = (1.0 - q1) * (p1 - q0) / ((1.0 - p1) * (q1 - q0));
    let delta = q0 * (q1 - p1) / (p1 * (q1 - q0));
    Ok((gamma.clamp(0.0, 1.0), delta.clamp(0.0, 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(p: &[f64]) -> Belief {
        Belief::new(Alphabet::U, p.to_vec()).unwrap()
    }

    #[test]
    fn noiseless_posterior() {
        let b = posterior(&u(&[0.6, 0.4]), &Kernel::identity(2), 1).unwrap();
        assert_eq!(b.p(), &[0.0, 1.0]);
    }

    #[test]
    fn encoder_posterior_matches_closed_form() {
        let k = Kernel::binary(0.3, 0.6).unwrap();
        let b = posterior(&u(&[0.6, 0.4]), &k, 1).unwrap();
        assert!((b.q1() - 0.16 / 0.34).abs() < 1e-12);
    }

    #[test]
    fn mixing_channel_keeps_prior() {
        let b = posterior(&u(&[0.5, 0.5]), &Kernel::uniform(2, 2), 0).unwrap();
        assert!((b.q1() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn unreachable_observation_is_an_error() {
        let r = posterior(&u(&[1.0, 0.0]), &Kernel::identity(2), 1);
        assert_eq!(r, Err(Error::UnreachableObservation { index: 1 }));
    }

    #[test]
    fn w1_marginal() {
        assert!((induced_w1_marginal(0.4, 0.3, 0.6) - 0.34).abs() < 1e-15);
        assert_eq!(induced_w1_marginal(0.4, 0.0, 1.0), 0.0);
        assert!((induced_w1_marginal(0.9, 0.25, 0.75) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn split_weight_examples() {
        let s = split_weights(&u(&[0.6, 0.4]), &[u(&[1.0, 0.0]), u(&[0.0, 1.0])]).unwrap();
        assert!((s.atoms()[0].0 - 0.6).abs() < 1e-12);

        let p = Belief::binary(Alphabet::W1, 0.34).unwrap();
        let s = split_weights(
            &p,
            &[Belief::binary(Alphabet::W1, 0.0).unwrap(), Belief::binary(Alphabet::W1, 0.6).unwrap()],
        )
        .unwrap();
        assert!((s.atoms()[0].0 - 0.26 / 0.6).abs() < 1e-12);
        assert!((s.atoms()[1].0 - 0.34 / 0.6).abs() < 1e-12);

        let bad = split_weights(&u(&[0.6, 0.4]), &[u(&[0.5, 0.5]), u(&[0.1, 0.9])]);
        assert!(matches!(bad, Err(Error::Infeasible(_))));
    }

    #[test]
    fn min_norm_fallback_stays_nonnegative() {
        // Three posteriors where the min-norm solution goes negative.
        let s = split_weights(
            &Belief::binary(Alphabet::U, 0.05).unwrap(),
            &[
                Belief::binary(Alphabet::U, 0.0).unwrap(),
                Belief::binary(Alphabet::U, 0.9).unwrap(),
                Belief::binary(Alphabet::U, 1.0).unwrap(),
            ],
        )
        .unwrap();
        assert!(s.atoms().iter().all(|(w, _)| *w >= 0.0));
        assert!(s.plausibility_gap() < 1e-9);
    }

    #[test]
    fn relay_parameters() {
        assert_eq!(relay_params_for_split(0.3, 0.0, 1.0).unwrap(), (0.0, 0.0));
        let (g, d) = relay_params_for_split(0.34, 0.0, 0.6).unwrap();
        assert!((g - 0.4 * 0.34 / (0.66 * 0.6)).abs() < 1e-12);
        assert_eq!(d, 0.0);
        let relay = Kernel::binary(g, d).unwrap();
        let p = Belief::binary(Alphabet::W1, 0.34).unwrap();
        assert!(posterior(&p, &relay, 0).unwrap().q1().abs() < 1e-12);
        assert!((posterior(&p, &relay, 1).unwrap().q1() - 0.6).abs() < 1e-12);
        assert!(relay_params_for_split(0.4, 0.4, 0.4).is_err());
    }
}
