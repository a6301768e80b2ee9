//! Entropy and mutual information in bits, and the rate constraints each
//! regime imposes on the auxiliary kernels.

use alloc::format;
use alloc::vec::Vec;

use crate::belief::{Belief, Splitting};
use crate::game_model::{GameSpec, Kernel};
use crate::numeric::plogp;
use crate::solvers::Regime;
use crate::{Error, Result, RATE_SLACK_TOL};

/// The constraint profiles coincide with the solver regimes.
pub type Profile = Regime;

pub fn parse_profile(name: &str) -> Result<Profile> {
    name.parse::<Regime>()
        .map_err(|_| Error::UnknownProfile(name.into()))
}

/// `H(p)` in bits.
pub fn entropy(p: &[f64]) -> f64 {
    p.iter().map(|&x| plogp(x)).sum()
}

pub fn binary_entropy(q: f64) -> f64 {
    plogp(q) + plogp(1.0 - q)
}

/// `I(X;Y)` in bits for `X ~ input` and `Y` the output of `channel`.
pub fn mutual_information(input: &Belief, channel: &Kernel) -> f64 {
    let out = channel.push_forward(input.p());
    let mut info = 0.0;
    for (a, &pa) in input.p().iter().enumerate() {
        if pa <= 0.0 {
            continue;
        }
        for (b, &pb) in out.iter().enumerate() {
            let w = channel.get(a, b);
            if w > 0.0 && pb > 0.0 {
                info += pa * w * crate::numeric::log2(w / pb);
            }
        }
    }
    info.max(0.0)
}

/// Information a splitting reveals: `H(prior) − Σ λ H(posterior)`.
pub fn splitting_information(s: &Splitting) -> f64 {
    let posterior_entropy: f64 = s.atoms().iter().map(|(w, b)| w * entropy(b.p())).sum();
    (entropy(s.prior().p()) - posterior_entropy).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum InfoTerm {
    /// `I(U;W1)`, the encoder's link.
    UW1,
    /// `I(U;W2)`, end to end.
    UW2,
    /// `I(W1;W2)`, the relay's link.
    W1W2,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RateConstraint {
    pub term: InfoTerm,
    pub bound: f64,
    pub information: f64,
    /// `bound − information`.
    pub slack: f64,
}

impl RateConstraint {
    pub fn new(term: InfoTerm, bound: f64, information: f64) -> Self {
        Self {
            term,
            bound,
            information,
            slack: bound - information,
        }
    }

    pub fn satisfied(&self) -> bool {
        self.slack >= -RATE_SLACK_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Feasibility {
    pub feasible: bool,
    pub constraints: Vec<RateConstraint>,
}

/// Which information terms a regime bounds, and by which rate.
pub fn constraint_terms(spec: &GameSpec, profile: Profile) -> Vec<(InfoTerm, f64)> {
    match profile {
        Regime::Unconstrained => Vec::new(),
        Regime::Cooperative => alloc::vec![(InfoTerm::UW2, spec.r1.min(spec.r2))],
        Regime::EncoderRestricted => alloc::vec![(InfoTerm::UW1, spec.r1)],
        Regime::RelayRestricted => alloc::vec![(InfoTerm::W1W2, spec.r2)],
        Regime::EncoderRelay | Regime::RelayDecoder => {
            alloc::vec![(InfoTerm::UW1, spec.r1), (InfoTerm::W1W2, spec.r2)]
        }
    }
}

/// Checks the encoder and relay kernels against a regime's rate bounds.
pub fn is_feasible(spec: &GameSpec, encoder: &Kernel, relay: &Kernel, profile: Profile) -> Result<Feasibility> {
    if encoder.rows() != spec.u_size || encoder.cols() != relay.rows() {
        return Err(Error::Shape(format!(
            "encoder {}×{} and relay {}×{} do not chain from |U| = {}",
            encoder.rows(),
            encoder.cols(),
            relay.rows(),
            relay.cols(),
            spec.u_size
        )));
    }
    let prior = spec.prior_belief();
    let mut constraints = Vec::new();
    for (term, bound) in constraint_terms(spec, profile) {
        let info = match term {
            InfoTerm::UW1 => mutual_information(&prior, encoder),
            InfoTerm::UW2 => mutual_information(&prior, &encoder.compose(relay)?),
            InfoTerm::W1W2 => {
                let w1 = Belief::new_unchecked(crate::belief::Alphabet::W1, encoder.push_forward(prior.p()));
                mutual_information(&w1, relay)
            }
        };
        constraints.push(RateConstraint::new(term, bound, info));
    }
    Ok(Feasibility {
        feasible: constraints.iter().all(RateConstraint::satisfied),
        constraints,
    })
}
