//! Solvers for Stackelberg persuasion games played over a three-node cascade
//! (encoder → relay → decoder), where every agent has its own cost over
//! (source symbol, decoder action).
//!
//! The crate is `no_std` (it needs `alloc`). Enable `std` for
//! `std::error::Error` impls and `parallel` for rayon-backed grid evaluation.
//!
//! Layout:
//!
//! * [`game_model`] – game instances, kernels, joint distributions, expected costs.
//! * [`belief`] – Bayesian posteriors and splittings of a prior.
//! * [`best_response`] – decoder/relay best responses and worst-case selection.
//! * [`envelope`] – lower convex envelopes of belief-indexed costs.
//! * [`info`] – entropy, mutual information and rate-feasibility checks.
//! * [`solvers`] – the six optimal-cost regimes and parameter sweeps.
//! * [`oracle`] – brute-force enumeration used as independent ground truth.
//! * [`simulate`] – seeded n-letter Monte Carlo play of per-letter strategies.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod belief;
pub mod best_response;
pub mod envelope;
mod error;
pub mod game_model;
pub mod info;
mod lp;
mod numeric;
pub mod oracle;
mod par;
mod stage;
pub mod simulate;
pub mod solvers;

pub use error::{Error, Result};
pub use game_model::{CostMatrix, GameSpec, JointDistribution, Kernel};
pub use belief::{Alphabet, Belief, Splitting};
pub use solvers::{Regime, SolveOptions, SolveReport};

/// Tolerance for probability vectors supplied by the caller.
pub const PROB_TOL: f64 = 1e-12;
/// Tolerance for normalization of derived distributions.
pub const DERIVED_TOL: f64 = 1e-10;
/// Tolerance for Markov-chain residuals and Bayes plausibility.
pub const MARKOV_TOL: f64 = 1e-9;
/// Default tie tolerance for best-response sets.
pub const DEFAULT_TIE_TOL: f64 = 1e-9;
/// Slack below which a rate constraint counts as violated.
pub const RATE_SLACK_TOL: f64 = 1e-9;
