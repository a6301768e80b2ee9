//! Monte Carlo play of per-letter strategies over blocks of i.i.d. source
//! symbols. Each trial draws its own stream from a ChaCha20 generator keyed
//! by the run seed, so results do not depend on scheduling.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::game_model::{profile_costs, GameSpec, Kernel};
use crate::numeric::{pairwise_sum, sqrt};
use crate::par::map_indexed;
use crate::{Error, Result};

pub const RNG_ALGORITHM: &str = "chacha20";

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Block length.
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub encoder: Kernel,
    pub relay: Kernel,
    pub decoder: Kernel,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimResult {
    pub rng: &'static str,
    pub seed: u64,
    pub n: usize,
    pub trials: usize,
    /// Mean over trials of the per-block average cost, for `c1`, `c2`, `c3`.
    pub means: [f64; 3],
    /// Standard deviation of the trial means divided by `√trials`.
    pub std_errors: [f64; 3],
    /// Single-letter expectations under the same kernels.
    pub expected: [f64; 3],
    /// Counts of `(u, v)` pairs over all letters, row-major in `u`.
    pub uv_counts: Vec<u64>,
}

impl SimResult {
    /// `|mean − expected| ≤ k · std_error` for every cost.
    pub fn within(&self, k: f64) -> [bool; 3] {
        let mut out = [false; 3];
        for i in 0..3 {
            out[i] = crate::numeric::abs(self.means[i] - self.expected[i]) <= k * self.std_errors[i] + 1e-12;
        }
        out
    }

    /// Total variation between the empirical `(U, V)` type and `target`.
    pub fn uv_total_variation(&self, target: &[f64]) -> f64 {
        let total: u64 = self.uv_counts.iter().sum();
        0.5 * self
            .uv_counts
            .iter()
            .zip(target)
            .map(|(c, t)| crate::numeric::abs(*c as f64 / total as f64 - t))
            .sum::<f64>()
    }
}

fn cdf(row: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut out: Vec<f64> = row
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect();
    if let Some(last) = out.last_mut() {
        *last = f64::INFINITY;
    }
    out
}

fn kernel_cdfs(k: &Kernel) -> Vec<Vec<f64>> {
    (0..k.rows()).map(|r| cdf(k.row(r))).collect()
}

#[inline]
fn draw(c: &[f64], x: f64) -> usize {
    c.iter().position(|t| x < *t).unwrap_or(c.len() - 1)
}

pub fn run(spec: &GameSpec, sim: &SimConfig) -> Result<SimResult> {
    spec.validate()?;
    if sim.n == 0 {
        return Err(Error::validation("n", "block length must be at least 1"));
    }
    if sim.trials == 0 {
        return Err(Error::validation("trials", "need at least one trial"));
    }
    // Shapes are checked here too.
    let expected = profile_costs(spec, &sim.encoder, &sim.relay, &sim.decoder)?;
    let src = cdf(&spec.prior);
    let (k1, k2, k3) = (kernel_cdfs(&sim.encoder), kernel_cdfs(&sim.relay), kernel_cdfs(&sim.decoder));
    let nv = spec.v_size;
    let per_trial = map_indexed(sim.trials, |t| {
        let mut rng = ChaCha20Rng::seed_from_u64(sim.seed);
        rng.set_stream(t as u64);
        let mut sums = [0.0f64; 3];
        let mut counts = vec![0u64; spec.u_size * nv];
        for _ in 0..sim.n {
            let u = draw(&src, rng.gen::<f64>());
            let a = draw(&k1[u], rng.gen::<f64>());
            let b = draw(&k2[a], rng.gen::<f64>());
            let v = draw(&k3[b], rng.gen::<f64>());
            sums[0] += spec.cost1.get(u, v);
            sums[1] += spec.cost2.get(u, v);
            sums[2] += spec.cost3.get(u, v);
            counts[u * nv + v] += 1;
        }
        let n = sim.n as f64;
        ([sums[0] / n, sums[1] / n, sums[2] / n], counts)
    });
    let trials = sim.trials as f64;
    let mut means = [0.0; 3];
    let mut std_errors = [0.0; 3];
    for i in 0..3 {
        let xs: Vec<f64> = per_trial.iter().map(|t| t.0[i]).collect();
        let mean = pairwise_sum(&xs) / trials;
        means[i] = mean;
        if sim.trials > 1 {
            let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
            let var = pairwise_sum(&dev) / (trials - 1.0);
            std_errors[i] = sqrt(var) / sqrt(trials);
        }
    }
    let mut uv_counts = vec![0u64; spec.u_size * nv];
    for (_, c) in &per_trial {
        for (acc, x) in uv_counts.iter_mut().zip(c) {
            *acc += x;
        }
    }
    Ok(SimResult {
        rng: RNG_ALGORITHM,
        seed: sim.seed,
        n: sim.n,
        trials: sim.trials,
        means,
        std_errors,
        expected,
        uv_counts,
    })
}

/// A short single-line description, handy for logs.
pub fn describe(r: &SimResult) -> alloc::string::String {
    format!(
        "{} seed={} n={} trials={} c1={:.6}±{:.6}",
        r.rng, r.seed, r.n, r.trials, r.means[0], r.std_errors[0]
    )
}
