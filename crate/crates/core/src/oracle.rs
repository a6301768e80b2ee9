//! Brute-force ground truth. Enumerates encoder and relay kernels on a
//! lattice, finds decoder argmin sets by comparing expected costs
//! directly, keeps the relay's optima, charges the encoder its worst case
//! among them and minimizes over encoders. Shares nothing with the
//! envelope or best-response code beyond the game types.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::game_model::{CostMatrix, GameSpec, Kernel};
use crate::info::is_feasible;
use crate::par::map_indexed;
use crate::solvers::{Regime, SolveReport};
use crate::{Error, Result, DEFAULT_TIE_TOL, RATE_SLACK_TOL};

pub const MAX_RESOLUTION: usize = 101;
pub const MAX_ALPHABET: usize = 4;
const MAX_PAIRS: f64 = 4e8;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub regime: Regime,
    pub value: f64,
    /// Relay's expected `c2` at the witness.
    pub relay_value: f64,
    pub encoder: Kernel,
    pub relay: Kernel,
    pub decoder: Kernel,
    pub resolution: usize,
    /// Encoder value at each encoder lattice point, in enumeration order
    /// (`+∞` where the rate bound excludes the point).
    pub encoder_values: Vec<f64>,
    pub evaluations: u64,
    /// Whether the witness satisfies the regime's rate bounds.
    pub witness_feasible: bool,
}

/// Rows of a kernel lattice: every row is a point of the simplex with
/// denominator `resolution − 1`.
fn row_lattice(cols: usize, resolution: usize) -> Vec<Vec<f64>> {
    let d = resolution - 1;
    let mut out = Vec::new();
    let mut cur = vec![0usize; cols];
    fn rec(i: usize, left: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.iter().map(|c| *c as f64 / d as f64).collect());
            return;
        }
        for c in 0..=left {
            cur[i] = c;
            rec(i + 1, left - c, d, cur, out);
        }
    }
    rec(0, d, d, &mut cur, &mut out);
    out
}

/// All kernels `rows × cols` whose rows lie on the lattice, flattened.
fn kernel_lattice(rows: usize, cols: usize, resolution: usize) -> Vec<Vec<f64>> {
    let r = row_lattice(cols, resolution);
    let m = r.len();
    let total = m.pow(rows as u32);
    (0..total)
        .map(|mut i| {
            let mut k = Vec::with_capacity(rows * cols);
            // Row 0 varies slowest so binary kernels enumerate as (α, β) row-major.
            let mut idx = vec![0; rows];
            for j in (0..rows).rev() {
                idx[j] = i % m;
                i /= m;
            }
            for j in idx {
                k.extend_from_slice(&r[j]);
            }
            k
        })
        .collect()
}

fn log2(x: f64) -> f64 {
    libm::log2(x)
}

/// `I(X;Y)` for the joint table `p[x*ny + y]`.
fn joint_information(p: &[f64], nx: usize, ny: usize) -> f64 {
    let mut px = vec![0.0; nx];
    let mut py = vec![0.0; ny];
    for x in 0..nx {
        for y in 0..ny {
            px[x] += p[x * ny + y];
            py[y] += p[x * ny + y];
        }
    }
    let mut i = 0.0;
    for x in 0..nx {
        for y in 0..ny {
            let v = p[x * ny + y];
            if v > 0.0 {
                i += v * log2(v / (px[x] * py[y]));
            }
        }
    }
    i.max(0.0)
}

struct Game<'a> {
    spec: &'a GameSpec,
    nu: usize,
    nv: usize,
    tie: f64,
}

/// Per relay output: the decoder's answer and the (c1, c2) totals.
struct Outcome {
    relay: f64,
    encoder: f64,
    actions: [usize; MAX_ALPHABET],
}

impl Game<'_> {
    fn criterion(&self, mode: u8) -> &CostMatrix {
        if mode == 1 {
            &self.spec.cost2
        } else {
            &self.spec.cost3
        }
    }

    /// Given `P(u, w2)` as `puw[u*nw2 + w]`, plays decoder and relay layers.
    /// `mode`: 0 decoder answers c3 and the relay picks among ties by c2
    /// with the encoder's worst case last; 1 decoder answers c2; 2 decoder
    /// ties go against the encoder.
    fn play(&self, puw: &[f64], nw2: usize, mode: u8) -> Outcome {
        let s = self.spec;
        let (mut relay, mut encoder) = (0.0, 0.0);
        let mut actions = [0; MAX_ALPHABET];
        let mut c = [[0.0f64; MAX_ALPHABET]; 3];
        for w in 0..nw2 {
            let pw: f64 = (0..self.nu).map(|u| puw[u * nw2 + w]).sum();
            if pw <= 0.0 {
                continue;
            }
            for v in 0..self.nv {
                let (mut a, mut b, mut d) = (0.0, 0.0, 0.0);
                for u in 0..self.nu {
                    let q = puw[u * nw2 + w] / pw;
                    a += q * s.cost1.get(u, v);
                    b += q * s.cost2.get(u, v);
                    d += q * s.cost3.get(u, v);
                }
                c[0][v] = a;
                c[1][v] = b;
                c[2][v] = d;
            }
            let crit = if mode == 1 { &c[1] } else { &c[2] };
            let best = crit[..self.nv].iter().cloned().fold(f64::INFINITY, f64::min);
            let mut chosen = usize::MAX;
            if mode == 2 {
                for v in 0..self.nv {
                    if crit[v] <= best + self.tie && (chosen == usize::MAX || c[0][v] > c[0][chosen]) {
                        chosen = v;
                    }
                }
            } else {
                let mut rbest = f64::INFINITY;
                for v in 0..self.nv {
                    if crit[v] <= best + self.tie {
                        rbest = rbest.min(c[1][v]);
                    }
                }
                for v in 0..self.nv {
                    if crit[v] <= best + self.tie
                        && c[1][v] <= rbest + self.tie
                        && (chosen == usize::MAX || c[0][v] > c[0][chosen])
                    {
                        chosen = v;
                    }
                }
            }
            actions[w] = chosen;
            relay += pw * c[1][chosen];
            encoder += pw * c[0][chosen];
        }
        Outcome { relay, encoder, actions }
    }
}

/// A lattice relay whose row `row` has no mass on `to`; mass moves there
/// from `from` along a line until some posterior hits a decoder
/// indifference.
#[derive(Clone, Copy)]
struct Base {
    index: usize,
    row: usize,
    to: usize,
    from: usize,
}

fn relay_bases(relays: &[Vec<f64>], n1: usize, n2: usize) -> Vec<Base> {
    let mut out = Vec::new();
    for (index, m) in relays.iter().enumerate() {
        for row in 0..n1 {
            for to in 0..n2 {
                for from in 0..n2 {
                    if to != from && m[row * n2 + to] == 0.0 && m[row * n2 + from] > 0.0 {
                        out.push(Base { index, row, to, from });
                    }
                }
            }
        }
    }
    out
}

/// Relay kernels off the lattice that put some posterior exactly on a
/// decoder indifference line, one per base, output and action pair.
fn indifference_relays(
    game: &Game<'_>,
    mode: u8,
    relays: &[Vec<f64>],
    bases: &[Base],
    puw1: &[f64],
    n1: usize,
    n2: usize,
) -> Vec<Vec<f64>> {
    let (nu, nv) = (game.nu, game.nv);
    let crit = game.criterion(mode);
    let mut out = Vec::new();
    let mut puw = [0.0f64; MAX_ALPHABET * MAX_ALPHABET];
    for base in bases {
        let m = &relays[base.index];
        for u in 0..nu {
            for w in 0..n2 {
                puw[u * n2 + w] = (0..n1).map(|a| puw1[u * n1 + a] * m[a * n2 + w]).sum();
            }
        }
        let room = m[base.row * n2 + base.from];
        for (w, sign) in [(base.to, 1.0), (base.from, -1.0)] {
            for v in 0..nv {
                for v2 in v + 1..nv {
                    let (mut d0, mut slope) = (0.0, 0.0);
                    for u in 0..nu {
                        let delta = crit.get(u, v) - crit.get(u, v2);
                        d0 += puw[u * n2 + w] * delta;
                        slope += sign * puw1[u * n1 + base.row] * delta;
                    }
                    if slope == 0.0 {
                        continue;
                    }
                    let x = -d0 / slope;
                    if !(x > 0.0 && x < room) {
                        continue;
                    }
                    let mut k = m.clone();
                    k[base.row * n2 + base.to] = x;
                    k[base.row * n2 + base.from] = room - x;
                    out.push(k);
                }
            }
        }
    }
    out
}

fn decoder_kernel(actions: &[usize], nv: usize) -> Kernel {
    let mut p = vec![0.0; actions.len() * nv];
    for (w, a) in actions.iter().enumerate() {
        p[w * nv + a] = 1.0;
    }
    Kernel::from_rows_normalized(actions.len(), nv, p)
}

fn check_budget(spec: &GameSpec, resolution: usize) -> Result<()> {
    if !(2..=MAX_RESOLUTION).contains(&resolution) {
        return Err(Error::Budget(format!(
            "resolution {resolution} outside 2..={MAX_RESOLUTION}"
        )));
    }
    let biggest = spec.u_size.max(spec.v_size).max(spec.w1_size).max(spec.w2_size);
    if biggest > MAX_ALPHABET {
        return Err(Error::Budget(format!(
            "alphabets up to {MAX_ALPHABET} symbols are supported, got {biggest}"
        )));
    }
    Ok(())
}

/// Brute-force optimal encoder cost for `regime` on kernel lattices with
/// `resolution` points per free parameter. Relay candidates also include
/// the lattice relays shifted onto decoder indifference lines, so the
/// relay's optimum is hit exactly whenever it sits on one.
pub fn brute_force_value(spec: &GameSpec, regime: Regime, resolution: usize) -> Result<OracleResult> {
    brute_force_with_tol(spec, regime, resolution, DEFAULT_TIE_TOL)
}

pub fn brute_force_with_tol(spec: &GameSpec, regime: Regime, resolution: usize, tie_tol: f64) -> Result<OracleResult> {
    spec.validate()?;
    check_budget(spec, resolution)?;
    let (nu, nv, n1, n2) = (spec.u_size, spec.v_size, spec.w1_size, spec.w2_size);
    let game = Game { spec, nu, nv, tie: tie_tol };

    if regime == Regime::Cooperative {
        let width = n1.min(n2);
        let qs = kernel_lattice(nu, width, resolution);
        if qs.len() as f64 > MAX_PAIRS {
            return Err(Error::Budget(format!("{} end-to-end kernels", qs.len())));
        }
        let bound = spec.r1.min(spec.r2);
        let vals: Vec<f64> = map_indexed(qs.len(), |i| {
            let puw: Vec<f64> = (0..nu * width).map(|j| spec.prior[j / width] * qs[i][j]).collect();
            if joint_information(&puw, nu, width) > bound + RATE_SLACK_TOL {
                return f64::INFINITY;
            }
            game.play(&puw, width, 2).encoder
        });
        let best = argmin(&vals);
        let q = &qs[best];
        let puw: Vec<f64> = (0..nu * width).map(|j| spec.prior[j / width] * q[j]).collect();
        let out = game.play(&puw, width, 2);
        let mut enc = vec![0.0; nu * n1];
        for u in 0..nu {
            enc[u * n1..u * n1 + width].copy_from_slice(&q[u * width..(u + 1) * width]);
        }
        let mut relay = vec![0.0; n1 * n2];
        for a in 0..n1 {
            relay[a * n2 + if a < width { a } else { 0 }] = 1.0;
        }
        let mut acts = out.actions[..width].to_vec();
        acts.resize(n2, 0);
        let encoder = Kernel::from_rows_normalized(nu, n1, enc);
        let relay = Kernel::from_rows_normalized(n1, n2, relay);
        let witness_feasible = is_feasible(spec, &encoder, &relay, regime)?.feasible;
        return Ok(OracleResult {
            regime,
            value: vals[best],
            relay_value: out.relay,
            encoder,
            relay,
            decoder: decoder_kernel(&acts, nv),
            resolution,
            encoder_values: vals,
            evaluations: qs.len() as u64,
            witness_feasible,
        });
    }

    let encs = kernel_lattice(nu, n1, resolution);
    let relays = kernel_lattice(n1, n2, resolution);
    let bases = relay_bases(&relays, n1, n2);
    let pairs = encs.len() as f64 * (relays.len() + bases.len()) as f64;
    if pairs > MAX_PAIRS {
        return Err(Error::Budget(format!("{pairs} encoder-relay pairs")));
    }
    let mode = match regime {
        Regime::RelayDecoder => 1,
        Regime::EncoderRelay => 2,
        _ => 0,
    };
    let enc_limited = regime.encoder_rate_limited();
    let relay_limited = regime.relay_rate_limited();

    // Returns (encoder value, witness relay, evaluations) for one encoder.
    let per_encoder = |e: &[f64]| -> (f64, Vec<f64>, u64) {
        let puw1: Vec<f64> = (0..nu * n1).map(|j| spec.prior[j / n1] * e[j]).collect();
        if enc_limited && joint_information(&puw1, nu, n1) > spec.r1 + RATE_SLACK_TOL {
            return (f64::INFINITY, relays[0].clone(), 0);
        }
        let pw1: Vec<f64> = (0..n1).map(|a| (0..nu).map(|u| puw1[u * n1 + a]).sum()).collect();
        let relay_ok = |m: &[f64]| {
            if !relay_limited {
                return true;
            }
            let j: Vec<f64> = (0..n1 * n2).map(|i| pw1[i / n2] * m[i]).collect();
            joint_information(&j, n1, n2) <= spec.r2 + RATE_SLACK_TOL
        };
        let extra = indifference_relays(&game, mode, &relays, &bases, &puw1, n1, n2);
        let count = (relays.len() + extra.len()) as u64;
        let mut puw = [0.0f64; MAX_ALPHABET * MAX_ALPHABET];
        let mut play = |m: &[f64]| {
            for u in 0..nu {
                for w in 0..n2 {
                    puw[u * n2 + w] = (0..n1).map(|a| puw1[u * n1 + a] * m[a * n2 + w]).sum();
                }
            }
            game.play(&puw[..nu * n2], n2, mode)
        };
        let candidates = relays.iter().chain(extra.iter());
        if mode == 2 {
            let mut best: (f64, Option<&Vec<f64>>) = (f64::INFINITY, None);
            for m in candidates {
                let o = play(m);
                if o.encoder < best.0 && relay_ok(m) {
                    best = (o.encoder, Some(m));
                }
            }
            return (best.0, best.1.unwrap_or(&relays[0]).clone(), count);
        }
        // Relay optima within tie_tol, then the encoder's worst case among them.
        let mut kept: Vec<(f64, f64, &Vec<f64>)> = Vec::new();
        let mut rmin = f64::INFINITY;
        for m in candidates {
            let o = play(m);
            if o.relay <= rmin + tie_tol && relay_ok(m) {
                rmin = rmin.min(o.relay);
                kept.push((o.relay, o.encoder, m));
            }
        }
        let mut best: (f64, Option<&Vec<f64>>) = (f64::NEG_INFINITY, None);
        for (r, e, m) in kept {
            if r <= rmin + tie_tol && e > best.0 {
                best = (e, Some(m));
            }
        }
        (best.0, best.1.unwrap_or(&relays[0]).clone(), count)
    };

    let results = map_indexed(encs.len(), |i| per_encoder(&encs[i]));
    let vals: Vec<f64> = results.iter().map(|r| r.0).collect();
    let evaluations = results.iter().map(|r| r.2).sum();
    let best = argmin(&vals);
    let (e, m) = (&encs[best], &results[best].1);
    let puw1: Vec<f64> = (0..nu * n1).map(|j| spec.prior[j / n1] * e[j]).collect();
    let puw: Vec<f64> = (0..nu * n2)
        .map(|j| {
            let (u, w) = (j / n2, j % n2);
            (0..n1).map(|a| puw1[u * n1 + a] * m[a * n2 + w]).sum()
        })
        .collect();
    let out = game.play(&puw, n2, mode);
    let encoder = Kernel::from_rows_normalized(nu, n1, e.clone());
    let relay = Kernel::from_rows_normalized(n1, n2, m.clone());
    let witness_feasible = is_feasible(spec, &encoder, &relay, regime)?.feasible;
    Ok(OracleResult {
        regime,
        value: vals[best],
        relay_value: out.relay,
        encoder,
        relay,
        decoder: decoder_kernel(&out.actions[..n2], nv),
        resolution,
        encoder_values: vals,
        evaluations,
        witness_feasible,
    })
}

fn argmin(v: &[f64]) -> usize {
    let mut b = 0;
    for (i, x) in v.iter().enumerate() {
        if *x < v[b] {
            b = i;
        }
    }
    b
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub pass: bool,
    /// Solver value minus oracle value.
    pub gap: f64,
    pub tol: f64,
    pub message: String,
}

pub fn compare(report: &SolveReport, oracle: &OracleResult, tol: f64) -> Verdict {
    let gap = report.value - oracle.value;
    let (pass, message) = if !oracle.witness_feasible {
        (false, String::from("oracle witness violates the regime's rate bounds"))
    } else if gap < -tol {
        (false, format!("solver below oracle by {:e}: solver infeasible or oracle grid too coarse", -gap))
    } else if gap > tol {
        (false, format!("solver above oracle by {gap:e}"))
    } else {
        (true, format!("agree within {tol} (gap {gap:+e})"))
    };
    Verdict { pass, gap, tol, message }
}
