//! End-to-end checks on the shipped binary game.

use std::fmt;
use std::time::Instant;

use cascade_core::best_response::{adversarial_select, decoder_threshold, relay_best_response, Threshold};
use cascade_core::oracle::{brute_force_value, compare};
use cascade_core::solvers::{solve, solve_cooperative};
use cascade_core::{GameSpec, Kernel, Regime, SolveOptions};

use crate::spec_io::{load_spec, IoError, BINARY_EXAMPLE};

pub const REF_THRESHOLD: f64 = 0.6;
pub const REF_RELAY_VALUE: f64 = 0.33;
pub const REF_ENCODER_VALUE: f64 = 1.6;
pub const REF_BASELINE_ENCODER: f64 = 4.0;
pub const REF_BASELINE_RELAY: f64 = 1.0;
pub const ORACLE_RESOLUTION: usize = 101;

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub computed: f64,
    /// What the computed value is held against.
    pub target: f64,
    pub tol: f64,
    pub pass: bool,
    pub seconds: f64,
    pub detail: String,
}

impl Check {
    fn new(name: &str, computed: f64, target: f64, tol: f64, seconds: f64, detail: String) -> Self {
        Self {
            name: name.into(),
            computed,
            target,
            tol,
            pass: (computed - target).abs() <= tol,
            seconds,
            detail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} computed={:.10} target={} tol={:e} time={:.3}s {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.computed,
            self.target,
            self.tol,
            self.seconds,
            self.detail
        )
    }
}

pub fn reference_spec() -> Result<GameSpec, IoError> {
    load_spec(BINARY_EXAMPLE)
}

/// Encoder and relay costs when the encoder commits to `encoder` and the
/// relay answers at full rate, worst case over relay ties.
pub fn fixed_encoder_costs(spec: &GameSpec, encoder: &Kernel, tie_tol: f64) -> cascade_core::Result<(f64, f64)> {
    let set = relay_best_response(spec, encoder, false, tie_tol)?;
    let (enc, _) = adversarial_select(&set, |r| r.encoder_cost)?;
    Ok((enc, set.best_value()))
}

pub fn run(opts: &SolveOptions) -> Result<Vec<Check>, Box<dyn std::error::Error>> {
    let spec = reference_spec()?;
    let id = Kernel::identity(2);
    let mut out = Vec::new();

    let t = Instant::now();
    let g = match decoder_threshold(&spec, &id)? {
        Threshold::Crossing { g, .. } => g,
        _ => f64::NAN,
    };
    out.push(Check::new("threshold", g, REF_THRESHOLD, 1e-9, t.elapsed().as_secs_f64(), String::new()));

    let t = Instant::now();
    let c2 = relay_best_response(&spec, &id, false, opts.tie_tol)?.best_value();
    out.push(Check::new(
        "relay-value",
        c2,
        REF_RELAY_VALUE,
        0.005,
        t.elapsed().as_secs_f64(),
        format!("exact=1-0.4/0.6={:.10}", 1.0 - 0.4 / 0.6),
    ));

    let t = Instant::now();
    let mut coop = spec.clone();
    coop.cost2 = coop.cost1.clone();
    let r = solve_cooperative(&coop, opts)?;
    out.push(Check::new("cooperative", r.value, REF_ENCODER_VALUE, 0.02, t.elapsed().as_secs_f64(), String::new()));

    let t = Instant::now();
    let r = solve(&spec, Regime::Unconstrained, opts)?;
    let o = brute_force_value(&spec, Regime::Unconstrained, ORACLE_RESOLUTION)?;
    let v = compare(&r, &o, 0.02);
    let mut c = Check::new(
        "strategic",
        r.value,
        o.value,
        0.02,
        t.elapsed().as_secs_f64(),
        format!(
            "solver={:.10} oracle={:.10} reference={} ({})",
            r.value, o.value, REF_ENCODER_VALUE, v.message
        ),
    );
    c.pass = v.pass;
    out.push(c);

    let t = Instant::now();
    let mut zero1 = spec.clone();
    zero1.r1 = 0.0;
    let mut zero2 = spec.clone();
    zero2.r2 = 0.0;
    let a = solve(&zero1, Regime::EncoderRestricted, opts)?;
    let b = solve(&zero2, Regime::RelayRestricted, opts)?;
    let flat = fixed_encoder_costs(&spec, &Kernel::binary(0.3, 0.7)?, opts.tie_tol)?;
    let secs = t.elapsed().as_secs_f64();
    for (name, enc, rel) in [
        ("baseline-r1-zero", a.costs[0], a.costs[1]),
        ("baseline-r2-zero", b.costs[0], b.costs[1]),
        ("baseline-alpha-plus-beta-one", flat.0, flat.1),
    ] {
        out.push(Check::new(&format!("{name}-encoder"), enc, REF_BASELINE_ENCODER, 1e-12, secs, String::new()));
        out.push(Check::new(&format!("{name}-relay"), rel, REF_BASELINE_RELAY, 1e-12, secs, String::new()));
    }
    Ok(out)
}
