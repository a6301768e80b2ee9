//! Worked values for the reference binary game and the documented examples
//! of each module. Values taken from the reference text are checked
//! directly; derived values are checked against an independent computation
//! (hand-expanded joint tables, bisection, brute-force grids).

use approx::assert_abs_diff_eq;
use cascade_core::belief::{induced_splitting, induced_w1_marginal, posterior, relay_params_for_split, split_weights};
use cascade_core::best_response::{
    adversarial_select, decoder_best_action, decoder_threshold, project_costs, relay_best_response, ResponseSet,
    Threshold,
};
use cascade_core::envelope::{convex_envelope, envelope_1d, BeliefCostFunction, TieRule};
use cascade_core::game_model::{build_joint, expected_cost, profile_costs};
use cascade_core::info::{is_feasible, mutual_information, parse_profile};
use cascade_core::oracle::{brute_force_value, compare};
use cascade_core::solvers::{self, sweep, SweepParam};
use cascade_core::*;

fn spec() -> GameSpec {
    GameSpec::binary_example()
}

fn coop() -> GameSpec {
    let mut s = spec();
    s.cost2 = s.cost1.clone();
    s
}

fn u(q: f64) -> Belief {
    Belief::binary(Alphabet::U, q).unwrap()
}

fn fast() -> SolveOptions {
    SolveOptions { grid: 61, ..Default::default() }
}

// Encoder kernel of the binary example: u0 -> x1 w.p. alpha, u1 -> x0 w.p. beta.
fn enc(alpha: f64, beta: f64) -> Kernel {
    Kernel::binary(alpha, beta).unwrap()
}

#[test]
fn reference_tables() {
    let s = spec();
    assert_eq!(s.cost1.to_rows(), vec![vec![9.0, 0.0], vec![4.0, 10.0]]);
    assert_eq!(s.cost3, s.cost1);
    assert_eq!(s.prior, vec![0.6, 0.4]);
    assert_eq!((s.r1, s.r2), (1.0, 1.0));
}

#[test]
fn joint_examples() {
    let p = u(0.4);
    let id = Kernel::identity(2);
    let j = build_joint(&u(0.5), &id, &id, &id).unwrap();
    assert_abs_diff_eq!(j.get(0, 0, 0, 0), 0.5);
    assert_abs_diff_eq!(j.get(1, 1, 1, 1), 0.5);
    assert_abs_diff_eq!(j.total(), 1.0, epsilon = 1e-12);

    let j = build_joint(&p, &id, &id, &Kernel::constant(2, 2, 1)).unwrap();
    let uv = j.marginal_uv();
    for (a, b) in uv.iter().zip([0.0, 0.6, 0.0, 0.4]) {
        assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
    }

    let k1 = Kernel::from_rows(&[vec![0.7, 0.3], vec![0.4, 0.6]]).unwrap();
    let j = build_joint(&p, &k1, &id, &id).unwrap();
    // P(u1, v1) = P(u1) P(w1 = 1 | u1) by hand.
    assert_abs_diff_eq!(j.marginal_uv()[3], 0.4 * 0.6, epsilon = 1e-12);
}

#[test]
fn expected_cost_examples() {
    let s = spec();
    let id = Kernel::identity(2);
    let j = build_joint(&u(0.4), &id, &id, &id).unwrap();
    assert_abs_diff_eq!(expected_cost(&j, &s.cost1).unwrap(), 0.6 * 9.0 + 0.4 * 10.0, epsilon = 1e-12);
    let j = build_joint(&u(0.4), &id, &id, &Kernel::constant(2, 2, 1)).unwrap();
    assert_abs_diff_eq!(expected_cost(&j, &s.cost1).unwrap(), 4.0, epsilon = 1e-12);
    assert_eq!(expected_cost(&j, &CostMatrix::zeros(2, 2)).unwrap(), 0.0);
}

#[test]
fn posterior_examples() {
    let p = u(0.4);
    assert_eq!(posterior(&p, &Kernel::identity(2), 1).unwrap().p(), &[0.0, 1.0]);

    // Four-cell joint table for alpha = 0.3, beta = 0.6, observing x1.
    let (a, b, p0) = (0.3, 0.6, 0.4);
    let joint_u1_x1 = p0 * (1.0 - b);
    let joint_u0_x1 = (1.0 - p0) * a;
    let want = joint_u1_x1 / (joint_u1_x1 + joint_u0_x1);
    let got = posterior(&p, &enc(a, b), 1).unwrap();
    assert_abs_diff_eq!(got.q1(), want, epsilon = 1e-12);
    assert_abs_diff_eq!(got.q1(), 0.16 / 0.34, epsilon = 1e-12);

    let post = posterior(&u(0.5), &Kernel::uniform(2, 2), 0).unwrap();
    assert_abs_diff_eq!(post.q1(), 0.5, epsilon = 1e-12);

    let e = posterior(&p, &Kernel::constant(2, 2, 0), 1).unwrap_err();
    assert!(matches!(e, Error::UnreachableObservation { index: 1 }));
}

#[test]
fn printed_relay_posterior_formula() {
    // The composed-kernel posterior against the printed closed form for
    // P(u1 | x2 = 0) with encoder (alpha, beta) and relay (gamma, delta).
    for &(a, b, g, d, p0) in &[(0.3, 0.6, 0.2, 0.7, 0.4), (0.1, 0.2, 0.5, 0.25, 0.7), (0.9, 0.05, 0.6, 0.1, 0.3)] {
        let num = (b * (1.0 - g) + (1.0 - b) * d) * p0;
        let den = num + ((1.0 - a) * (1.0 - g) + a * d) * (1.0 - p0);
        let chain = enc(a, b).compose(&Kernel::binary(g, d).unwrap()).unwrap();
        assert_abs_diff_eq!(posterior(&u(p0), &chain, 0).unwrap().q1(), num / den, epsilon = 1e-12);

        // Beliefs about x1 given x2, printed in terms of p1.
        let p1 = induced_w1_marginal(p0, a, b);
        let w1 = Belief::binary(Alphabet::W1, p1).unwrap();
        let relay = Kernel::binary(g, d).unwrap();
        let q20 = p1 * d / (p1 * d + (1.0 - p1) * (1.0 - g));
        let q21 = p1 * (1.0 - d) / (p1 * (1.0 - d) + (1.0 - p1) * g);
        assert_abs_diff_eq!(posterior(&w1, &relay, 0).unwrap().q1(), q20, epsilon = 1e-12);
        assert_abs_diff_eq!(posterior(&w1, &relay, 1).unwrap().q1(), q21, epsilon = 1e-12);
    }
}

#[test]
fn w1_marginal_examples() {
    assert_abs_diff_eq!(induced_w1_marginal(0.4, 0.3, 0.6), 0.34, epsilon = 1e-12);
    assert_eq!(induced_w1_marginal(0.4, 0.0, 1.0), 0.0);
    for p0 in [0.1, 0.4, 0.8] {
        assert_abs_diff_eq!(induced_w1_marginal(p0, 0.35, 0.65), 0.35, epsilon = 1e-12);
        // Independence: posteriors equal the prior.
        for obs in 0..2 {
            assert_abs_diff_eq!(posterior(&u(p0), &enc(0.35, 0.65), obs).unwrap().q1(), p0, epsilon = 1e-12);
        }
    }
}

#[test]
fn split_weight_examples() {
    let s = split_weights(&u(0.4), &[u(0.0), u(1.0)]).unwrap();
    assert_abs_diff_eq!(s.atoms()[0].0, 0.6, epsilon = 1e-12);
    assert_abs_diff_eq!(s.atoms()[1].0, 0.4, epsilon = 1e-12);

    let p1 = Belief::binary(Alphabet::W1, 0.34).unwrap();
    let s = split_weights(&p1, &[Belief::binary(Alphabet::W1, 0.0).unwrap(), Belief::binary(Alphabet::W1, 0.6).unwrap()])
        .unwrap();
    // 2x2 system: l0 + l1 = 1, 0.6 l1 = 0.34.
    let l1 = 0.34 / 0.6;
    assert_abs_diff_eq!(s.atoms()[0].0, 1.0 - l1, epsilon = 1e-12);
    assert_abs_diff_eq!(s.atoms()[1].0, l1, epsilon = 1e-12);

    assert!(matches!(split_weights(&u(0.4), &[u(0.5), u(0.9)]), Err(Error::Infeasible(_))));
}

#[test]
fn relay_parameter_examples() {
    let (g, d) = relay_params_for_split(0.3, 0.0, 1.0).unwrap();
    assert_abs_diff_eq!(g, 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!(d, 0.0, epsilon = 1e-12);

    let (g, d) = relay_params_for_split(0.34, 0.0, 0.6).unwrap();
    assert_abs_diff_eq!(g, 0.4 * 0.34 / (0.66 * 0.6), epsilon = 1e-12);
    assert_abs_diff_eq!(d, 0.0, epsilon = 1e-12);
    let w1 = Belief::binary(Alphabet::W1, 0.34).unwrap();
    let relay = Kernel::binary(g, d).unwrap();
    assert_abs_diff_eq!(posterior(&w1, &relay, 0).unwrap().q1(), 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!(posterior(&w1, &relay, 1).unwrap().q1(), 0.6, epsilon = 1e-12);

    assert!(relay_params_for_split(0.4, 0.4, 0.4).is_err());
    assert!(relay_params_for_split(0.4, 0.5, 0.9).is_err());
}

#[test]
fn decoder_action_examples() {
    let c3 = spec().cost3;
    let acts = |q: f64| decoder_best_action(&u(q), &c3, 1e-9).unwrap().items().copied().collect::<Vec<_>>();
    assert_eq!(acts(0.5), vec![1]);
    assert_eq!(acts(0.7), vec![0]);
    assert_eq!(acts(0.6), vec![0, 1]);
}

#[test]
fn projection_examples() {
    let s = spec();
    let p = project_costs(&s, &Kernel::identity(2)).unwrap();
    assert!(p.costs[0].approx_eq(&s.cost1, 1e-12));

    let p = project_costs(&s, &enc(0.3, 0.6)).unwrap();
    let q = 0.16 / 0.34;
    assert_abs_diff_eq!(p.costs[2].get(1, 0), (1.0 - q) * 9.0 + q * 4.0, epsilon = 1e-12);
    assert_abs_diff_eq!(p.costs[2].get(1, 0), 6.65, epsilon = 0.01);

    let p = project_costs(&s, &enc(0.2, 0.8)).unwrap();
    for i in 0..3 {
        assert!(CostMatrix::from_rows(&[p.costs[i].row(0).to_vec()])
            .unwrap()
            .approx_eq(&CostMatrix::from_rows(&[p.costs[i].row(1).to_vec()]).unwrap(), 1e-12));
    }
}

fn bisect(f: impl Fn(f64) -> f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn threshold_examples() {
    let s = spec();
    match decoder_threshold(&s, &Kernel::identity(2)).unwrap() {
        Threshold::Crossing { g, below, above } => {
            assert!((g - 0.6).abs() < 1e-9);
            assert_eq!((below, above), (1, 0));
        }
        t => panic!("{t:?}"),
    }

    let mut dom = s.clone();
    dom.cost3 = CostMatrix::new(2, 2, vec![0.0, 5.0, 0.0, 5.0]).unwrap();
    assert_eq!(decoder_threshold(&dom, &Kernel::identity(2)).unwrap(), Threshold::Dominant { action: 0 });

    let p0 = 0.4;
    let printed = |a: f64, b: f64| {
        let pu0x0 = (1.0 - a) * (1.0 - p0) / (b * p0 + (1.0 - a) * (1.0 - p0));
        let pu1x1 = (1.0 - b) * p0 / ((1.0 - b) * p0 + a * (1.0 - p0));
        (2.0 - pu0x0 * 5.0) / (5.0 * (1.0 - pu1x1 - pu0x0))
    };
    let lines = |a: f64, b: f64| {
        let p = project_costs(&s, &enc(a, b)).unwrap();
        let c = p.costs[2].clone();
        move |t: f64| (1.0 - t) * (c.get(0, 0) - c.get(0, 1)) + t * (c.get(1, 0) - c.get(1, 1))
    };

    // At (0.3, 0.6) the lines cross outside [0, 1] and v1 is dominant; the
    // printed formula still locates the extrapolated crossing.
    assert_eq!(decoder_threshold(&s, &enc(0.3, 0.6)).unwrap(), Threshold::Dominant { action: 1 });
    let d = lines(0.3, 0.6);
    let (d0, d1) = (d(0.0), d(1.0));
    assert_abs_diff_eq!(printed(0.3, 0.6), d0 / (d0 - d1), epsilon = 1e-10);
    assert!(printed(0.3, 0.6) > 1.0);

    for (a, b) in [(0.1, 0.1), (0.05, 0.2), (0.0, 0.0)] {
        let g = match decoder_threshold(&s, &enc(a, b)).unwrap() {
            Threshold::Crossing { g, .. } => g,
            t => panic!("{t:?}"),
        };
        assert_abs_diff_eq!(g, bisect(lines(a, b)), epsilon = 1e-10);
        assert_abs_diff_eq!(g, printed(a, b), epsilon = 1e-10);
    }
}

#[test]
fn relay_response_examples() {
    let s = spec();
    let set = relay_best_response(&s, &Kernel::identity(2), false, 1e-9).unwrap();
    assert_abs_diff_eq!(set.best_value(), 1.0 - 0.4 / 0.6, epsilon = 1e-12);
    assert!((set.best_value() - 0.33).abs() <= 0.005);
    let best = &set.members[0].0;
    let mut qs: Vec<f64> = best.splitting.atoms().iter().map(|a| a.1.q1()).collect();
    qs.sort_by(f64::total_cmp);
    assert_abs_diff_eq!(qs[0], 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!(qs[1], 0.6, epsilon = 1e-12);

    // Constant relay cost: the uninformative splitting comes first.
    let mut flat = s.clone();
    flat.cost2 = CostMatrix::new(2, 2, vec![2.0; 4]).unwrap();
    let set = relay_best_response(&flat, &Kernel::identity(2), false, 1e-9).unwrap();
    assert_eq!(set.members[0].0.splitting.atoms().len(), 1);
    for (_, v) in &set.members {
        assert_abs_diff_eq!(*v, 2.0, epsilon = 1e-9);
    }

    // Zero relay rate: the decoder keeps its prior action v1, which costs the relay 1.
    let mut z = s.clone();
    z.r2 = 0.0;
    let set = relay_best_response(&z, &Kernel::identity(2), true, 1e-9).unwrap();
    assert_abs_diff_eq!(set.best_value(), 1.0, epsilon = 1e-12);
    assert!(set.items().all(|r| r.splitting.atoms().len() == 1));
}

#[test]
fn adversarial_select_examples() {
    let one = ResponseSet { members: vec![(2.5, 0.0)], tie_tol: 1e-9 };
    assert_eq!(adversarial_select(&one, |x| *x).unwrap().0, 2.5);
    let two = ResponseSet { members: vec![(1.6, 0.0), (4.0, 0.0)], tie_tol: 1e-9 };
    assert_eq!(adversarial_select(&two, |x| *x).unwrap().0, 4.0);

    // At the indifference belief the relay keeps the decoder tie it prefers
    // (v0, free for the relay) and the encoder is charged for that.
    let s = spec();
    let set = relay_best_response(&s, &Kernel::identity(2), false, 1e-9).unwrap();
    let (v, r) = adversarial_select(&set, |r| r.encoder_cost).unwrap();
    let at_g = r.splitting.atoms().iter().position(|a| (a.1.q1() - 0.6).abs() < 1e-9).unwrap();
    assert_eq!(r.actions[at_g], 0);
    // Direct: 1/3 mass at 0 (v1, c1 = 0) and 2/3 mass at 0.6 (v0, c1 = 0.4*9 + 0.6*4).
    assert_abs_diff_eq!(v, (2.0 / 3.0) * (0.4 * 9.0 + 0.6 * 4.0), epsilon = 1e-9);
    assert!(set.members.iter().all(|m| v >= m.0.encoder_cost - 1e-12));
}

fn c1_curve() -> BeliefCostFunction {
    let s = spec();
    BeliefCostFunction::new(Alphabet::U, s.cost3.clone(), s.cost1.clone(), TieRule::Max).unwrap()
}

#[test]
fn envelope_examples() {
    let s = spec();
    let relay = BeliefCostFunction::new(Alphabet::U, s.cost3.clone(), s.cost2.clone(), TieRule::Min).unwrap();
    let e = convex_envelope(&relay, &u(0.4)).unwrap();
    assert_abs_diff_eq!(e.value, 1.0 / 3.0, epsilon = 1e-12);
    let mut qs: Vec<f64> = e.splitting.atoms().iter().map(|a| a.1.q1()).collect();
    qs.sort_by(f64::total_cmp);
    assert_abs_diff_eq!(qs[1], 0.6, epsilon = 1e-12);

    let affine = BeliefCostFunction::new(
        Alphabet::U,
        CostMatrix::new(2, 2, vec![0.0, 1.0, 0.0, 1.0]).unwrap(),
        CostMatrix::new(2, 2, vec![3.0, 0.0, 7.0, 0.0]).unwrap(),
        TieRule::Min,
    )
    .unwrap();
    let e = convex_envelope(&affine, &u(0.25)).unwrap();
    assert_abs_diff_eq!(e.value, 0.75 * 3.0 + 0.25 * 7.0, epsilon = 1e-12);
    assert_eq!(e.splitting.atoms().len(), 1);

    let e = convex_envelope(&c1_curve(), &u(0.4)).unwrap();
    assert_abs_diff_eq!(e.value, 1.6, epsilon = 1e-12);
    let mut qs: Vec<f64> = e.splitting.atoms().iter().map(|a| a.1.q1()).collect();
    qs.sort_by(f64::total_cmp);
    assert_eq!(qs, vec![0.0, 1.0]);
}

#[test]
fn hull_examples() {
    let h = envelope_1d(&[(0.0, 0.0), (0.6, 6.0), (1.0, 4.0)]).unwrap();
    assert_eq!(h.breakpoints, vec![(0.0, 0.0), (1.0, 4.0)]);
    let pts = vec![(0.0, 4.0), (0.25, 1.0), (0.5, 0.0), (1.0, 1.0)];
    assert_eq!(envelope_1d(&pts).unwrap().breakpoints, pts);
    let seg = envelope_1d(&[(0.2, 1.0), (0.7, 3.0)]).unwrap();
    assert_eq!(seg.breakpoints.len(), 2);
    assert!(envelope_1d(&[(0.2, 1.0)]).is_err());
}

#[test]
fn information_examples() {
    let half = u(0.5);
    assert_abs_diff_eq!(mutual_information(&half, &Kernel::identity(2)), 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(mutual_information(&u(0.3), &Kernel::constant(2, 3, 1)), 0.0, epsilon = 1e-12);
    let h = -(0.6f64 * 0.6f64.log2() + 0.4 * 0.4f64.log2());
    assert_abs_diff_eq!(mutual_information(&u(0.4), &Kernel::identity(2)), h, epsilon = 1e-12);

    let s = spec();
    let id = Kernel::identity(2);
    let f = is_feasible(&s, &id, &id, Regime::Cooperative).unwrap();
    assert!(f.feasible);
    assert_abs_diff_eq!(f.constraints[0].slack, 1.0 - h, epsilon = 1e-12);

    let mut z = s.clone();
    z.r2 = 0.0;
    assert!(!is_feasible(&z, &id, &id, Regime::RelayRestricted).unwrap().feasible);
    let mut zz = z.clone();
    zz.r1 = 0.0;
    let flat = Kernel::constant(2, 2, 0);
    for r in Regime::ALL {
        assert!(is_feasible(&zz, &flat, &flat, r).unwrap().feasible, "{r}");
    }
    assert!(parse_profile("encoder_relay_coop").is_ok());
    assert!(matches!(parse_profile("both"), Err(Error::UnknownProfile(_))));
}

#[test]
fn induced_splitting_is_plausible() {
    let s = induced_splitting(&u(0.4), &enc(0.3, 0.6)).unwrap();
    assert!(s.plausibility_gap() < 1e-12);
    assert_abs_diff_eq!(s.atoms()[1].0, 0.34, epsilon = 1e-12);
}

#[test]
fn cooperative_examples() {
    let r = solvers::solve_cooperative(&coop(), &SolveOptions::default()).unwrap();
    assert_abs_diff_eq!(r.value, 1.6, epsilon = 1e-9);
    assert!(!r.precondition_violated || r.notes.iter().any(|n| n.contains("differ")));
    let mut z = coop();
    z.r1 = 0.0;
    z.r2 = 0.0;
    let r = solvers::solve_cooperative(&z, &SolveOptions::default()).unwrap();
    assert_abs_diff_eq!(r.value, 4.0, epsilon = 1e-12);
    // Full rate equals the full-information persuasion value.
    let mut aligned = coop();
    aligned.r1 = 3.0;
    aligned.r2 = 2.0;
    let a = solvers::solve_cooperative(&aligned, &fast()).unwrap();
    let b = solvers::solve_unconstrained(&aligned, &fast()).unwrap();
    assert_abs_diff_eq!(a.value, b.value, epsilon = 1e-9);
}

#[test]
fn strategic_examples() {
    let s = spec();
    let r = solvers::solve_unconstrained(&s, &fast()).unwrap();
    assert_abs_diff_eq!(r.value, 4.0, epsilon = 1e-9);
    let reeval = r.reevaluate(&s).unwrap();
    assert_abs_diff_eq!(reeval[0], r.value, epsilon = 1e-8);

    let mut dom = s.clone();
    dom.cost3 = CostMatrix::new(2, 2, vec![0.0, 5.0, 0.0, 5.0]).unwrap();
    let r = solvers::solve_unconstrained(&dom, &fast()).unwrap();
    assert_abs_diff_eq!(r.value, 0.6 * 9.0 + 0.4 * 4.0, epsilon = 1e-12);
}

#[test]
fn rate_limited_examples() {
    let s = spec();
    // With no information the decoder keeps its prior action (v1, encoder
    // cost 4). The merged relay-decoder party instead plays its own prior
    // action v0, which costs the encoder 0.6 * 9 + 0.4 * 4.
    for (regime, r1, r2, want) in [
        (Regime::RelayRestricted, 1.0, 0.0, 4.0),
        (Regime::EncoderRestricted, 0.0, 1.0, 4.0),
        (Regime::EncoderRelay, 1.0, 0.0, 4.0),
        (Regime::EncoderRelay, 0.0, 1.0, 4.0),
        (Regime::RelayDecoder, 0.0, 1.0, 7.0),
        (Regime::RelayDecoder, 1.0, 0.0, 7.0),
    ] {
        let mut z = s.clone();
        z.r1 = r1;
        z.r2 = r2;
        let r = solvers::solve(&z, regime, &fast()).unwrap();
        assert_abs_diff_eq!(r.value, want, epsilon = 1e-12);
    }
    let full_u = solvers::solve_unconstrained(&s, &fast()).unwrap().value;
    for regime in [Regime::RelayRestricted, Regime::EncoderRestricted] {
        assert_abs_diff_eq!(solvers::solve(&s, regime, &fast()).unwrap().value, full_u, epsilon = 1e-9);
    }
}

#[test]
fn aligned_regimes_match_cooperative() {
    let s = coop();
    let c = solvers::solve_cooperative(&s, &fast()).unwrap().value;
    for regime in [Regime::Unconstrained, Regime::EncoderRelay, Regime::RelayDecoder] {
        let v = solvers::solve(&s, regime, &fast()).unwrap().value;
        assert_abs_diff_eq!(v, c, epsilon = 1e-9);
    }
}

#[test]
fn half_rate_values_match_oracle() {
    let s = spec();
    let mut half2 = s.clone();
    half2.r2 = 0.5;
    let mut half1 = s.clone();
    half1.r1 = 0.5;
    let mut merged = s.clone();
    merged.cost2 = merged.cost3.clone();
    for (g, regime) in [
        (&half2, Regime::RelayRestricted),
        (&half1, Regime::EncoderRestricted),
        (&merged, Regime::RelayDecoder),
    ] {
        let r = solvers::solve(g, regime, &SolveOptions::default()).unwrap();
        let o = brute_force_value(g, regime, 51).unwrap();
        let v = compare(&r, &o, 0.02);
        assert!(v.pass, "{regime}: {} (solver {}, oracle {})", v.message, r.value, o.value);
        assert!(r.constraints.iter().all(|c| c.slack >= -1e-9), "{regime}");
    }
}

#[test]
fn witness_reevaluates() {
    for regime in Regime::ALL {
        let r = solvers::solve(&spec(), regime, &fast()).unwrap();
        let c = profile_costs(&spec(), &r.encoder, &r.relay, &r.decoder).unwrap();
        assert_eq!(c, r.costs);
        if r.attained {
            assert_abs_diff_eq!(c[0], r.value, epsilon = 1e-8);
        }
    }
}

#[test]
fn sweep_examples() {
    let c = coop();
    let rows = sweep(&c, SweepParam::P0, 0.0, 1.0, 11, Regime::Cooperative, &fast()).unwrap();
    assert_eq!(rows.len(), 11);
    // Full revelation is optimal at every prior: the chord from (0, 0) to (1, 4).
    for row in &rows {
        assert_abs_diff_eq!(row.report.value, 4.0 * row.param, epsilon = 1e-9);
    }
    // With the shipped relay cost the decoder's threshold shows up as a kink:
    // 10 p below 0.6 and 9 - 5 p above.
    let rows = sweep(&spec(), SweepParam::P0, 0.0, 1.0, 11, Regime::Unconstrained, &fast()).unwrap();
    for row in &rows {
        let p = row.param;
        let want = if p <= 0.6 { 10.0 * p } else { 9.0 - 5.0 * p };
        assert_abs_diff_eq!(row.report.value, want, epsilon = 1e-9);
    }

    let rows = sweep(&c, SweepParam::R2, 0.0, 1.0, 6, Regime::Cooperative, &fast()).unwrap();
    for w in rows.windows(2) {
        assert!(w[1].report.value <= w[0].report.value + 1e-9);
    }
    assert_eq!(sweep(&c, SweepParam::R1, 0.5, 0.5, 1, Regime::Cooperative, &fast()).unwrap().len(), 1);
    assert!(sweep(&c, SweepParam::P0, 0.0, 1.5, 3, Regime::Cooperative, &fast()).is_err());
}

#[test]
fn oracle_examples() {
    let r = brute_force_value(&coop(), Regime::Cooperative, 101).unwrap();
    assert!((r.value - 1.6).abs() <= 0.02);
    let mut z = spec();
    z.r1 = 0.0;
    assert_eq!(brute_force_value(&z, Regime::EncoderRestricted, 21).unwrap().value, 4.0);
    let mut flat = spec();
    flat.cost1 = CostMatrix::new(2, 2, vec![3.25; 4]).unwrap();
    for res in [2, 7, 21] {
        assert_abs_diff_eq!(brute_force_value(&flat, Regime::Unconstrained, res).unwrap().value, 3.25, epsilon = 1e-12);
    }
    assert!(matches!(brute_force_value(&spec(), Regime::Unconstrained, 500), Err(Error::Budget(_))));
}

#[test]
fn compare_verdicts() {
    let s = spec();
    let rep = solvers::solve_unconstrained(&s, &fast()).unwrap();
    let mut o = brute_force_value(&s, Regime::Unconstrained, 11).unwrap();
    o.value = rep.value;
    assert!(compare(&rep, &o, 0.02).pass);
    o.value = rep.value - 0.04;
    let v = compare(&rep, &o, 0.02);
    assert!(!v.pass);
    assert_abs_diff_eq!(v.gap, 0.04, epsilon = 1e-12);
    o.value = rep.value + 0.04;
    let v = compare(&rep, &o, 0.02);
    assert!(!v.pass && v.gap < 0.0);
    assert!(v.message.contains("solver infeasible or oracle grid too coarse"));
}
