//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `cargo test --test acceptance -- --nocapture`
//! to see them). Tolerances and thresholds are pinned here.

// the invariant re-checks negate the solver's own accept inequalities so
// the float semantics (including non-finite operands) match exactly
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use fullow_cli::bench::{run_suite, write_sweep, BenchConfig, BudgetMode, SuiteKind};
use fullow_cli::profile::matrices_from_results;
use fullow_core::config::{forcing_rho, SolverConfig};
use fullow_core::driver::{solve, solve_with, RunReport, SolverMode, StopReason};
use fullow_core::full_eval::{bfgs_update, criticality_step, curvature_ok, fd_gradient};
use fullow_core::history::IterationKind;
use fullow_core::oracle::ObjectiveOracle;
use fullow_core::problems::{piecewise53, smooth53, NoiseKind, ProblemSpec};
use fullow_core::profiles::{evals_to_convergence, ProfileMatrix, ProfileProblem};
use fullow_core::rng::seeded_rng;
use nalgebra::{DMatrix, DVector};
use rand::RngExt;
use std::sync::OnceLock;

const SWEEP_SEED: u64 = 1;

fn smooth_sweep() -> &'static Vec<(ProblemSpec, RunReport)> {
    static SWEEP: OnceLock<Vec<(ProblemSpec, RunReport)>> = OnceLock::new();
    SWEEP.get_or_init(|| {
        smooth53()
            .into_iter()
            .map(|p| {
                let cfg = SolverConfig {
                    budget: 2000 * p.dim() as u64,
                    seed: SWEEP_SEED,
                    ..SolverConfig::default()
                };
                let report = solve(&p, &cfg).unwrap();
                (p, report)
            })
            .collect()
    })
}

fn piecewise_sweep() -> &'static Vec<(ProblemSpec, RunReport)> {
    static SWEEP: OnceLock<Vec<(ProblemSpec, RunReport)>> = OnceLock::new();
    SWEEP.get_or_init(|| {
        piecewise53()
            .into_iter()
            .map(|p| {
                let cfg = SolverConfig {
                    budget: 2000 * p.dim() as u64,
                    seed: SWEEP_SEED,
                    ..SolverConfig::default()
                };
                let report = solve(&p, &cfg).unwrap();
                (p, report)
            })
            .collect()
    })
}

/// Criterion 1: every successful Full-Eval iteration of a smooth53 sweep
/// satisfies the sufficient-decrease and switch inequalities exactly, and
/// every successful Low-Eval iteration satisfies its decrease condition
/// exactly, with zero violations.
#[test]
fn criterion_01_sufficient_decrease_invariants() {
    let cfg = SolverConfig::default();
    let mut checked_full = 0u64;
    let mut checked_low = 0u64;
    let mut violations = 0u64;
    for (_, report) in smooth_sweep() {
        for rec in &report.log.records {
            match (rec.kind, rec.success) {
                (IterationKind::FullEval, true) => {
                    checked_full += 1;
                    // Armijo inequality, same float expression the solver used
                    if !(rec.f_after <= rec.f_before + cfg.c * rec.step * rec.dir_deriv) {
                        violations += 1;
                    }
                    // switch bound on the accepted stepsize
                    if rec.step < cfg.gamma * forcing_rho(rec.alpha, &cfg) {
                        violations += 1;
                    }
                }
                (IterationKind::LowEval, true) => {
                    checked_low += 1;
                    if !(rec.f_after <= rec.f_before - forcing_rho(rec.alpha, &cfg)) {
                        violations += 1;
                    }
                }
                _ => {}
            }
        }
    }
    let pass = violations == 0;
    println!(
        "criterion 01 sufficient-decrease invariants: {} ({checked_full} full-eval + {checked_low} low-eval acceptances, {violations} violations)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{violations} sufficient-decrease violations");
}

/// Criterion 2: the forward-difference error bound holds on 20 random
/// quadratics with known spectral norm, with zero violations.
#[test]
fn criterion_02_fd_error_bound() {
    let mut rng = seeded_rng(2024, 17);
    let mut violations = 0;
    for trial in 0..20 {
        let n = 2 + (trial % 19); // dimensions 2..=20
                                  // A = Q diag(lambda) Q^T with known largest eigenvalue
        let raw = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0f64));
        let q = raw.qr().q();
        let mut lambdas: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..9.0f64)).collect();
        lambdas[0] = 10.0;
        let l_norm = 10.0;
        let a = &q * DMatrix::from_diagonal(&DVector::from_vec(lambdas)) * q.transpose();
        let a_eval = a.clone();
        let spec = ProblemSpec::custom("quad", vec![0.0; n], move |x| {
            let xv = DVector::from_column_slice(x);
            0.5 * xv.dot(&(&a_eval * &xv))
        });
        let mut x = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0f64));
        x /= x.norm();
        let mut oracle = ObjectiveOracle::new(spec, 10_000, 0);
        let f_x = oracle.evaluate(x.as_slice()).unwrap();
        let h = 1e-4;
        let g = fd_gradient(&mut oracle, &x, f_x, h).unwrap();
        let exact = &a * &x;
        let err = (&g - &exact).norm();
        let bound = 0.5 * (n as f64).sqrt() * l_norm * h;
        if err > bound {
            violations += 1;
        }
        // the error law on quadratics: error vector is (h/2) diag(A)
        let law: DVector<f64> = DVector::from_fn(n, |i, _| 0.5 * h * a[(i, i)]);
        assert!(
            ((&g - &exact) - &law).norm() <= 1e-3 * law.norm(),
            "error vector deviates from (h/2) diag(A)"
        );
    }
    let pass = violations == 0;
    println!(
        "criterion 02 fd error bound: {} (20 quadratics, {violations} violations)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

/// Criterion 3: secant property after every applied update, skip exactly on
/// the curvature predicate, and fast convergence with exact gradients.
#[test]
fn criterion_03_bfgs_correctness() {
    let eps_c = 1e-10;
    let mut rng = seeded_rng(33, 0);
    let mut applied = 0;
    let mut worst_rel = 0.0f64;
    for round in 0..40 {
        let n = 2 + round % 7;
        let mut h = DMatrix::<f64>::identity(n, n);
        for _ in 0..25 {
            let s = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0f64));
            let y = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0f64));
            let sty = s.dot(&y);
            let threshold = eps_c * s.norm() * y.norm();
            match bfgs_update(&h, &s, &y, eps_c) {
                Some(next) => {
                    // skip must fire exactly when s.y < eps_c ||s|| ||y||
                    assert!(
                        sty >= threshold,
                        "update applied below the curvature threshold"
                    );
                    let rel =
                        (&next * &y - &s).norm() / (next.norm() * y.norm()).max(s.norm()).max(1.0);
                    worst_rel = worst_rel.max(rel);
                    applied += 1;
                    if curvature_ok(&s, &y, 0.1) {
                        h = next;
                    }
                }
                None => assert!(
                    sty < threshold,
                    "update skipped above the curvature threshold"
                ),
            }
        }
    }
    assert!(worst_rel <= 1e-10, "worst secant residual {worst_rel}");

    // convex quadratic, exact gradients injected: gradient norm reaches
    // 1e-8 within 30 iterations
    let quad = ProblemSpec::custom("quad5", vec![2.0, -1.0, 3.0, 0.5, -2.0], |x| {
        x.iter()
            .enumerate()
            .map(|(i, v)| 0.5 * (i + 1) as f64 * v * v)
            .sum()
    });
    let grad = |x: &[f64]| -> Vec<f64> {
        x.iter()
            .enumerate()
            .map(|(i, v)| (i + 1) as f64 * v)
            .collect()
    };
    let cfg = SolverConfig {
        budget: 10_000,
        stop_grad_below: Some(1e-8),
        ..SolverConfig::default()
    };
    let report = solve_with(&quad, &cfg, SolverMode::FullLow, Some(&grad)).unwrap();
    let iters = report.log.records.len();
    let pass = report.stop == StopReason::GradTolerance && iters <= 30;
    println!(
        "criterion 03 bfgs correctness: {} ({applied} updates, worst secant {worst_rel:.2e}, quadratic solved in {iters} iterations)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "stop {:?} after {iters} iterations", report.stop);
}

/// Criterion 4: on smooth problems Low-Eval iterations are at most 5% of
/// all iterations; on piecewise problems at least 80% of the suite
/// exhibits at least one Low-Eval iteration.
#[test]
fn criterion_04_switch_behavior() {
    let mut total = 0usize;
    let mut low = 0usize;
    for (_, report) in smooth_sweep() {
        let (sf, uf, sl, ul) = report.log.partition_counts();
        total += sf + uf + sl + ul;
        low += sl + ul;
    }
    let fraction = low as f64 / total as f64;

    let with_low = piecewise_sweep()
        .iter()
        .filter(|(_, r)| {
            let (_, _, sl, ul) = r.log.partition_counts();
            sl + ul > 0
        })
        .count();
    let coverage = with_low as f64 / 53.0;

    let pass = fraction <= 0.05 && coverage >= 0.80;
    println!(
        "criterion 04 switch behavior: {} (smooth low-eval fraction {:.2}% vs <= 5%; piecewise coverage {with_low}/53 vs >= 80%)",
        if pass { "PASS" } else { "FAIL" },
        100.0 * fraction
    );
    assert!(
        pass,
        "smooth low-eval fraction {:.4}, piecewise coverage {:.4}",
        fraction, coverage
    );
}

fn solved_counts(
    suite: SuiteKind,
    solvers: Vec<SolverMode>,
    eps_f: f64,
    tau: f64,
    seeds: u64,
) -> Vec<(String, usize)> {
    let mut cfg = BenchConfig::new(suite, solvers);
    cfg.mode = BudgetMode::Performance;
    cfg.eps_f = eps_f;
    cfg.seed = SWEEP_SEED;
    cfg.replications = seeds;
    let runs = run_suite(&cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    write_sweep(dir.path(), &runs).unwrap();
    let matrices: Vec<ProfileMatrix> =
        matrices_from_results(&[dir.path().join("results.csv")], tau).unwrap();
    let solver_names = matrices[0].solvers.clone();
    solver_names
        .iter()
        .enumerate()
        .map(|(s, name)| {
            let solved: usize = matrices
                .iter()
                .map(|pm| pm.t.iter().filter(|row| row[s].is_some()).count())
                .sum();
            (name.clone(), solved)
        })
        .collect()
}

/// Criterion 5: on the piecewise suite the combined method solves at least
/// as many problems as either ablation, aggregated over 5 seeds.
#[test]
fn criterion_05_nonsmooth_ordering() {
    let counts = solved_counts(
        SuiteKind::Piecewise53,
        vec![
            SolverMode::FullLow,
            SolverMode::FullOnly,
            SolverMode::LowOnly,
        ],
        0.0,
        1e-2,
        5,
    );
    let get = |name: &str| counts.iter().find(|(n, _)| n == name).unwrap().1;
    let (fl, bf, pd) = (get("fullow"), get("bfgs-fd"), get("pds"));
    let pass = fl >= bf && fl >= pd;
    println!(
        "criterion 05 non-smooth ordering: {} (solved over 5 seeds: fullow {fl}, bfgs-fd {bf}, pds {pd}; max 265)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

/// Criterion 6: under additive stochastic noise the combined method solves
/// at least as many problems as the line-search ablation, over 5 seeds.
#[test]
fn criterion_06_stochastic_noise_ordering() {
    let counts = solved_counts(
        SuiteKind::Noisy(NoiseKind::AdditiveStochastic),
        vec![SolverMode::FullLow, SolverMode::FullOnly],
        1e-3,
        1e-1,
        5,
    );
    let get = |name: &str| counts.iter().find(|(n, _)| n == name).unwrap().1;
    let (fl, bf) = (get("fullow"), get("bfgs-fd"));
    let pass = fl >= bf;
    println!(
        "criterion 06 stochastic-noise ordering: {} (solved over 5 seeds: fullow {fl}, bfgs-fd {bf}; max 265)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

/// Criterion 7: under persistent Full-Eval failure the direct-search
/// stepsize decays: its minimum over unsuccessful Low-Eval iterations
/// falls below alpha0 * theta^5.
#[test]
fn criterion_07_alpha_decay_on_l1() {
    let p = ProblemSpec::custom("l1_4", vec![1.0; 4], |x| x.iter().map(|v| v.abs()).sum());
    let cfg = SolverConfig {
        budget: 2000 * 4,
        seed: SWEEP_SEED,
        ..SolverConfig::default()
    };
    let report = solve(&p, &cfg).unwrap();
    let min_alpha = report
        .log
        .records
        .iter()
        .filter(|r| r.kind == IterationKind::LowEval && !r.success && !r.aborted)
        .map(|r| r.alpha)
        .fold(f64::INFINITY, f64::min);
    let threshold = cfg.alpha0 * cfg.theta_contract.powi(5);
    let pass = min_alpha < threshold;
    println!(
        "criterion 07 alpha decay: {} (min alpha over unsuccessful low-eval {min_alpha:.3e} vs < {threshold:.3e})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

/// Criterion 8: profile machinery reproduces the hand-built reference
/// values exactly.
#[test]
fn criterion_08_profile_machinery() {
    let pm = ProfileMatrix {
        problems: vec![
            ProfileProblem {
                name: "p1".into(),
                n: 2,
                f0: 10.0,
                f_l: 0.0,
            },
            ProfileProblem {
                name: "p2".into(),
                n: 3,
                f0: 5.0,
                f_l: 1.0,
            },
        ],
        solvers: vec!["s1".into(), "s2".into()],
        t: vec![vec![Some(10), Some(20)], vec![None, Some(5)]],
    };
    let mut ok = true;
    ok &= pm.rho(0, 1.0) == 0.5;
    ok &= pm.rho(1, 1.0) == 0.5;
    ok &= pm.rho(1, 2.0) == 1.0;
    ok &= pm.rho(0, 1e9) == 0.5;

    // data profile: t = 10 with n = 1 counts for alpha >= 5
    let dm = ProfileMatrix {
        problems: vec![
            ProfileProblem {
                name: "a".into(),
                n: 1,
                f0: 1.0,
                f_l: 0.0,
            },
            ProfileProblem {
                name: "b".into(),
                n: 1,
                f0: 1.0,
                f_l: 0.0,
            },
        ],
        solvers: vec!["s".into()],
        t: vec![vec![Some(10)], vec![Some(30)]],
    };
    ok &= dm.data_value(0, 5.0) == 0.5;
    ok &= dm.data_value(0, 15.0) == 1.0;

    // convergence-test extraction
    let history = vec![(5u64, 4.0), (12, 0.5)];
    ok &= evals_to_convergence(&history, 10.0, 0.0, 0.1).unwrap() == Some(12);
    ok &= evals_to_convergence(&history, 10.0, 0.0, 0.9).unwrap() == Some(5);
    ok &= evals_to_convergence(&[(3, 9.5)], 10.0, 0.0, 0.1)
        .unwrap()
        .is_none();

    println!(
        "criterion 08 profile machinery: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

/// Criterion 9: the gradient-accuracy refinement loop terminates in
/// finitely many passes away from stationarity, with its exit condition
/// satisfied.
#[test]
fn criterion_09_criticality_terminates() {
    let spec = ProblemSpec::custom("half_square", vec![1e-9], |x| 0.5 * x[0] * x[0]);
    let cfg = SolverConfig {
        criticality_enabled: true,
        ..SolverConfig::default()
    };
    let mut oracle = ObjectiveOracle::new(spec, 100_000, 0);
    let x = DVector::from_vec(vec![1e-9]);
    let f_x = oracle.evaluate(x.as_slice()).unwrap();
    let h0 = 1e-2;
    let g0 = fd_gradient(&mut oracle, &x, f_x, h0).unwrap();
    assert!(
        h0 > cfg.u_g_prime * 1.0 * g0.norm(),
        "entry condition must hold"
    );
    let out = criticality_step(&mut oracle, &x, f_x, &g0, h0, 1.0, &cfg).unwrap();
    let exit_ok = out.h <= cfg.u_g_prime * 1.0 * out.gradient.norm();
    let pass = !out.cap_hit && out.passes <= cfg.criticality_cap && exit_ok;
    println!(
        "criterion 09 criticality step: {} ({} passes, h {:.3e} <= u_g' beta ||g|| {:.3e})",
        if pass { "PASS" } else { "FAIL" },
        out.passes,
        out.h,
        cfg.u_g_prime * out.gradient.norm()
    );
    assert!(pass);
}

/// Criterion 10: a repeated sweep with a fixed seed is byte-identical, and
/// the oracle counter of every run matches its iteration log exactly.
#[test]
fn criterion_10_determinism_and_accounting() {
    let mut cfg = BenchConfig::new(
        SuiteKind::Noisy(NoiseKind::AdditiveStochastic),
        vec![SolverMode::FullLow, SolverMode::LowOnly],
    );
    cfg.mode = BudgetMode::Data;
    cfg.seed = 7;
    cfg.replications = 2;

    let runs_a = run_suite(&cfg).unwrap();
    let runs_b = run_suite(&cfg).unwrap();

    let mut mismatches = 0u64;
    for run in &runs_a {
        if run.report.evals_used != run.report.log.total_evals() {
            mismatches += 1;
        }
    }

    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    write_sweep(dir_a.path(), &runs_a).unwrap();
    write_sweep(dir_b.path(), &runs_b).unwrap();
    let bytes_equal = |rel: &str| {
        std::fs::read(dir_a.path().join(rel)).unwrap()
            == std::fs::read(dir_b.path().join(rel)).unwrap()
    };
    let mut identical = bytes_equal("results.csv");
    for run in &runs_a {
        identical &= bytes_equal(&run.row.history);
    }

    let pass = identical && mismatches == 0;
    println!(
        "criterion 10 determinism & accounting: {} ({} runs byte-identical: {identical}; accounting mismatches: {mismatches})",
        if pass { "PASS" } else { "FAIL" },
        runs_a.len()
    );
    assert!(pass);
}
