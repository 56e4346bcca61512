//! End-to-end checks of the command-line interface and its file contracts.

use fullow_cli::bench::{run_suite, write_sweep, BenchConfig, BudgetMode, SuiteKind};
use fullow_cli::profile::{cmd_profile, ProfileKind, ProfileRequest};
use fullow_core::driver::SolverMode;
use fullow_core::problems::NoiseKind;
use std::path::Path;
use std::process::Command;

fn fullow_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fullow"))
}

#[test]
fn solve_writes_history_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = fullow_bin()
        .args([
            "solve",
            "rosenbrock",
            "smooth",
            "fullow",
            "--seed",
            "1",
            "--budget",
            "200",
            "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("problem: rosenbrock_2 (n=2)"));
    assert!(stdout.contains("evaluations: 200"));
    assert!(dir
        .path()
        .join("histories/history_rosenbrock_2_smooth_fullow_1.csv")
        .exists());
}

#[test]
fn unknown_names_exit_nonzero() {
    for args in [
        vec!["solve", "no_such_problem"],
        vec!["solve", "rosenbrock", "smooth", "no_such_solver"],
        vec!["solve", "rosenbrock", "no_such_variant"],
        vec!["bench", "--suite", "no_such_suite"],
    ] {
        let out = fullow_bin().args(&args).output().unwrap();
        assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    }
}

#[test]
fn too_small_budget_is_surfaced() {
    let out = fullow_bin()
        .args([
            "solve",
            "linear_full_9",
            "smooth",
            "fullow",
            "--budget",
            "10",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("too small"), "stderr: {stderr}");
}

#[test]
fn bench_row_counts_and_noise_column() {
    let mut cfg = BenchConfig::new(
        SuiteKind::Noisy(NoiseKind::MultiplicativeDeterministic),
        vec![
            SolverMode::FullLow,
            SolverMode::FullOnly,
            SolverMode::LowOnly,
        ],
    );
    cfg.mode = BudgetMode::Data;
    cfg.budget_multiplier = Some(3);
    let runs = run_suite(&cfg).unwrap();
    assert_eq!(runs.len(), 159, "53 problems x 3 solvers");
    assert!(runs.iter().all(|r| r.row.eps_f == 1e-3));
    assert!(runs.iter().all(|r| r.row.variant == "mult-det"));
}

#[test]
fn profile_rejects_bad_tau() {
    let out = fullow_bin()
        .args(["profile", "whatever.csv", "--tau", "1.5"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn bench_then_profile_is_reproducible_byte_for_byte() {
    let mut cfg = BenchConfig::new(
        SuiteKind::Scalable(40),
        vec![SolverMode::FullLow, SolverMode::LowOnly],
    );
    cfg.mode = BudgetMode::Data;
    cfg.budget_multiplier = Some(4);
    cfg.seed = 11;

    let one = tempfile::tempdir().unwrap();
    let two = tempfile::tempdir().unwrap();
    for dir in [one.path(), two.path()] {
        let runs = run_suite(&cfg).unwrap();
        write_sweep(dir, &runs).unwrap();
        let req = ProfileRequest {
            kind: ProfileKind::Performance,
            taus: vec![1e-2],
            inputs: vec![dir.join("results.csv")],
            out_dir: dir.join("profiles"),
            grid_points: 64,
            alpha_max: None,
        };
        cmd_profile(&req).unwrap();
        let data_req = ProfileRequest {
            kind: ProfileKind::Data,
            taus: vec![1e-1],
            inputs: vec![dir.join("results.csv")],
            out_dir: dir.join("profiles"),
            grid_points: 64,
            alpha_max: None,
        };
        cmd_profile(&data_req).unwrap();
    }
    for rel in [
        "results.csv",
        "profiles/profile_performance_tau1e-2.csv",
        "profiles/summary_performance_tau1e-2.json",
        "profiles/profile_data_tau1e-1.csv",
        "profiles/summary_data_tau1e-1.json",
    ] {
        let a = std::fs::read(one.path().join(rel)).unwrap();
        let b = std::fs::read(two.path().join(rel)).unwrap();
        assert_eq!(a, b, "{rel} differs between reruns");
    }
}

#[test]
fn single_input_profile_covers_one_solver() {
    let mut cfg = BenchConfig::new(SuiteKind::Scalable(40), vec![SolverMode::LowOnly]);
    cfg.mode = BudgetMode::Data;
    cfg.budget_multiplier = Some(3);
    let dir = tempfile::tempdir().unwrap();
    let runs = run_suite(&cfg).unwrap();
    write_sweep(dir.path(), &runs).unwrap();
    let req = ProfileRequest {
        kind: ProfileKind::Performance,
        taus: vec![0.5],
        inputs: vec![dir.path().join("results.csv")],
        out_dir: dir.path().join("profiles"),
        grid_points: 16,
        alpha_max: None,
    };
    let outputs = cmd_profile(&req).unwrap();
    let summary = std::fs::read_to_string(&outputs[0].1).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&summary).unwrap();
    let solvers = parsed["solvers"].as_array().unwrap();
    assert_eq!(solvers.len(), 1);
    assert_eq!(solvers[0]["solver"], "pds");
}

#[test]
fn external_results_are_accepted_if_schema_conformant() {
    // a hand-written results file in the documented schema, as another
    // solver package would export
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir_all(dir.path().join("histories")).unwrap();
    let results = "\
# schema=1
problem,n,variant,eps_f,solver,seed,budget,evals_used,best_f,f0,history
toy_2,2,smooth,0,external,0,100,60,0.5,10,histories/toy.csv
";
    let history = "# schema=1\neval,best_f\n1,10\n30,0.5\n";
    std::fs::write(dir.path().join("results.csv"), results).unwrap();
    std::fs::write(dir.path().join("histories/toy.csv"), history).unwrap();
    let req = ProfileRequest {
        kind: ProfileKind::Data,
        taus: vec![0.5],
        inputs: vec![dir.path().join("results.csv")],
        out_dir: dir.path().join("profiles"),
        grid_points: 8,
        alpha_max: None,
    };
    let outputs = cmd_profile(&req).unwrap();
    assert!(outputs[0].0.exists());
    let curve = std::fs::read_to_string(&outputs[0].0).unwrap();
    assert!(curve
        .lines()
        .any(|l| l.starts_with("alpha,solver,value") || l.contains(",external,")));
}

#[test]
fn out_dir_env_variable_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = fullow_bin()
        .env("FULLOW_OUT", dir.path())
        .args(["solve", "rosenbrock", "smooth", "pds", "--budget", "50"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(Path::new(dir.path())
        .join("histories/history_rosenbrock_2_smooth_pds_0.csv")
        .exists());
}
