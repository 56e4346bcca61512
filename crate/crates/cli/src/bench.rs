//! Benchmark sweeps: run (problem, solver, seed) triples over a suite,
//! possibly in parallel, and serialize results deterministically.

use crate::report::{self, RunRow};
use anyhow::{bail, Result};
use fullow_core::config::SolverConfig;
use fullow_core::driver::{solve_with, RunReport, SolverMode};
use fullow_core::problems::{self, NoiseKind, ProblemSpec};
use rayon::prelude::*;
use std::path::{Path, PathBuf};

/// Which problem collection a sweep runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Smooth53,
    Piecewise53,
    Noisy(NoiseKind),
    Scalable(usize),
}

impl SuiteKind {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "smooth53" => Some(Self::Smooth53),
            "piecewise53" => Some(Self::Piecewise53),
            "scalable40" => Some(Self::Scalable(40)),
            "scalable80" => Some(Self::Scalable(80)),
            other => NoiseKind::from_label(other).map(Self::Noisy),
        }
    }

    pub fn problems(&self, eps_f: f64) -> Vec<ProblemSpec> {
        match self {
            Self::Smooth53 => problems::smooth53(),
            Self::Piecewise53 => problems::piecewise53(),
            Self::Noisy(kind) => problems::noisy53(*kind, eps_f),
            Self::Scalable(n) => problems::scalable_suite(*n),
        }
    }
}

/// How the per-problem budget is derived from its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetMode {
    /// `multiplier * n` evaluations (default multiplier 2000).
    Performance,
    /// `multiplier * (n + 1)` evaluations (default multiplier 100).
    Data,
}

impl BudgetMode {
    pub fn default_multiplier(&self) -> u64 {
        match self {
            Self::Performance => 2000,
            Self::Data => 100,
        }
    }

    pub fn budget(&self, multiplier: u64, n: usize) -> u64 {
        match self {
            Self::Performance => multiplier * n as u64,
            Self::Data => multiplier * (n as u64 + 1),
        }
    }
}

/// A benchmark sweep request.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub suite: SuiteKind,
    pub solvers: Vec<SolverMode>,
    pub mode: BudgetMode,
    /// Overrides the mode's default budget multiplier.
    pub budget_multiplier: Option<u64>,
    pub eps_f: f64,
    pub seed: u64,
    pub replications: u64,
    pub workers: usize,
    /// Base solver configuration (budget and seed fields are filled per run).
    pub solver_config: SolverConfig,
}

impl BenchConfig {
    pub fn new(suite: SuiteKind, solvers: Vec<SolverMode>) -> Self {
        Self {
            suite,
            solvers,
            mode: BudgetMode::Performance,
            budget_multiplier: None,
            eps_f: 1e-3,
            seed: 0,
            replications: 1,
            workers: 1,
            solver_config: SolverConfig::default(),
        }
    }
}

/// One finished run of a sweep.
#[derive(Debug, Clone)]
pub struct CompletedRun {
    pub row: RunRow,
    pub report: RunReport,
}

/// Runs every (problem, solver, replication) triple of the sweep.
///
/// Results come back sorted by (problem, solver, seed) regardless of the
/// worker count, so serialization is deterministic.
pub fn run_suite(cfg: &BenchConfig) -> Result<Vec<CompletedRun>> {
    if cfg.solvers.is_empty() {
        bail!("no solvers selected");
    }
    if cfg.replications == 0 {
        bail!("replications must be positive");
    }
    let specs = cfg.suite.problems(cfg.eps_f);
    let multiplier = cfg
        .budget_multiplier
        .unwrap_or_else(|| cfg.mode.default_multiplier());

    let mut jobs = Vec::new();
    for spec in &specs {
        for &solver in &cfg.solvers {
            for rep in 0..cfg.replications {
                jobs.push((spec.clone(), solver, cfg.seed.wrapping_add(rep)));
            }
        }
    }

    let run_one = |(spec, solver, seed): &(ProblemSpec, SolverMode, u64)| -> Result<CompletedRun> {
        let budget = cfg.mode.budget(multiplier, spec.dim());
        let run_cfg = SolverConfig {
            budget,
            seed: *seed,
            ..cfg.solver_config.clone()
        };
        let report = solve_with(spec, &run_cfg, *solver, None)?;
        let variant = spec.variant().label();
        let row = RunRow {
            problem: spec.name().to_string(),
            n: spec.dim(),
            variant: variant.clone(),
            eps_f: spec.eps_f(),
            solver: solver.label().to_string(),
            seed: *seed,
            budget,
            evals_used: report.evals_used,
            best_f: report.final_f,
            f0: report.history.f0,
            history: report::history_file_name(spec.name(), &variant, solver.label(), *seed),
        };
        Ok(CompletedRun { row, report })
    };

    let outcomes: Vec<Result<CompletedRun>> = if cfg.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()?;
        pool.install(|| jobs.par_iter().map(run_one).collect())
    } else {
        jobs.iter().map(run_one).collect()
    };
    // a failing run is reported and skipped; the sweep continues
    let mut runs = Vec::with_capacity(outcomes.len());
    for (job, outcome) in jobs.iter().zip(outcomes) {
        match outcome {
            Ok(run) => runs.push(run),
            Err(err) => eprintln!(
                "run failed: {} / {} / seed {}: {err}",
                job.0.name(),
                job.1.label(),
                job.2
            ),
        }
    }
    if runs.is_empty() {
        bail!("every run of the sweep failed");
    }
    runs.sort_by(|a, b| {
        (&a.row.problem, &a.row.solver, a.row.seed).cmp(&(
            &b.row.problem,
            &b.row.solver,
            b.row.seed,
        ))
    });
    Ok(runs)
}

/// Writes `results.csv` plus one history file per run under `dir`.
pub fn write_sweep(dir: &Path, runs: &[CompletedRun]) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    for run in runs {
        report::write_history(&dir.join(&run.row.history), &run.report.history)?;
    }
    let rows: Vec<RunRow> = runs.iter().map(|r| r.row.clone()).collect();
    let path = dir.join("results.csv");
    report::write_results(&path, &rows)?;
    Ok(path)
}
