//! Profile generation from results files: groups runs by problem and seed,
//! recomputes the per-problem reference value across every solver present,
//! extracts evaluations-to-convergence, and emits curve CSVs plus a JSON
//! summary. Replicated (multi-seed) inputs produce seed-averaged curves.

use crate::report::{self, RunRow};
use anyhow::{bail, Context, Result};
use fullow_core::profiles::{
    data_profile, evals_to_convergence, geometric_grid, linear_grid, performance_profile,
    ProfileMatrix, ProfileProblem, SolverCurve,
};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Performance,
    Data,
}

impl ProfileKind {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Performance => "performance",
            Self::Data => "data",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProfileRequest {
    pub kind: ProfileKind,
    pub taus: Vec<f64>,
    pub inputs: Vec<PathBuf>,
    pub out_dir: PathBuf,
    pub grid_points: usize,
    /// Right end of the curve grid. Defaults to 2^10 for performance
    /// profiles and to the largest budget/(n+1) in the inputs for data
    /// profiles. Capping a data profile of large-budget runs at a smaller
    /// value reproduces the small-budget protocol exactly (a run's first k
    /// evaluations do not depend on its budget) while keeping the
    /// reference value f_L pinned at the large budget.
    pub alpha_max: Option<f64>,
}

#[derive(Debug, Serialize)]
struct SolverSummary {
    solver: String,
    value_at_1: f64,
    value_at_2: f64,
    /// Mean profile value over the grid (normalized area under the curve).
    auc: f64,
    /// Value at the right end of the grid.
    solved_fraction: f64,
}

#[derive(Debug, Serialize)]
struct Summary {
    kind: String,
    tau: f64,
    problems: usize,
    seeds: usize,
    /// Largest run budget seen in the inputs; the reference value f_L for
    /// each problem is the best value any solver reached within it.
    f_l_budget: u64,
    solvers: Vec<SolverSummary>,
}

/// A run row plus its loaded history.
struct LoadedRun {
    row: RunRow,
    history: Vec<(u64, f64)>,
}

fn load_inputs(inputs: &[PathBuf]) -> Result<Vec<LoadedRun>> {
    let mut runs = Vec::new();
    for path in inputs {
        for row in report::read_results(path)? {
            let hpath = report::history_path(path, &row);
            let history = report::read_history(&hpath)
                .with_context(|| format!("history for {} / {}", row.problem, row.solver))?;
            runs.push(LoadedRun { row, history });
        }
    }
    if runs.is_empty() {
        bail!("no runs found in the input files");
    }
    Ok(runs)
}

/// Builds one matrix per seed. Every solver must cover the same problems
/// at every seed.
fn matrices_per_seed(runs: &[LoadedRun], tau: f64) -> Result<Vec<ProfileMatrix>> {
    // problem key: (problem, variant, eps_f printed) -- runs of different
    // variants never share a row
    let key = |row: &RunRow| format!("{}|{}|{}", row.problem, row.variant, row.eps_f);
    let solvers: BTreeSet<String> = runs.iter().map(|r| r.row.solver.clone()).collect();
    let problems: BTreeSet<String> = runs.iter().map(|r| key(&r.row)).collect();
    let seeds: BTreeSet<u64> = runs.iter().map(|r| r.row.seed).collect();
    let solvers: Vec<String> = solvers.into_iter().collect();
    let problems: Vec<String> = problems.into_iter().collect();

    let mut by_key: BTreeMap<(String, String, u64), &LoadedRun> = BTreeMap::new();
    for run in runs {
        let k = (key(&run.row), run.row.solver.clone(), run.row.seed);
        if by_key.insert(k, run).is_some() {
            bail!(
                "duplicate run for {} / {} / seed {}",
                run.row.problem,
                run.row.solver,
                run.row.seed
            );
        }
    }

    let mut matrices = Vec::new();
    for &seed in &seeds {
        let mut rows = Vec::new();
        let mut t = Vec::new();
        for pkey in &problems {
            // the reference value: best any solver reached on this problem
            let mut f_l = f64::INFINITY;
            let mut n = 0usize;
            let mut f0_repr = f64::INFINITY;
            let mut name = String::new();
            for skey in &solvers {
                let run = by_key
                    .get(&(pkey.clone(), skey.clone(), seed))
                    .with_context(|| {
                        format!("runs do not share the problem set: missing {pkey} / {skey} / seed {seed}")
                    })?;
                f_l = f_l.min(run.row.best_f);
                n = run.row.n;
                name = run.row.problem.clone();
                f0_repr = f0_repr.min(run.row.f0);
            }
            let mut row_t = Vec::new();
            for skey in &solvers {
                let run = by_key[&(pkey.clone(), skey.clone(), seed)];
                // the convergence test uses the run's own observed f(x0)
                let t_ps = evals_to_convergence(&run.history, run.row.f0, f_l, tau)?;
                row_t.push(t_ps);
            }
            rows.push(ProfileProblem {
                name,
                n,
                f0: f0_repr,
                f_l,
            });
            t.push(row_t);
        }
        let pm = ProfileMatrix {
            problems: rows,
            solvers: solvers.clone(),
            t,
        };
        pm.validate().map_err(anyhow::Error::from)?;
        matrices.push(pm);
    }
    Ok(matrices)
}

fn average_curves(per_seed: Vec<Vec<SolverCurve>>) -> Vec<SolverCurve> {
    let seeds = per_seed.len();
    let mut acc = per_seed[0].clone();
    for curves in per_seed.iter().skip(1) {
        for (a, c) in acc.iter_mut().zip(curves) {
            for (pa, pc) in a.points.iter_mut().zip(&c.points) {
                pa.1 += pc.1;
            }
        }
    }
    for curve in &mut acc {
        for p in &mut curve.points {
            p.1 /= seeds as f64;
        }
    }
    acc
}

fn write_curves(path: &Path, curves: &[SolverCurve]) -> Result<()> {
    let mut out = String::new();
    out.push_str(report::SCHEMA_LINE);
    out.push('\n');
    out.push_str("alpha,solver,value\n");
    for curve in curves {
        for (alpha, value) in &curve.points {
            writeln!(out, "{alpha},{},{value}", curve.solver).unwrap();
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

fn value_at(curve: &SolverCurve, alpha: f64) -> f64 {
    // right-continuous step function sampled on the grid
    curve
        .points
        .iter()
        .take_while(|(a, _)| *a <= alpha)
        .last()
        .map(|(_, v)| *v)
        .unwrap_or(0.0)
}

/// Computes and writes profiles; returns `(curve csv, summary json)` paths
/// per tau.
pub fn cmd_profile(req: &ProfileRequest) -> Result<Vec<(PathBuf, PathBuf)>> {
    if req.grid_points < 2 {
        bail!("grid must have at least 2 points");
    }
    let runs = load_inputs(&req.inputs)?;
    let max_budget = runs.iter().map(|r| r.row.budget).max().unwrap();
    let max_scaled = runs
        .iter()
        .map(|r| r.row.budget as f64 / (r.row.n as f64 + 1.0))
        .fold(0.0f64, f64::max);
    std::fs::create_dir_all(&req.out_dir)?;

    let mut outputs = Vec::new();
    for &tau in &req.taus {
        let matrices = matrices_per_seed(&runs, tau)?;
        let seeds = matrices.len();
        let problems = matrices[0].problems.len();
        let per_seed: Vec<Vec<SolverCurve>> = matrices
            .iter()
            .map(|pm| match req.kind {
                ProfileKind::Performance => {
                    let hi = req.alpha_max.unwrap_or(1024.0);
                    performance_profile(pm, &geometric_grid(hi, req.grid_points))
                }
                ProfileKind::Data => {
                    let hi = req.alpha_max.unwrap_or(max_scaled);
                    data_profile(pm, &linear_grid(hi, req.grid_points))
                }
            })
            .collect();
        let curves = average_curves(per_seed);

        let solvers = curves
            .iter()
            .map(|c| {
                let last = c.points.last().map(|(_, v)| *v).unwrap_or(0.0);
                SolverSummary {
                    solver: c.solver.clone(),
                    value_at_1: value_at(c, 1.0),
                    value_at_2: value_at(c, 2.0),
                    auc: c.points.iter().map(|(_, v)| v).sum::<f64>() / c.points.len() as f64,
                    solved_fraction: last,
                }
            })
            .collect();
        let summary = Summary {
            kind: req.kind.label().to_string(),
            tau,
            problems,
            seeds,
            f_l_budget: max_budget,
            solvers,
        };

        let tag = format!("{}_tau{tau:e}", req.kind.label());
        let curve_path = req.out_dir.join(format!("profile_{tag}.csv"));
        let json_path = req.out_dir.join(format!("summary_{tag}.json"));
        write_curves(&curve_path, &curves)?;
        std::fs::write(&json_path, serde_json::to_string_pretty(&summary)? + "\n")?;
        outputs.push((curve_path, json_path));
    }
    Ok(outputs)
}

/// Builds the per-seed profile matrices for library callers (acceptance
/// checks and tests).
pub fn matrices_from_results(inputs: &[PathBuf], tau: f64) -> Result<Vec<ProfileMatrix>> {
    matrices_per_seed(&load_inputs(inputs)?, tau)
}
