//! Single-run command: solve one registered problem and write its history.

use crate::report;
use anyhow::{anyhow, Result};
use fullow_core::config::SolverConfig;
use fullow_core::driver::{solve_with, RunReport, SolverMode};
use fullow_core::problems::{lookup, ProblemSpec, Variant};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub struct SolveRequest {
    pub problem: String,
    pub variant: String,
    pub solver: String,
    pub eps_f: f64,
    /// Explicit budget; defaults to `2000 * n`.
    pub budget: Option<u64>,
    pub out_dir: PathBuf,
    pub config: SolverConfig,
}

pub struct SolveOutput {
    pub spec: ProblemSpec,
    pub report: RunReport,
    pub history_path: PathBuf,
}

pub fn cmd_solve(req: &SolveRequest) -> Result<SolveOutput> {
    let variant = Variant::from_label(&req.variant)
        .ok_or_else(|| anyhow!("unknown variant `{}`", req.variant))?;
    let solver = SolverMode::from_label(&req.solver).ok_or_else(|| {
        anyhow!(
            "unknown solver `{}` (expected fullow, bfgs-fd, or pds)",
            req.solver
        )
    })?;
    let spec = lookup(&req.problem, variant, req.eps_f)?;
    let cfg = SolverConfig {
        budget: req.budget.unwrap_or(2000 * spec.dim() as u64),
        ..req.config.clone()
    };
    let report_data = solve_with(&spec, &cfg, solver, None)?;
    let rel = report::history_file_name(spec.name(), &variant.label(), solver.label(), cfg.seed);
    let history_path = req.out_dir.join(rel);
    report::write_history(&history_path, &report_data.history)?;
    Ok(SolveOutput {
        spec,
        report: report_data,
        history_path,
    })
}

/// Human-readable summary printed by the CLI.
pub fn render_summary(out: &SolveOutput, history_rel: &Path) -> String {
    let r = &out.report;
    let (sf, uf, sl, ul) = r.log.partition_counts();
    format!(
        "problem: {} (n={})\nfinal f: {}\nevaluations: {}\niterations: {} full-eval ({} successful), {} low-eval ({} successful)\nstop: {:?}\nhistory: {}\n",
        out.spec.name(),
        out.spec.dim(),
        r.final_f,
        r.evals_used,
        sf + uf,
        sf,
        sl + ul,
        sl,
        r.stop,
        history_rel.display(),
    )
}
