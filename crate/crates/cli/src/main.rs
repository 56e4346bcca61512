use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand};
use fullow_cli::bench::{run_suite, write_sweep, BenchConfig, BudgetMode, SuiteKind};
use fullow_cli::profile::{cmd_profile, ProfileKind, ProfileRequest};
use fullow_cli::solve::{cmd_solve, render_summary, SolveRequest};
use fullow_cli::{ConfigArgs, OUT_DIR_ENV};
use fullow_core::config::SolverConfig;
use fullow_core::driver::SolverMode;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "fullow",
    about = "Derivative-free optimization: full/low evaluation solver, benchmark sweeps, profiles",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one registered problem and write its history file
    Solve {
        /// Problem name, e.g. rosenbrock_2, watson_12_s1, arwhead_40
        problem: String,
        /// smooth | piecewise | add-det | add-stoch | mult-det | mult-stoch
        #[arg(default_value = "smooth")]
        variant: String,
        /// fullow | bfgs-fd | pds
        #[arg(default_value = "fullow")]
        solver: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Evaluation budget (default: 2000 * n)
        #[arg(long)]
        budget: Option<u64>,
        /// Noise level for noisy variants
        #[arg(long, default_value_t = 1e-3)]
        eps_f: f64,
        /// Output directory (default: $FULLOW_OUT or .)
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run a benchmark sweep and write results.csv plus history files
    Bench {
        /// smooth53 | piecewise53 | add-det | add-stoch | mult-det |
        /// mult-stoch | scalable40 | scalable80
        #[arg(long)]
        suite: String,
        /// Comma-separated solvers out of fullow,bfgs-fd,pds
        #[arg(long, default_value = "fullow,bfgs-fd,pds", value_delimiter = ',')]
        solvers: Vec<String>,
        /// performance (budget 2000n) | data (budget 100(n+1))
        #[arg(long, default_value = "performance")]
        mode: String,
        /// Override the budget multiplier of the mode
        #[arg(long)]
        budget_multiplier: Option<u64>,
        #[arg(long, default_value_t = 1e-3)]
        eps_f: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of seeds per (problem, solver) pair
        #[arg(long, default_value_t = 1)]
        replications: u64,
        /// Parallel worker count
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Compute performance or data profiles from results files
    Profile {
        /// Input results.csv files (ours or schema-conformant external ones)
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// performance | data
        #[arg(long, default_value = "performance")]
        kind: String,
        /// Convergence-test tolerances in (0,1)
        #[arg(long, default_value = "1e-2", value_delimiter = ',')]
        tau: Vec<f64>,
        /// Curve sample count
        #[arg(long, default_value_t = 101)]
        grid_points: usize,
        /// Right end of the curve grid (performance: ratio, default 1024;
        /// data: budget in units of n+1, default max budget/(n+1))
        #[arg(long)]
        alpha_max: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn out_dir(explicit: Option<PathBuf>) -> PathBuf {
    explicit
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Solve {
            problem,
            variant,
            solver,
            seed,
            budget,
            eps_f,
            out,
            config,
        } => {
            let out = out_dir(out);
            let mut solver_config = config.apply(SolverConfig::default());
            solver_config.seed = seed;
            let req = SolveRequest {
                problem,
                variant,
                solver,
                eps_f,
                budget,
                out_dir: out.clone(),
                config: solver_config,
            };
            let result = cmd_solve(&req)?;
            let rel = result
                .history_path
                .strip_prefix(&out)
                .unwrap_or(&result.history_path);
            print!("{}", render_summary(&result, rel));
            Ok(())
        }
        Command::Bench {
            suite,
            solvers,
            mode,
            budget_multiplier,
            eps_f,
            seed,
            replications,
            workers,
            out,
            config,
        } => {
            let suite =
                SuiteKind::from_name(&suite).ok_or_else(|| anyhow!("unknown suite `{suite}`"))?;
            let solvers = solvers
                .iter()
                .map(|s| SolverMode::from_label(s).ok_or_else(|| anyhow!("unknown solver `{s}`")))
                .collect::<Result<Vec<_>>>()?;
            let mode = match mode.as_str() {
                "performance" => BudgetMode::Performance,
                "data" => BudgetMode::Data,
                other => return Err(anyhow!("unknown mode `{other}`")),
            };
            let bench = BenchConfig {
                suite,
                solvers,
                mode,
                budget_multiplier,
                eps_f,
                seed,
                replications,
                workers,
                solver_config: config.apply(SolverConfig::default()),
            };
            let runs = run_suite(&bench)?;
            let path = write_sweep(&out_dir(out), &runs)?;
            println!("{} runs -> {}", runs.len(), path.display());
            Ok(())
        }
        Command::Profile {
            inputs,
            kind,
            tau,
            grid_points,
            alpha_max,
            out,
        } => {
            let kind = match kind.as_str() {
                "performance" => ProfileKind::Performance,
                "data" => ProfileKind::Data,
                other => return Err(anyhow!("unknown profile kind `{other}`")),
            };
            for t in &tau {
                if !(*t > 0.0 && *t < 1.0) {
                    return Err(anyhow!("tau must lie in (0,1), got {t}"));
                }
            }
            let req = ProfileRequest {
                kind,
                taus: tau,
                inputs,
                out_dir: out_dir(out),
                grid_points,
                alpha_max,
            };
            for (curve, summary) in cmd_profile(&req)? {
                println!("{}\n{}", curve.display(), summary.display());
            }
            Ok(())
        }
    }
}
