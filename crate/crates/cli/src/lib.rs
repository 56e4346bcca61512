//! Library side of the command-line front end, exposed so integration and
//! acceptance tests can drive sweeps and profiles in-process.

pub mod bench;
pub mod profile;
pub mod report;
pub mod solve;

use fullow_core::config::SolverConfig;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "FULLOW_OUT";

/// Solver-constant overrides shared by the `solve` and `bench` commands.
#[derive(Debug, Clone, clap::Args)]
pub struct ConfigArgs {
    /// Armijo constant c in (0,1)
    #[arg(long)]
    pub c: Option<f64>,
    /// Initial line-search stepsize
    #[arg(long)]
    pub beta_bar: Option<f64>,
    /// Backtracking factor in (0,1)
    #[arg(long)]
    pub tau_backtrack: Option<f64>,
    /// Switch threshold scale
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Forcing-function cap
    #[arg(long)]
    pub gamma1: Option<f64>,
    /// Forcing-function quadratic coefficient
    #[arg(long)]
    pub gamma2: Option<f64>,
    /// Direct-search expansion factor (>= 1)
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Direct-search contraction factor in (0,1)
    #[arg(long)]
    pub theta: Option<f64>,
    /// BFGS curvature skip threshold
    #[arg(long)]
    pub eps_curvature: Option<f64>,
    /// Forward-difference stepsize
    #[arg(long)]
    pub fd_step: Option<f64>,
    /// Initial direct-search stepsize
    #[arg(long)]
    pub alpha0: Option<f64>,
    /// Enable the gradient-accuracy refinement loop
    #[arg(long)]
    pub criticality: bool,
    /// Refinement accuracy constant u_g'
    #[arg(long)]
    pub u_g_prime: Option<f64>,
    /// Refinement contraction factor omega in (0,1)
    #[arg(long)]
    pub omega: Option<f64>,
    /// Stop when the direct-search stepsize falls below this value
    #[arg(long)]
    pub stop_alpha_below: Option<f64>,
    /// Stop when the approximate gradient norm falls below this value
    #[arg(long)]
    pub stop_grad_below: Option<f64>,
}

impl ConfigArgs {
    pub fn apply(&self, mut cfg: SolverConfig) -> SolverConfig {
        macro_rules! set {
            ($($field:ident <- $arg:ident),*) => {
                $(if let Some(v) = self.$arg { cfg.$field = v; })*
            };
        }
        set!(
            c <- c,
            beta_bar <- beta_bar,
            tau_backtrack <- tau_backtrack,
            gamma <- gamma,
            gamma1 <- gamma1,
            gamma2 <- gamma2,
            lambda_expand <- lambda,
            theta_contract <- theta,
            eps_curvature <- eps_curvature,
            fd_step <- fd_step,
            alpha0 <- alpha0,
            u_g_prime <- u_g_prime,
            omega <- omega
        );
        if self.criticality {
            cfg.criticality_enabled = true;
        }
        cfg.stop_alpha_below = self.stop_alpha_below.or(cfg.stop_alpha_below);
        cfg.stop_grad_below = self.stop_grad_below.or(cfg.stop_grad_below);
        cfg
    }
}
