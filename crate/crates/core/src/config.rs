//! Solver configuration and the forcing function.

use thiserror::Error;

/// All tunable constants of the solver, with the reference defaults.
///
/// Defaults: `c = 1e-4`, `beta_bar = 1`, `tau_backtrack = 0.5`, `gamma = 1`,
/// `gamma1 = 1e-5`, `gamma2 = 1e-3`, `lambda_expand = 2`, `theta_contract = 0.5`,
/// `eps_curvature = 1e-10`, `fd_step = sqrt(f64::EPSILON)`, `alpha0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Armijo sufficient-decrease constant, in (0, 1).
    pub c: f64,
    /// Initial line-search stepsize `beta_bar > 0`.
    pub beta_bar: f64,
    /// Backtracking factor, in (0, 1).
    pub tau_backtrack: f64,
    /// Scale of the switch threshold `gamma > 0`.
    pub gamma: f64,
    /// Forcing-function cap.
    pub gamma1: f64,
    /// Forcing-function quadratic coefficient.
    pub gamma2: f64,
    /// Direct-search expansion factor `lambda >= 1`.
    pub lambda_expand: f64,
    /// Direct-search contraction factor, in (0, 1).
    pub theta_contract: f64,
    /// Curvature threshold below which the BFGS update is skipped.
    pub eps_curvature: f64,
    /// Forward-difference stepsize `h > 0`.
    pub fd_step: f64,
    /// Initial direct-search stepsize `alpha0 > 0`.
    pub alpha0: f64,
    /// Enables the gradient-accuracy refinement loop (off by default).
    pub criticality_enabled: bool,
    /// Accuracy constant `u_g' > 0` of the refinement loop.
    pub u_g_prime: f64,
    /// Contraction factor of the refinement loop, in (0, 1).
    pub omega: f64,
    /// Cap on refinement passes; hitting it flags a degenerate (stationary) point.
    pub criticality_cap: u32,
    /// Maximum number of function evaluations for a run.
    pub budget: u64,
    /// Base seed for the run's random streams.
    pub seed: u64,
    /// Optional stop when the direct-search stepsize falls below this value.
    pub stop_alpha_below: Option<f64>,
    /// Optional stop when the approximate gradient norm falls below this value.
    pub stop_grad_below: Option<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            c: 1e-4,
            beta_bar: 1.0,
            tau_backtrack: 0.5,
            gamma: 1.0,
            gamma1: 1e-5,
            gamma2: 1e-3,
            lambda_expand: 2.0,
            theta_contract: 0.5,
            eps_curvature: 1e-10,
            fd_step: 1.4901161193847656e-8, // sqrt(f64::EPSILON)
            alpha0: 1.0,
            criticality_enabled: false,
            u_g_prime: 1.0,
            omega: 0.5,
            criticality_cap: 60,
            budget: 2000,
            seed: 0,
            stop_alpha_below: None,
            stop_grad_below: None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid configuration: {0}")]
pub struct ConfigError(pub String);

impl SolverConfig {
    /// Checks every range constraint; call once before a run.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let checks: [(&str, bool); 12] = [
            ("c must lie in (0,1)", self.c > 0.0 && self.c < 1.0),
            ("beta_bar must be positive", self.beta_bar > 0.0),
            (
                "tau_backtrack must lie in (0,1)",
                self.tau_backtrack > 0.0 && self.tau_backtrack < 1.0,
            ),
            ("gamma must be positive", self.gamma > 0.0),
            ("gamma1 must be positive", self.gamma1 > 0.0),
            ("gamma2 must be positive", self.gamma2 > 0.0),
            ("lambda_expand must be >= 1", self.lambda_expand >= 1.0),
            (
                "theta_contract must lie in (0,1)",
                self.theta_contract > 0.0 && self.theta_contract < 1.0,
            ),
            (
                "eps_curvature must lie in (0,1)",
                self.eps_curvature > 0.0 && self.eps_curvature < 1.0,
            ),
            ("fd_step must be positive", self.fd_step > 0.0),
            ("alpha0 must be positive", self.alpha0 > 0.0),
            (
                "omega must lie in (0,1) and u_g_prime positive",
                self.omega > 0.0 && self.omega < 1.0 && self.u_g_prime > 0.0,
            ),
        ];
        for (msg, ok) in checks {
            if !ok {
                return Err(ConfigError(msg.to_string()));
            }
        }
        if self.budget == 0 {
            return Err(ConfigError("budget must be positive".to_string()));
        }
        Ok(())
    }
}

/// Forcing function `rho(alpha) = min(gamma1, gamma2 * alpha^2)`.
///
/// Positive and non-decreasing for `alpha > 0`, with `rho(alpha)/alpha -> 0`
/// as `alpha -> 0`.
pub fn forcing_rho(alpha: f64, cfg: &SolverConfig) -> f64 {
    debug_assert!(alpha > 0.0);
    cfg.gamma1.min(cfg.gamma2 * alpha * alpha)
}
