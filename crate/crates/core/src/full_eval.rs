//! The expensive iteration: forward-difference gradient, optional
//! gradient-accuracy refinement, BFGS inverse-Hessian update with a
//! curvature skip, and a backtracking line search that hands control to the
//! direct-search iteration once the stepsize crosses the forcing threshold.

use crate::config::{forcing_rho, SolverConfig};
use crate::history::IterationKind;
use crate::oracle::{BudgetExhausted, ObjectiveOracle};
use nalgebra::{DMatrix, DVector};

/// Persistent state of the Full-Eval side of a run.
///
/// `x_prev` / `g_prev` hold the iterate and gradient of the previous
/// Full-Eval iteration (successful or not); the stored gradient is never
/// recomputed. `h_matrix` stays `None` until the first secant pair exists.
#[derive(Debug, Clone)]
pub struct FullEvalState {
    pub h_matrix: Option<DMatrix<f64>>,
    pub x_prev: Option<DVector<f64>>,
    pub g_prev: Option<DVector<f64>>,
    /// Backtrack count of the most recent Full-Eval iteration.
    pub nb_last: u32,
    /// Current finite-difference stepsize.
    pub h_fd: f64,
}

impl FullEvalState {
    pub fn new(cfg: &SolverConfig) -> Self {
        Self {
            h_matrix: None,
            x_prev: None,
            g_prev: None,
            nb_last: 0,
            h_fd: cfg.fd_step,
        }
    }
}

/// Forward finite-difference gradient at `x`, reusing the known value
/// `f_x`. Consumes exactly `n` evaluations (fewer only if the budget runs
/// out, in which case the error is propagated).
pub fn fd_gradient(
    oracle: &mut ObjectiveOracle,
    x: &DVector<f64>,
    f_x: f64,
    h: f64,
) -> Result<DVector<f64>, BudgetExhausted> {
    debug_assert!(h > 0.0);
    let n = x.len();
    let mut g = DVector::zeros(n);
    let mut probe = x.clone();
    for i in 0..n {
        probe[i] = x[i] + h;
        let fi = oracle.evaluate(probe.as_slice())?;
        g[i] = (fi - f_x) / h;
        probe[i] = x[i];
    }
    Ok(g)
}

/// Result of the gradient-accuracy refinement loop.
#[derive(Debug, Clone)]
pub struct CriticalityOutcome {
    pub gradient: DVector<f64>,
    pub h: f64,
    /// Number of refinement passes performed.
    pub passes: u32,
    /// True when the pass cap was reached without satisfying the exit
    /// condition (expected exactly at stationary points).
    pub cap_hit: bool,
}

/// Shrinks the FD stepsize until `h <= u_g' * beta * ||g(h)||`, recomputing
/// the gradient after each shrink. Each pass costs `n` evaluations.
pub fn criticality_step(
    oracle: &mut ObjectiveOracle,
    x: &DVector<f64>,
    f_x: f64,
    g0: &DVector<f64>,
    h0: f64,
    beta: f64,
    cfg: &SolverConfig,
) -> Result<CriticalityOutcome, BudgetExhausted> {
    let g0_norm = g0.norm();
    let mut g = g0.clone();
    let mut h = h0;
    let mut j = 0u32;
    while h > cfg.u_g_prime * beta * g.norm() {
        if j >= cfg.criticality_cap {
            return Ok(CriticalityOutcome {
                gradient: g,
                h,
                passes: j,
                cap_hit: true,
            });
        }
        j += 1;
        h = cfg.omega.powi(j as i32) * cfg.u_g_prime * beta * g0_norm;
        g = fd_gradient(oracle, x, f_x, h)?;
    }
    Ok(CriticalityOutcome {
        gradient: g,
        h,
        passes: j,
        cap_hit: false,
    })
}

/// True when the secant pair carries enough positive curvature for a BFGS
/// update: `s.y >= eps_c * ||s|| * ||y||` (with `s.y > 0`, which rules out
/// the degenerate zero pair).
pub fn curvature_ok(s: &DVector<f64>, y: &DVector<f64>, eps_c: f64) -> bool {
    let sty = s.dot(y);
    sty > 0.0 && sty >= eps_c * s.norm() * y.norm()
}

/// One inverse-Hessian BFGS update. Returns `None` (keep the previous
/// matrix) when the curvature test fails.
///
/// The result is exactly symmetric by construction and positive definite
/// whenever the update is applied to a positive definite input.
pub fn bfgs_update(
    h: &DMatrix<f64>,
    s: &DVector<f64>,
    y: &DVector<f64>,
    eps_c: f64,
) -> Option<DMatrix<f64>> {
    if !curvature_ok(s, y, eps_c) {
        return None;
    }
    let n = h.nrows();
    let rho = 1.0 / s.dot(y);
    let hy = h * y;
    let coef = rho * rho * y.dot(&hy) + rho;
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            // grouping keeps the (i,j)/(j,i) float computations identical
            out[(i, j)] = h[(i, j)] - rho * (s[i] * hy[j] + hy[i] * s[j]) + coef * (s[i] * s[j]);
        }
    }
    Some(out)
}

/// Initial inverse-Hessian approximation, built once the first secant pair
/// is available. When the bootstrap iteration failed (the run's second
/// iteration was Low-Eval) the identity is used instead.
pub fn h0_init(s: &DVector<f64>, y: &DVector<f64>, t1: IterationKind) -> DMatrix<f64> {
    let n = s.len();
    let eye = DMatrix::identity(n, n);
    match t1 {
        IterationKind::LowEval => eye,
        IterationKind::FullEval => {
            let yty = y.dot(y);
            let scale = s.dot(y) / yty;
            if yty == 0.0 || !scale.is_finite() || scale <= 0.0 {
                eye
            } else {
                scale * eye
            }
        }
    }
}

/// How the backtracking loop decides to give up.
#[derive(Debug, Clone, Copy)]
pub enum StopRule {
    /// Stop once `beta < gamma * rho(alpha)`: the switch to Low-Eval.
    Forcing { alpha: f64 },
    /// Stop after a fixed number of halvings (Full-Eval-only ablation).
    BacktrackFloor(u32),
}

/// Outcome of one Full-Eval line search.
#[derive(Debug, Clone)]
pub enum LineSearchOutcome {
    /// Sufficient decrease found at `beta`; `x_next` is the accepted trial
    /// point and `f_next` its observed value.
    Success {
        x_next: DVector<f64>,
        f_next: f64,
        beta: f64,
        backtracks: u32,
    },
    /// The stop rule fired before sufficient decrease: the iterate stays
    /// put. `last_beta` is the stepsize that violated the rule.
    Abandoned { backtracks: u32, last_beta: f64 },
}

/// Search direction `-H g`, falling back to steepest descent whenever the
/// quasi-Newton direction fails to point downhill for `g`.
pub fn search_direction(g: &DVector<f64>, h_matrix: Option<&DMatrix<f64>>) -> DVector<f64> {
    if let Some(h) = h_matrix {
        let p = -(h * g);
        if p.iter().all(|v| v.is_finite()) && g.dot(&p) < 0.0 {
            return p;
        }
    }
    -g.clone()
}

/// Backtracking line search from `beta_bar`, testing only stepsizes
/// `beta_bar * tau^j` and aborting per `rule`.
///
/// Every probe costs one evaluation. Trial points with non-finite
/// coordinates are rejected without spending an evaluation.
pub fn backtrack_line_search(
    oracle: &mut ObjectiveOracle,
    x: &DVector<f64>,
    f_x: f64,
    g: &DVector<f64>,
    p: &DVector<f64>,
    rule: StopRule,
    cfg: &SolverConfig,
) -> Result<LineSearchOutcome, BudgetExhausted> {
    let dir_deriv = g.dot(p);
    let mut beta = cfg.beta_bar;
    let mut nb = 0u32;
    let violates = |beta: f64, nb: u32| match rule {
        StopRule::Forcing { alpha } => beta < cfg.gamma * forcing_rho(alpha, cfg),
        StopRule::BacktrackFloor(cap) => nb >= cap,
    };
    // entry check: with the reference constants this never fires
    // (rho <= gamma1 << beta_bar), but the rule demands it
    if let StopRule::Forcing { .. } = rule {
        if violates(beta, nb) {
            return Ok(LineSearchOutcome::Abandoned {
                backtracks: 0,
                last_beta: beta,
            });
        }
    }
    loop {
        let trial = x + p * beta;
        let f_trial = if trial.iter().all(|v| v.is_finite()) {
            oracle.evaluate(trial.as_slice())?
        } else {
            f64::INFINITY
        };
        if f_trial <= f_x + cfg.c * beta * dir_deriv {
            return Ok(LineSearchOutcome::Success {
                x_next: trial,
                f_next: f_trial,
                beta,
                backtracks: nb,
            });
        }
        beta *= cfg.tau_backtrack;
        nb += 1;
        if violates(beta, nb) {
            return Ok(LineSearchOutcome::Abandoned {
                backtracks: nb,
                last_beta: beta,
            });
        }
    }
}

/// Full-Eval line search as specified: direction `-H g`, Armijo
/// backtracking, truncated by the switch condition `beta >= gamma *
/// rho(alpha)`. Returns the outcome together with the directional
/// derivative of the direction actually used.
pub fn line_search_full_eval(
    oracle: &mut ObjectiveOracle,
    x: &DVector<f64>,
    f_x: f64,
    g: &DVector<f64>,
    h_matrix: &DMatrix<f64>,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<(LineSearchOutcome, f64), BudgetExhausted> {
    let p = search_direction(g, Some(h_matrix));
    let dir_deriv = g.dot(&p);
    let outcome = backtrack_line_search(oracle, x, f_x, g, &p, StopRule::Forcing { alpha }, cfg)?;
    Ok((outcome, dir_deriv))
}
