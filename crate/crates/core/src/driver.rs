//! Run orchestration: alternates expensive line-search iterations with
//! cheap direct-search iterations under the stepsize-coupled switch,
//! maintains all run state, and enforces the evaluation budget.

use crate::config::SolverConfig;
use crate::full_eval::{
    backtrack_line_search, bfgs_update, criticality_step, fd_gradient, h0_init, search_direction,
    FullEvalState, LineSearchOutcome, StopRule,
};
use crate::history::{IterationKind, IterationLog, IterationRecord, RunHistory};
use crate::low_eval::{low_eval_iteration, LowEvalState};
use crate::oracle::{BudgetExhausted, ObjectiveOracle};
use crate::problems::ProblemSpec;
use crate::rng::{seeded_rng, STREAM_DIRECTIONS};
use nalgebra::DVector;
use thiserror::Error;

/// Which iteration types a run may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverMode {
    /// The full method: switch between both iteration types.
    FullLow,
    /// Line-search iterations only (ablation). The switch condition is
    /// replaced by a fixed backtrack floor; a floored iteration counts as
    /// unsuccessful and the next iteration recomputes the gradient.
    FullOnly,
    /// Direct-search iterations only (ablation).
    LowOnly,
}

impl SolverMode {
    pub fn label(&self) -> &'static str {
        match self {
            Self::FullLow => "fullow",
            Self::FullOnly => "bfgs-fd",
            Self::LowOnly => "pds",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "fullow" => Some(Self::FullLow),
            "bfgs-fd" => Some(Self::FullOnly),
            "pds" => Some(Self::LowOnly),
            _ => None,
        }
    }
}

/// Backtrack floor for the Full-Eval-only ablation.
const ABLATION_BACKTRACK_FLOOR: u32 = 50;
/// Direct-search stepsize ceiling; crossing it aborts with a diagnostic.
const ALPHA_OVERFLOW_LIMIT: f64 = 1e30;
/// Direct-search stepsize floor. Below roughly 1e-154 the forcing function
/// underflows to zero and the switch condition degenerates, so the run is
/// cut off with a diagnostic well before that.
const ALPHA_UNDERFLOW_LIMIT: f64 = 1e-150;

/// Why a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    BudgetExhausted,
    AlphaTolerance,
    GradTolerance,
    AlphaOverflow,
    AlphaUnderflow,
}

/// Everything a finished run reports.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub history: RunHistory,
    pub log: IterationLog,
    /// Best point over every evaluation of the run.
    pub final_point: Vec<f64>,
    /// Observed value at the best point.
    pub final_f: f64,
    pub evals_used: u64,
    pub stop: StopReason,
    /// Refinement-loop cap hits (degenerate stationary points).
    pub criticality_cap_hits: u32,
}

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("budget {budget} too small: this problem needs at least {required} evaluations")]
    BudgetTooSmall { budget: u64, required: u64 },
    #[error(transparent)]
    InvalidConfig(#[from] crate::config::ConfigError),
}

/// Gradient override used by tests that inject exact gradients.
pub type GradientFn<'a> = dyn Fn(&[f64]) -> Vec<f64> + 'a;

/// Runs the full method on `problem`.
pub fn solve(problem: &ProblemSpec, cfg: &SolverConfig) -> Result<RunReport, SolveError> {
    solve_with(problem, cfg, SolverMode::FullLow, None)
}

/// Runs one of the single-iteration-type ablations.
pub fn solve_ablation(
    problem: &ProblemSpec,
    cfg: &SolverConfig,
    mode: SolverMode,
) -> Result<RunReport, SolveError> {
    solve_with(problem, cfg, mode, None)
}

/// Full-control entry point: mode plus an optional analytic gradient
/// (evaluations for gradients then cost nothing).
pub fn solve_with(
    problem: &ProblemSpec,
    cfg: &SolverConfig,
    mode: SolverMode,
    gradient: Option<&GradientFn>,
) -> Result<RunReport, SolveError> {
    cfg.validate()?;
    let n = problem.dim() as u64;
    let required = n + 2;
    if cfg.budget < required {
        return Err(SolveError::BudgetTooSmall {
            budget: cfg.budget,
            required,
        });
    }
    let driver = Driver {
        oracle: ObjectiveOracle::new(problem.clone(), cfg.budget, cfg.seed),
        cfg,
        mode,
        gradient,
        x: DVector::from_column_slice(problem.x0()),
        f_x: f64::INFINITY,
        fe: FullEvalState::new(cfg),
        le: LowEvalState::new(cfg),
        bootstrap_done: false,
        scaled_h0_pending: false,
        dir_rng: seeded_rng(cfg.seed, STREAM_DIRECTIONS),
        log: IterationLog::default(),
        stop: None,
        criticality_cap_hits: 0,
    };
    Ok(driver.run())
}

struct Driver<'a> {
    oracle: ObjectiveOracle,
    cfg: &'a SolverConfig,
    mode: SolverMode,
    gradient: Option<&'a GradientFn<'a>>,
    x: DVector<f64>,
    f_x: f64,
    fe: FullEvalState,
    le: LowEvalState,
    bootstrap_done: bool,
    scaled_h0_pending: bool,
    dir_rng: rand_chacha::ChaCha8Rng,
    log: IterationLog,
    stop: Option<StopReason>,
    criticality_cap_hits: u32,
}

impl Driver<'_> {
    fn run(mut self) -> RunReport {
        // budget >= n + 2 guarantees this first evaluation succeeds
        self.f_x = self
            .oracle
            .evaluate(self.x.clone().as_slice())
            .expect("budget admits the starting evaluation");
        self.log.setup_evals = 1;

        let mut kind = match self.mode {
            SolverMode::LowOnly => IterationKind::LowEval,
            _ => IterationKind::FullEval,
        };
        while self.stop.is_none() {
            kind = match kind {
                IterationKind::FullEval => self.full_eval_iteration(),
                IterationKind::LowEval => self.low_eval_iteration(),
            };
        }

        let evals_used = self.oracle.used();
        let final_f = self.oracle.best_f();
        let final_point = self.oracle.best_x().to_vec();
        RunReport {
            history: self.oracle.into_history(),
            log: self.log,
            final_point,
            final_f,
            evals_used,
            stop: self.stop.unwrap(),
            criticality_cap_hits: self.criticality_cap_hits,
        }
    }

    fn record(&mut self, rec: IterationRecord) {
        self.log.records.push(rec);
    }

    /// Runs one Full-Eval iteration and returns the next iteration kind.
    fn full_eval_iteration(&mut self) -> IterationKind {
        let evals_before = self.oracle.used();
        let alpha = self.le.alpha;
        let f_before = self.f_x;
        let abort = |driver: &mut Self, reason: StopReason, evals_before: u64| {
            let evals = driver.oracle.used() - evals_before;
            driver.record(IterationRecord {
                kind: IterationKind::FullEval,
                success: false,
                aborted: true,
                step: 0.0,
                alpha,
                count: 0,
                limit: 0,
                evals,
                f_before,
                f_after: f_before,
                dir_deriv: 0.0,
            });
            driver.stop = Some(reason);
            IterationKind::FullEval
        };

        // gradient
        let g = match self.gradient {
            Some(grad) => DVector::from_vec(grad(self.x.as_slice())),
            None => match fd_gradient(&mut self.oracle, &self.x, self.f_x, self.fe.h_fd) {
                Ok(g) => g,
                Err(BudgetExhausted) => {
                    return abort(self, StopReason::BudgetExhausted, evals_before)
                }
            },
        };
        let g = if self.cfg.criticality_enabled
            && self.fe.h_fd > self.cfg.u_g_prime * self.cfg.beta_bar * g.norm()
        {
            match criticality_step(
                &mut self.oracle,
                &self.x,
                self.f_x,
                &g,
                self.fe.h_fd,
                self.cfg.beta_bar,
                self.cfg,
            ) {
                Ok(out) => {
                    if out.cap_hit {
                        self.criticality_cap_hits += 1;
                    }
                    self.fe.h_fd = out.h;
                    out.gradient
                }
                Err(BudgetExhausted) => {
                    return abort(self, StopReason::BudgetExhausted, evals_before)
                }
            }
        } else {
            g
        };
        if let Some(tol) = self.cfg.stop_grad_below {
            if g.norm() < tol {
                return abort(self, StopReason::GradTolerance, evals_before);
            }
        }

        // direction: steepest descent on the bootstrap iteration, the
        // quasi-Newton direction afterwards
        let p = if !self.bootstrap_done {
            -g.clone()
        } else {
            if let (Some(xp), Some(gp)) = (self.fe.x_prev.as_ref(), self.fe.g_prev.as_ref()) {
                let s = &self.x - xp;
                let y = &g - gp;
                if self.fe.h_matrix.is_none() {
                    let t1 = if self.scaled_h0_pending {
                        IterationKind::FullEval
                    } else {
                        IterationKind::LowEval
                    };
                    self.fe.h_matrix = Some(h0_init(&s, &y, t1));
                }
                let h = self.fe.h_matrix.as_ref().unwrap();
                if let Some(updated) = bfgs_update(h, &s, &y, self.cfg.eps_curvature) {
                    self.fe.h_matrix = Some(updated);
                }
            }
            search_direction(&g, self.fe.h_matrix.as_ref())
        };
        let dir_deriv = g.dot(&p);

        let rule = match self.mode {
            SolverMode::FullOnly => StopRule::BacktrackFloor(ABLATION_BACKTRACK_FLOOR),
            _ => StopRule::Forcing { alpha },
        };
        let outcome = match backtrack_line_search(
            &mut self.oracle,
            &self.x,
            self.f_x,
            &g,
            &p,
            rule,
            self.cfg,
        ) {
            Ok(out) => out,
            Err(BudgetExhausted) => {
                // keep the stored pair current even on an abort
                self.fe.x_prev = Some(self.x.clone());
                self.fe.g_prev = Some(g);
                return abort(self, StopReason::BudgetExhausted, evals_before);
            }
        };

        let x_at_gradient = self.x.clone();
        let evals = self.oracle.used() - evals_before;
        let next = match outcome {
            LineSearchOutcome::Success {
                x_next,
                f_next,
                beta,
                backtracks,
            } => {
                self.record(IterationRecord {
                    kind: IterationKind::FullEval,
                    success: true,
                    aborted: false,
                    step: beta,
                    alpha,
                    count: backtracks,
                    limit: 0,
                    evals,
                    f_before,
                    f_after: f_next,
                    dir_deriv,
                });
                self.x = x_next;
                self.f_x = f_next;
                self.fe.nb_last = backtracks;
                if !self.bootstrap_done {
                    self.scaled_h0_pending = true;
                }
                IterationKind::FullEval
            }
            LineSearchOutcome::Abandoned {
                backtracks,
                last_beta,
            } => {
                self.record(IterationRecord {
                    kind: IterationKind::FullEval,
                    success: false,
                    aborted: false,
                    step: last_beta,
                    alpha,
                    count: backtracks,
                    limit: 0,
                    evals,
                    f_before,
                    f_after: f_before,
                    dir_deriv,
                });
                self.fe.nb_last = backtracks;
                match self.mode {
                    SolverMode::FullOnly => IterationKind::FullEval,
                    _ => {
                        if !self.bootstrap_done {
                            // bootstrap failed: plain identity seed
                            self.fe.h_matrix =
                                Some(nalgebra::DMatrix::identity(self.x.len(), self.x.len()));
                        }
                        self.le.nu = 0;
                        IterationKind::LowEval
                    }
                }
            }
        };
        self.fe.x_prev = Some(x_at_gradient);
        self.fe.g_prev = Some(g);
        self.bootstrap_done = true;
        next
    }

    /// Runs one Low-Eval iteration and returns the next iteration kind.
    fn low_eval_iteration(&mut self) -> IterationKind {
        let evals_before = self.oracle.used();
        let alpha = self.le.alpha;
        let f_before = self.f_x;
        let out = match low_eval_iteration(
            &mut self.oracle,
            &self.x,
            self.f_x,
            self.le,
            self.fe.nb_last,
            &mut self.dir_rng,
            self.cfg,
        ) {
            Ok(out) => out,
            Err(BudgetExhausted) => {
                let evals = self.oracle.used() - evals_before;
                self.record(IterationRecord {
                    kind: IterationKind::LowEval,
                    success: false,
                    aborted: true,
                    step: alpha,
                    alpha,
                    count: self.le.nu,
                    limit: self.fe.nb_last,
                    evals,
                    f_before,
                    f_after: f_before,
                    dir_deriv: 0.0,
                });
                self.stop = Some(StopReason::BudgetExhausted);
                return IterationKind::LowEval;
            }
        };
        let evals = self.oracle.used() - evals_before;
        self.record(IterationRecord {
            kind: IterationKind::LowEval,
            success: out.success,
            aborted: false,
            step: alpha,
            alpha,
            count: out.state_next.nu,
            limit: self.fe.nb_last,
            evals,
            f_before,
            f_after: out.f_next,
            dir_deriv: 0.0,
        });
        self.x = out.x_next;
        self.f_x = out.f_next;
        self.le = out.state_next;
        if self.le.alpha > ALPHA_OVERFLOW_LIMIT {
            self.stop = Some(StopReason::AlphaOverflow);
        }
        if self.le.alpha < ALPHA_UNDERFLOW_LIMIT {
            self.stop = Some(StopReason::AlphaUnderflow);
        }
        if let Some(tol) = self.cfg.stop_alpha_below {
            if self.le.alpha < tol {
                self.stop = Some(StopReason::AlphaTolerance);
            }
        }
        match self.mode {
            SolverMode::LowOnly => IterationKind::LowEval,
            _ => out.next_kind,
        }
    }
}
