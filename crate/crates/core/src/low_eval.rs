//! The cheap iteration: poll the objective along one uniformly random unit
//! direction and its negative, accept on sufficient decrease against the
//! forcing function, and update the stepsize geometrically.

use crate::config::{forcing_rho, SolverConfig};
use crate::history::IterationKind;
use crate::oracle::{BudgetExhausted, ObjectiveOracle};
use nalgebra::DVector;
use rand::RngExt;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Persistent state of the Low-Eval side of a run.
#[derive(Debug, Clone, Copy)]
pub struct LowEvalState {
    /// Direct-search stepsize; changes only by the expansion or
    /// contraction factor.
    pub alpha: f64,
    /// Consecutive unsuccessful Low-Eval iterations since the last
    /// Full-Eval iteration.
    pub nu: u32,
}

impl LowEvalState {
    pub fn new(cfg: &SolverConfig) -> Self {
        Self {
            alpha: cfg.alpha0,
            nu: 0,
        }
    }
}

/// Draws a direction uniformly from the unit sphere in `n` dimensions
/// (standard normal vector, normalized; zero-norm draws are rejected).
pub fn sample_sphere_direction(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    debug_assert!(n >= 1);
    loop {
        let d = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let norm = d.norm();
        if norm > 1e-300 {
            return d / norm;
        }
    }
}

/// Result of polling one direction pair.
#[derive(Debug, Clone)]
pub enum PollOutcome {
    /// A polled point achieved `f <= f_x - rho(alpha)`; `direction` is the
    /// accepted member of the pair (`d` or `-d`).
    Success {
        x_next: DVector<f64>,
        f_next: f64,
        direction: DVector<f64>,
    },
    Failure,
}

/// Opportunistic poll of `x + alpha d` then `x - alpha d`.
///
/// Consumes one evaluation if the first direction is accepted, two
/// otherwise. Poll points with non-finite coordinates are rejected without
/// spending an evaluation.
pub fn poll(
    oracle: &mut ObjectiveOracle,
    x: &DVector<f64>,
    f_x: f64,
    alpha: f64,
    d: &DVector<f64>,
    cfg: &SolverConfig,
) -> Result<PollOutcome, BudgetExhausted> {
    debug_assert!(alpha > 0.0);
    let target = f_x - forcing_rho(alpha, cfg);
    for sign in [1.0, -1.0] {
        let dir = d * sign;
        let trial = x + &dir * alpha;
        if !trial.iter().all(|v| v.is_finite()) {
            continue;
        }
        let f_trial = oracle.evaluate(trial.as_slice())?;
        if f_trial <= target {
            return Ok(PollOutcome::Success {
                x_next: trial,
                f_next: f_trial,
                direction: dir,
            });
        }
    }
    Ok(PollOutcome::Failure)
}

/// Everything a Low-Eval iteration changed.
#[derive(Debug, Clone)]
pub struct LowEvalIteration {
    pub x_next: DVector<f64>,
    pub f_next: f64,
    pub state_next: LowEvalState,
    pub next_kind: IterationKind,
    pub success: bool,
}

/// One full Low-Eval iteration: draw a direction, poll, update the
/// stepsize and the failure counter, then decide the next iteration type
/// by comparing the updated counter against `nb_last`.
pub fn low_eval_iteration(
    oracle: &mut ObjectiveOracle,
    x: &DVector<f64>,
    f_x: f64,
    state: LowEvalState,
    nb_last: u32,
    rng: &mut ChaCha8Rng,
    cfg: &SolverConfig,
) -> Result<LowEvalIteration, BudgetExhausted> {
    let d = sample_sphere_direction(rng, x.len());
    let outcome = poll(oracle, x, f_x, state.alpha, &d, cfg)?;
    let (x_next, f_next, state_next, success) = match outcome {
        PollOutcome::Success { x_next, f_next, .. } => (
            x_next,
            f_next,
            LowEvalState {
                alpha: state.alpha * cfg.lambda_expand,
                nu: state.nu,
            },
            true,
        ),
        PollOutcome::Failure => (
            x.clone(),
            f_x,
            LowEvalState {
                alpha: state.alpha * cfg.theta_contract,
                nu: state.nu + 1,
            },
            false,
        ),
    };
    let next_kind = if state_next.nu < nb_last {
        IterationKind::LowEval
    } else {
        IterationKind::FullEval
    };
    Ok(LowEvalIteration {
        x_next,
        f_next,
        state_next,
        next_kind,
        success,
    })
}
