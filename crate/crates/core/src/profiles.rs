//! Post-processing: the convergence test, evaluations-to-convergence
//! extraction, performance profiles, and data profiles. Pure functions of
//! their inputs; recomputation is bit-identical.

use thiserror::Error;

/// Per-problem row of a profile matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileProblem {
    pub name: String,
    /// Problem dimension, used for the simplex-gradient scaling of data
    /// profiles.
    pub n: usize,
    /// Starting value used by the convergence test.
    pub f0: f64,
    /// Best value any solver reached on this problem within the reference
    /// budget.
    pub f_l: f64,
}

/// Evaluations-to-convergence table: `t[p][s]`, `None` meaning the solver
/// never satisfied the convergence test on that problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileMatrix {
    pub problems: Vec<ProfileProblem>,
    pub solvers: Vec<String>,
    pub t: Vec<Vec<Option<u64>>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum ProfileError {
    #[error("inconsistent data: f0 = {f0} is below f_L = {f_l}")]
    StartBelowBest { f0: f64, f_l: f64 },
    #[error("tau must lie in (0,1), got {0}")]
    BadTau(f64),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
}

/// Smallest evaluation index at which the best-so-far trace satisfies
/// `f0 - best >= (1 - tau) * (f0 - f_l)`; `None` if it never does.
///
/// `history` is the run's improving `(eval_index, best_f)` trace.
pub fn evals_to_convergence(
    history: &[(u64, f64)],
    f0: f64,
    f_l: f64,
    tau: f64,
) -> Result<Option<u64>, ProfileError> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(ProfileError::BadTau(tau));
    }
    if f0 < f_l {
        return Err(ProfileError::StartBelowBest { f0, f_l });
    }
    let required = (1.0 - tau) * (f0 - f_l);
    Ok(history
        .iter()
        .find(|(_, best)| f0 - best >= required)
        .map(|(idx, _)| *idx))
}

/// One solver's profile curve sampled on a grid of ratios/budgets.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverCurve {
    pub solver: String,
    /// `(alpha, fraction)` pairs, non-decreasing in both coordinates.
    pub points: Vec<(f64, f64)>,
}

impl ProfileMatrix {
    pub fn validate(&self) -> Result<(), ProfileError> {
        if self.t.len() != self.problems.len() {
            return Err(ProfileError::Shape(format!(
                "{} rows for {} problems",
                self.t.len(),
                self.problems.len()
            )));
        }
        for row in &self.t {
            if row.len() != self.solvers.len() {
                return Err(ProfileError::Shape(format!(
                    "{} entries for {} solvers",
                    row.len(),
                    self.solvers.len()
                )));
            }
        }
        Ok(())
    }

    /// Performance ratios `r[p][s] = t[p][s] / min_s t[p][s]`. Rows where
    /// every solver failed stay `None` for all solvers (the problem still
    /// counts in the denominator of the profile).
    pub fn performance_ratios(&self) -> Vec<Vec<Option<f64>>> {
        self.t
            .iter()
            .map(|row| {
                let best = row.iter().flatten().min().copied();
                row.iter()
                    .map(|entry| match (entry, best) {
                        (Some(t), Some(b)) => Some(*t as f64 / b as f64),
                        _ => None,
                    })
                    .collect()
            })
            .collect()
    }

    /// Fraction of problems with performance ratio at most `alpha` for one
    /// solver column.
    fn rho_from_ratios(&self, ratios: &[Vec<Option<f64>>], s: usize, alpha: f64) -> f64 {
        let solved = ratios
            .iter()
            .filter(|row| row[s].is_some_and(|r| r <= alpha))
            .count();
        solved as f64 / self.problems.len() as f64
    }

    /// Performance profile value for solver `s` at ratio `alpha`.
    pub fn rho(&self, s: usize, alpha: f64) -> f64 {
        self.rho_from_ratios(&self.performance_ratios(), s, alpha)
    }

    /// Data profile value for solver `s` at budget `alpha` (in units of
    /// `n_p + 1` evaluations).
    pub fn data_value(&self, s: usize, alpha: f64) -> f64 {
        let solved = self
            .t
            .iter()
            .zip(&self.problems)
            .filter(|(row, p)| row[s].is_some_and(|t| t as f64 / (p.n as f64 + 1.0) <= alpha))
            .count();
        solved as f64 / self.problems.len() as f64
    }
}

/// Performance profiles on a grid of ratio values.
pub fn performance_profile(pm: &ProfileMatrix, alphas: &[f64]) -> Vec<SolverCurve> {
    let ratios = pm.performance_ratios();
    pm.solvers
        .iter()
        .enumerate()
        .map(|(s, name)| SolverCurve {
            solver: name.clone(),
            points: alphas
                .iter()
                .map(|&a| (a, pm.rho_from_ratios(&ratios, s, a)))
                .collect(),
        })
        .collect()
}

/// Data profiles on a grid of scaled budgets.
pub fn data_profile(pm: &ProfileMatrix, alphas: &[f64]) -> Vec<SolverCurve> {
    pm.solvers
        .iter()
        .enumerate()
        .map(|(s, name)| SolverCurve {
            solver: name.clone(),
            points: alphas.iter().map(|&a| (a, pm.data_value(s, a))).collect(),
        })
        .collect()
}

/// Geometric grid from 1 to `hi` inclusive with `count` points.
pub fn geometric_grid(hi: f64, count: usize) -> Vec<f64> {
    debug_assert!(hi > 1.0 && count >= 2);
    let step = hi.powf(1.0 / (count - 1) as f64);
    let mut v: Vec<f64> = (0..count).map(|i| step.powi(i as i32)).collect();
    v[count - 1] = hi;
    v
}

/// Linear grid from 0 to `hi` inclusive with `count` points.
pub fn linear_grid(hi: f64, count: usize) -> Vec<f64> {
    debug_assert!(count >= 2);
    (0..count)
        .map(|i| hi * i as f64 / (count - 1) as f64)
        .collect()
}
