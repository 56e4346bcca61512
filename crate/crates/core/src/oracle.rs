//! The objective oracle: the single gateway through which the solver sees a
//! problem. It counts every evaluation, refuses to exceed the budget,
//! applies the configured noise wrapper, and maintains the best-so-far
//! trace that the profile machinery consumes.

use crate::history::RunHistory;
use crate::problems::{apply_noise, ProblemSpec};
use crate::rng::{seeded_rng, STREAM_NOISE};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Signalled when an evaluation is requested at an exhausted budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("evaluation budget exhausted")]
pub struct BudgetExhausted;

/// Counting, budget-enforcing view of one problem for one run.
pub struct ObjectiveOracle {
    spec: ProblemSpec,
    budget: u64,
    used: u64,
    noise_rng: ChaCha8Rng,
    best_f: f64,
    best_x: Vec<f64>,
    f0: Option<f64>,
    entries: Vec<(u64, f64)>,
}

impl ObjectiveOracle {
    /// New oracle with its own noise stream derived from `seed`.
    pub fn new(spec: ProblemSpec, budget: u64, seed: u64) -> Self {
        let x0 = spec.x0().to_vec();
        Self {
            spec,
            budget,
            used: 0,
            noise_rng: seeded_rng(seed, STREAM_NOISE),
            best_f: f64::INFINITY,
            best_x: x0,
            f0: None,
            entries: Vec::new(),
        }
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Evaluations consumed so far.
    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.budget - self.used
    }

    /// Observed objective value at `x`.
    ///
    /// Consumes exactly one evaluation or fails with [`BudgetExhausted`]
    /// without consuming anything. Non-finite values are reported as +inf so
    /// the caller's decrease tests reject the point. Every evaluation,
    /// including gradient probes and polls, feeds the best-so-far trace.
    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64, BudgetExhausted> {
        debug_assert_eq!(x.len(), self.spec.dim());
        if self.used >= self.budget {
            return Err(BudgetExhausted);
        }
        self.used += 1;
        let clean = self.spec.base_value(x);
        let observed = match self.spec.noise() {
            Some(noise) => apply_noise(&noise, clean, x, &mut self.noise_rng),
            None => clean,
        };
        let observed = if observed.is_nan() {
            f64::INFINITY
        } else {
            observed
        };
        if self.f0.is_none() {
            self.f0 = Some(observed);
        }
        if observed < self.best_f {
            self.best_f = observed;
            self.best_x.clear();
            self.best_x.extend_from_slice(x);
            self.entries.push((self.used, observed));
        }
        Ok(observed)
    }

    /// Best observed value so far (+inf before the first finite value).
    pub fn best_f(&self) -> f64 {
        self.best_f
    }

    pub fn best_x(&self) -> &[f64] {
        &self.best_x
    }

    /// Finalizes the run trace.
    pub fn into_history(self) -> RunHistory {
        RunHistory {
            f0: self.f0.unwrap_or(f64::INFINITY),
            entries: self.entries,
            final_point: self.best_x,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere() -> ProblemSpec {
        ProblemSpec::custom("sphere", vec![0.0, 0.0], |x| x.iter().map(|v| v * v).sum())
    }

    #[test]
    fn counts_and_values() {
        let mut oracle = ObjectiveOracle::new(sphere(), 10, 0);
        assert_eq!(oracle.used(), 0);
        assert_eq!(oracle.evaluate(&[0.0, 0.0]), Ok(0.0));
        assert_eq!(oracle.used(), 1);
        assert_eq!(oracle.evaluate(&[1.0, 2.0]), Ok(5.0));
        assert_eq!(oracle.used(), 2);
    }

    #[test]
    fn refuses_beyond_budget() {
        let mut oracle = ObjectiveOracle::new(sphere(), 2, 0);
        oracle.evaluate(&[1.0, 1.0]).unwrap();
        oracle.evaluate(&[1.0, 1.0]).unwrap();
        assert_eq!(oracle.evaluate(&[1.0, 1.0]), Err(BudgetExhausted));
        assert_eq!(oracle.used(), 2);
    }

    #[test]
    fn history_is_improving_and_tracks_best_point() {
        let mut oracle = ObjectiveOracle::new(sphere(), 10, 0);
        oracle.evaluate(&[2.0, 0.0]).unwrap(); // 4
        oracle.evaluate(&[3.0, 0.0]).unwrap(); // 9, no improvement
        oracle.evaluate(&[1.0, 0.0]).unwrap(); // 1
        assert_eq!(oracle.best_f(), 1.0);
        assert_eq!(oracle.best_x(), &[1.0, 0.0]);
        let h = oracle.into_history();
        assert_eq!(h.f0, 4.0);
        assert_eq!(h.entries, vec![(1, 4.0), (3, 1.0)]);
        assert!(h.entries.windows(2).all(|w| w[0].1 >= w[1].1));
    }

    #[test]
    fn non_finite_values_surface_as_infinity() {
        let spec = ProblemSpec::custom(
            "bad",
            vec![0.0],
            |x| {
                if x[0] > 0.5 {
                    f64::NAN
                } else {
                    x[0]
                }
            },
        );
        let mut oracle = ObjectiveOracle::new(spec, 10, 0);
        assert_eq!(oracle.evaluate(&[1.0]), Ok(f64::INFINITY));
        assert_eq!(oracle.evaluate(&[0.25]), Ok(0.25));
        // the non-finite evaluation still counted
        assert_eq!(oracle.used(), 2);
        let h = oracle.into_history();
        assert_eq!(h.entries, vec![(2, 0.25)]);
    }
}
