//! Run histories and per-iteration logs.

/// Best-so-far trace of one run, indexed by evaluation count.
///
/// Only improving entries are stored: `entries[k] = (eval_index, best_f)`
/// with strictly increasing indices and non-increasing values. This is
/// enough to answer "best value after any evaluation cutoff".
#[derive(Debug, Clone, PartialEq)]
pub struct RunHistory {
    /// Observed value at the starting point (first evaluation of the run).
    pub f0: f64,
    /// Improving (eval_index, best_f) pairs; eval indices start at 1.
    pub entries: Vec<(u64, f64)>,
    /// Coordinates of the best point ever evaluated.
    pub final_point: Vec<f64>,
}

impl RunHistory {
    /// Best observed value within the first `cutoff` evaluations.
    pub fn best_at(&self, cutoff: u64) -> Option<f64> {
        self.entries
            .iter()
            .take_while(|(idx, _)| *idx <= cutoff)
            .last()
            .map(|(_, f)| *f)
    }

    /// Best observed value over the whole run.
    pub fn best(&self) -> Option<f64> {
        self.entries.last().map(|(_, f)| *f)
    }
}

/// Kind of an iteration of the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterationKind {
    FullEval,
    LowEval,
}

/// Everything recorded about one iteration.
///
/// Enough is kept to re-verify the acceptance conditions after the fact:
/// the sufficient-decrease inequality, the switch bound, and the exact
/// evaluation accounting.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub kind: IterationKind,
    pub success: bool,
    /// True if the budget ran out partway through the iteration.
    pub aborted: bool,
    /// Accepted (or last tested) line-search stepsize for FullEval
    /// iterations; the polling stepsize for LowEval iterations.
    pub step: f64,
    /// Direct-search stepsize alpha_k at the start of this iteration.
    pub alpha: f64,
    /// Backtrack count nb_k (FullEval) or updated failure count nu_{k+1}
    /// (LowEval).
    pub count: u32,
    /// Threshold nb used by the LowEval switch rule; 0 for FullEval rows.
    pub limit: u32,
    /// Function evaluations consumed by this iteration.
    pub evals: u64,
    /// f at the incumbent when the iteration started.
    pub f_before: f64,
    /// f at the incumbent when the iteration ended (== f_before on failure).
    pub f_after: f64,
    /// Directional derivative g.p of the accepted search direction
    /// (FullEval only; 0 on LowEval and aborted rows).
    pub dir_deriv: f64,
}

impl IterationRecord {
    pub fn is_successful_full(&self) -> bool {
        self.kind == IterationKind::FullEval && self.success
    }
    pub fn is_successful_low(&self) -> bool {
        self.kind == IterationKind::LowEval && self.success
    }
}

/// Ordered per-iteration records plus the run's setup cost.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IterationLog {
    /// Evaluations spent before the first iteration (the f(x0) evaluation).
    pub setup_evals: u64,
    pub records: Vec<IterationRecord>,
}

impl IterationLog {
    /// Total evaluations accounted for by the log.
    pub fn total_evals(&self) -> u64 {
        self.setup_evals + self.records.iter().map(|r| r.evals).sum::<u64>()
    }

    /// Counts of (successful full, unsuccessful full, successful low,
    /// unsuccessful low) iterations.
    pub fn partition_counts(&self) -> (usize, usize, usize, usize) {
        let mut sf = 0;
        let mut uf = 0;
        let mut sl = 0;
        let mut ul = 0;
        for r in &self.records {
            match (r.kind, r.success) {
                (IterationKind::FullEval, true) => sf += 1,
                (IterationKind::FullEval, false) => uf += 1,
                (IterationKind::LowEval, true) => sl += 1,
                (IterationKind::LowEval, false) => ul += 1,
            }
        }
        (sf, uf, sl, ul)
    }
}
