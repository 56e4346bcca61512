//! Benchmark problem suite: residual-based test functions in smooth and
//! piecewise form, four noise wrappers, and a set of dimension-scalable
//! classics. Problems are addressable by string name for the CLI and the
//! results pipeline.

mod morewild;
mod noise;
mod scalable;

pub use morewild::{MwFunction, BENCHMARK_SET};
pub use noise::{apply_noise, deterministic_noise, NoiseConfig, NoiseKind};
pub use scalable::{ScalableKind, ALL_SCALABLE};

use crate::point::Point;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// How the objective value is aggregated / perturbed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    /// Sum of squared residuals (or the direct value for non-residual problems).
    Smooth,
    /// Sum of absolute residuals: continuous, non-differentiable on the
    /// residual zero sets.
    Piecewise,
    /// Smooth value wrapped in noise.
    Noisy(NoiseKind),
}

impl Variant {
    pub fn label(&self) -> String {
        match self {
            Self::Smooth => "smooth".to_string(),
            Self::Piecewise => "piecewise".to_string(),
            Self::Noisy(kind) => kind.label().to_string(),
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "smooth" => Some(Self::Smooth),
            "piecewise" => Some(Self::Piecewise),
            other => NoiseKind::from_label(other).map(Self::Noisy),
        }
    }
}

type CustomFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Underlying function of a problem.
#[derive(Clone)]
enum Source {
    Residuals { func: MwFunction, m: usize },
    Direct(ScalableKind),
    Custom(CustomFn),
}

impl fmt::Debug for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Residuals { func, m } => write!(f, "Residuals({}, m={m})", func.name()),
            Self::Direct(k) => write!(f, "Direct({})", k.name()),
            Self::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// One benchmark problem: base function, dimension, start, and variant.
///
/// Immutable after construction; safe to share across concurrent runs.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    name: String,
    x0: Point,
    source: Source,
    variant: Variant,
    eps_f: f64,
    known_l: Option<f64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProblemError {
    #[error("unknown problem name `{0}`")]
    UnknownName(String),
    #[error("unknown variant `{0}`")]
    UnknownVariant(String),
    #[error("problem `{name}` does not support variant `{variant}`")]
    UnsupportedVariant { name: String, variant: String },
}

impl ProblemSpec {
    /// A problem defined by an arbitrary objective closure (test and ad-hoc
    /// use). The variant is always `Smooth`: the closure IS the value.
    ///
    /// Panics when `x0` is empty or has non-finite coordinates.
    pub fn custom<F>(name: &str, x0: Vec<f64>, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.to_string(),
            x0: Point::new(x0).expect("starting point must be finite and non-empty"),
            source: Source::Custom(Arc::new(f)),
            variant: Variant::Smooth,
            eps_f: 0.0,
            known_l: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.x0.dim()
    }

    pub fn x0(&self) -> &[f64] {
        self.x0.coords()
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn eps_f(&self) -> f64 {
        self.eps_f
    }

    pub fn known_l(&self) -> Option<f64> {
        self.known_l
    }

    /// Lipschitz bound for test oracles, where one is known.
    pub fn with_known_l(mut self, l: f64) -> Self {
        self.known_l = Some(l);
        self
    }

    /// Attaches a noise wrapper around the smooth value.
    pub fn with_noise(mut self, kind: NoiseKind, eps_f: f64) -> Self {
        self.variant = Variant::Noisy(kind);
        self.eps_f = eps_f;
        self
    }

    /// Switches a residual-based problem to the piecewise (sum of absolute
    /// residuals) form.
    pub fn piecewise(mut self) -> Self {
        debug_assert!(matches!(self.source, Source::Residuals { .. }));
        self.variant = Variant::Piecewise;
        self
    }

    /// Noise configuration, when the variant carries one.
    pub fn noise(&self) -> Option<NoiseConfig> {
        match self.variant {
            Variant::Noisy(kind) => Some(NoiseConfig {
                kind,
                eps_f: self.eps_f,
            }),
            _ => None,
        }
    }

    /// Smooth value: sum of squared residuals or the direct formula.
    /// Overflow resolves to +inf.
    pub fn eval_smooth(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        let v = match &self.source {
            Source::Residuals { func, m } => {
                let mut r = vec![0.0; *m];
                func.residuals(x, &mut r);
                r.iter().map(|v| v * v).sum()
            }
            Source::Direct(k) => k.value(x),
            Source::Custom(f) => f(x),
        };
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }

    /// Piecewise value: sum of absolute residuals.
    pub fn eval_piecewise(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        let v = match &self.source {
            Source::Residuals { func, m } => {
                let mut r = vec![0.0; *m];
                func.residuals(x, &mut r);
                r.iter().map(|v| v.abs()).sum()
            }
            // no residual structure: fall back to the direct value
            Source::Direct(k) => k.value(x),
            Source::Custom(f) => f(x),
        };
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }

    /// Clean (noise-free) value under this spec's variant.
    pub fn base_value(&self, x: &[f64]) -> f64 {
        match self.variant {
            Variant::Piecewise => self.eval_piecewise(x),
            _ => self.eval_smooth(x),
        }
    }
}

fn mw_spec(func: MwFunction, n: usize, m: usize, tenfold: bool) -> ProblemSpec {
    let mut x0 = func.standard_start(n);
    if tenfold {
        for v in &mut x0 {
            *v *= 10.0;
        }
    }
    let name = if tenfold {
        format!("{}_{}_s1", func.name(), n)
    } else {
        format!("{}_{}", func.name(), n)
    };
    ProblemSpec {
        name,
        x0: Point::new(x0).expect("benchmark starting points are finite"),
        source: Source::Residuals { func, m },
        variant: Variant::Smooth,
        eps_f: 0.0,
        known_l: None,
    }
}

/// The 53-problem suite in smooth form.
pub fn smooth53() -> Vec<ProblemSpec> {
    BENCHMARK_SET
        .iter()
        .map(|&(f, n, m, s)| mw_spec(f, n, m, s))
        .collect()
}

/// The 53-problem suite in piecewise (sum of absolute residuals) form.
pub fn piecewise53() -> Vec<ProblemSpec> {
    smooth53().into_iter().map(|p| p.piecewise()).collect()
}

/// The 53-problem suite with a noise wrapper around the smooth value.
pub fn noisy53(kind: NoiseKind, eps_f: f64) -> Vec<ProblemSpec> {
    smooth53()
        .into_iter()
        .map(|p| p.with_noise(kind, eps_f))
        .collect()
}

/// One scalable problem at dimension `n`.
pub fn scalable_problem(kind: ScalableKind, n: usize) -> ProblemSpec {
    ProblemSpec {
        name: format!("{}_{}", kind.name(), n),
        x0: Point::new(kind.standard_start(n)).expect("benchmark starting points are finite"),
        source: Source::Direct(kind),
        variant: Variant::Smooth,
        eps_f: 0.0,
        known_l: None,
    }
}

/// All 12 scalable problems at dimension `n`.
pub fn scalable_suite(n: usize) -> Vec<ProblemSpec> {
    ALL_SCALABLE
        .iter()
        .map(|&k| scalable_problem(k, n))
        .collect()
}

/// Looks a problem up by registry name, applying `variant` and `eps_f`.
///
/// Names are `<function>_<n>` with an `_s1` suffix for the tenfold starting
/// points (e.g. `rosenbrock_2`, `watson_12_s1`, `arwhead_40`); the alias
/// `rosenbrock` resolves to `rosenbrock_2`.
pub fn lookup(name: &str, variant: Variant, eps_f: f64) -> Result<ProblemSpec, ProblemError> {
    let key = name.to_ascii_lowercase();
    let key = if key == "rosenbrock" {
        "rosenbrock_2".to_string()
    } else {
        key
    };
    let base = BENCHMARK_SET
        .iter()
        .map(|&(f, n, m, s)| mw_spec(f, n, m, s))
        .find(|p| p.name == key)
        .or_else(|| {
            // scalable names: <kind>_<n> for any n >= 4
            let (stem, dim) = key.rsplit_once('_')?;
            let n: usize = dim.parse().ok()?;
            let kind = ScalableKind::from_name(stem)?;
            (n >= 4).then(|| scalable_problem(kind, n))
        })
        .ok_or_else(|| ProblemError::UnknownName(name.to_string()))?;

    match variant {
        Variant::Smooth => Ok(base),
        Variant::Piecewise => {
            if matches!(base.source, Source::Residuals { .. }) {
                Ok(base.piecewise())
            } else {
                Err(ProblemError::UnsupportedVariant {
                    name: key,
                    variant: variant.label(),
                })
            }
        }
        Variant::Noisy(kind) => Ok(base.with_noise(kind, eps_f)),
    }
}
