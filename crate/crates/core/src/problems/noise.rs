//! Noise wrappers: a deterministic oscillatory perturbation and uniform
//! stochastic draws, each in additive and multiplicative (relative) form.

use rand::RngExt;
use rand_chacha::ChaCha8Rng;

/// Noise placement and randomness of the perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    AdditiveDeterministic,
    AdditiveStochastic,
    MultiplicativeDeterministic,
    MultiplicativeStochastic,
}

impl NoiseKind {
    pub fn label(&self) -> &'static str {
        match self {
            Self::AdditiveDeterministic => "add-det",
            Self::AdditiveStochastic => "add-stoch",
            Self::MultiplicativeDeterministic => "mult-det",
            Self::MultiplicativeStochastic => "mult-stoch",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "add-det" => Some(Self::AdditiveDeterministic),
            "add-stoch" => Some(Self::AdditiveStochastic),
            "mult-det" => Some(Self::MultiplicativeDeterministic),
            "mult-stoch" => Some(Self::MultiplicativeStochastic),
            _ => None,
        }
    }

    pub fn is_stochastic(&self) -> bool {
        matches!(
            self,
            Self::AdditiveStochastic | Self::MultiplicativeStochastic
        )
    }
}

/// Noise attached to a problem: kind plus relative level `eps_f >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseConfig {
    pub kind: NoiseKind,
    pub eps_f: f64,
}

/// Deterministic noise function mapping into [-1, 1]: a cubic Chebyshev
/// polynomial of a high-frequency trigonometric term in the point's norms.
pub fn deterministic_noise(x: &[f64]) -> f64 {
    let n1: f64 = x.iter().map(|v| v.abs()).sum();
    let ninf: f64 = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let n2: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let p = 0.9 * (100.0 * n1).sin() * (100.0 * ninf).cos() + 0.1 * n2.cos();
    p * (4.0 * p * p - 3.0)
}

/// Applies `noise` to a clean value `phi` at point `x`.
///
/// Stochastic kinds draw fresh from `rng` on every call, so repeated
/// evaluations at the same point see independent perturbations.
pub fn apply_noise(noise: &NoiseConfig, phi: f64, x: &[f64], rng: &mut ChaCha8Rng) -> f64 {
    let eps = noise.eps_f;
    match noise.kind {
        NoiseKind::AdditiveDeterministic => phi + eps * deterministic_noise(x),
        NoiseKind::AdditiveStochastic => phi + rng.random_range(-eps..=eps),
        NoiseKind::MultiplicativeDeterministic => phi * (1.0 + eps * deterministic_noise(x)),
        NoiseKind::MultiplicativeStochastic => phi * (1.0 + rng.random_range(-eps..=eps)),
    }
}
