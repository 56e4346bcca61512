//! Dimension-scalable classic test problems with their standard starting
//! points. Values are computed directly (no residual form).

/// Scalable problem family, addressable by its classic uppercase name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalableKind {
    Arglina,
    Arwhead,
    Broydn3d,
    Dqrtic,
    Engval1,
    Freuroth,
    Penalty2,
    Nondquar,
    Rosenbr,
    Sinquad,
    Tridia,
    Woods,
}

pub const ALL_SCALABLE: [ScalableKind; 12] = [
    ScalableKind::Arglina,
    ScalableKind::Arwhead,
    ScalableKind::Broydn3d,
    ScalableKind::Dqrtic,
    ScalableKind::Engval1,
    ScalableKind::Freuroth,
    ScalableKind::Penalty2,
    ScalableKind::Nondquar,
    ScalableKind::Rosenbr,
    ScalableKind::Sinquad,
    ScalableKind::Tridia,
    ScalableKind::Woods,
];

impl ScalableKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Arglina => "arglina",
            Self::Arwhead => "arwhead",
            Self::Broydn3d => "broydn3d",
            Self::Dqrtic => "dqrtic",
            Self::Engval1 => "engval1",
            Self::Freuroth => "freuroth",
            Self::Penalty2 => "penalty2",
            Self::Nondquar => "nondquar",
            Self::Rosenbr => "rosenbr",
            Self::Sinquad => "sinquad",
            Self::Tridia => "tridia",
            Self::Woods => "woods",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        ALL_SCALABLE
            .iter()
            .copied()
            .find(|k| k.name() == name.to_ascii_lowercase())
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        let n = x.len();
        match self {
            Self::Arglina => {
                // full-rank linear least squares with m = 2n
                let m = 2 * n;
                let s: f64 = x.iter().sum();
                let t = 2.0 * s / m as f64 + 1.0;
                let f: f64 = x.iter().map(|&xi| (xi - t) * (xi - t)).sum();
                f + n as f64 * t * t
            }
            Self::Arwhead => (0..n - 1)
                .map(|i| {
                    let q = x[i] * x[i] + x[n - 1] * x[n - 1];
                    q * q - 4.0 * x[i] + 3.0
                })
                .sum(),
            Self::Broydn3d => (0..n)
                .map(|i| {
                    let xm = if i > 0 { x[i - 1] } else { 0.0 };
                    let xp = if i + 1 < n { x[i + 1] } else { 0.0 };
                    let r = (3.0 - 2.0 * x[i]) * x[i] - xm - 2.0 * xp + 1.0;
                    r * r
                })
                .sum(),
            Self::Dqrtic => (0..n).map(|i| (x[i] - (i + 1) as f64).powi(4)).sum(),
            Self::Engval1 => (0..n - 1)
                .map(|i| {
                    let q = x[i] * x[i] + x[i + 1] * x[i + 1];
                    q * q - 4.0 * x[i] + 3.0
                })
                .sum(),
            Self::Freuroth => (0..n - 1)
                .map(|i| {
                    let r1 = -13.0 + x[i] + ((5.0 - x[i + 1]) * x[i + 1] - 2.0) * x[i + 1];
                    let r2 = -29.0 + x[i] + ((1.0 + x[i + 1]) * x[i + 1] - 14.0) * x[i + 1];
                    r1 * r1 + r2 * r2
                })
                .sum(),
            Self::Penalty2 => {
                let a_sqrt = 1e-5f64.sqrt();
                let mut f = (x[0] - 0.2).powi(2);
                for i in 1..n {
                    let y = ((i + 1) as f64 / 10.0).exp() + (i as f64 / 10.0).exp();
                    let r = a_sqrt * ((x[i] / 10.0).exp() + (x[i - 1] / 10.0).exp() - y);
                    f += r * r;
                }
                for &xi in &x[1..] {
                    let r = a_sqrt * ((xi / 10.0).exp() - (-0.1f64).exp());
                    f += r * r;
                }
                let s: f64 = (0..n).map(|j| (n - j) as f64 * x[j] * x[j]).sum();
                f + (s - 1.0) * (s - 1.0)
            }
            Self::Nondquar => {
                let mut f = (x[0] - x[1]).powi(2) + (x[n - 2] + x[n - 1]).powi(2);
                for i in 0..n - 2 {
                    f += (x[i] + x[i + 1] + x[n - 1]).powi(4);
                }
                f
            }
            Self::Rosenbr => (0..n / 2)
                .map(|i| {
                    let a = x[2 * i];
                    let b = x[2 * i + 1];
                    100.0 * (b - a * a).powi(2) + (1.0 - a).powi(2)
                })
                .sum(),
            Self::Sinquad => {
                let mut f = (x[0] - 1.0).powi(4) + (x[n - 1] * x[n - 1] - x[0] * x[0]).powi(2);
                for i in 1..n - 1 {
                    f += ((x[i] - x[n - 1]).sin() - x[0] * x[0] + x[i] * x[i]).powi(2);
                }
                f
            }
            Self::Tridia => {
                let mut f = (x[0] - 1.0).powi(2);
                for i in 1..n {
                    f += (i + 1) as f64 * (2.0 * x[i] - x[i - 1]).powi(2);
                }
                f
            }
            Self::Woods => (0..n / 4)
                .map(|j| {
                    let (a, b, c, d) = (x[4 * j], x[4 * j + 1], x[4 * j + 2], x[4 * j + 3]);
                    100.0 * (b - a * a).powi(2)
                        + (1.0 - a).powi(2)
                        + 90.0 * (d - c * c).powi(2)
                        + (1.0 - c).powi(2)
                        + 10.0 * (b + d - 2.0).powi(2)
                        + 0.1 * (b - d).powi(2)
                })
                .sum(),
        }
    }

    pub fn standard_start(&self, n: usize) -> Vec<f64> {
        match self {
            Self::Arglina | Self::Arwhead | Self::Tridia => vec![1.0; n],
            Self::Broydn3d => vec![-1.0; n],
            Self::Dqrtic | Self::Engval1 => vec![2.0; n],
            Self::Freuroth => {
                let mut x = vec![0.0; n];
                x[0] = 0.5;
                x[1] = -2.0;
                x
            }
            Self::Penalty2 => vec![0.5; n],
            Self::Nondquar => (0..n)
                .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 })
                .collect(),
            Self::Rosenbr => (0..n)
                .map(|i| if i % 2 == 0 { -1.2 } else { 1.0 })
                .collect(),
            Self::Sinquad => vec![0.1; n],
            Self::Woods => (0..n)
                .map(|i| if i % 2 == 0 { -3.0 } else { -1.0 })
                .collect(),
        }
    }
}
