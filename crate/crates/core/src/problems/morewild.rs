//! The 22 nonlinear least-squares residual functions behind the 53-problem
//! benchmark set, with their standard starting points and the published
//! `(function, n, m, start-scale)` configurations.

/// Residual-based test function family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MwFunction {
    LinearFull,
    LinearRank1,
    LinearRank1Zero,
    Rosenbrock,
    Helical,
    PowellSingular,
    FreudensteinRoth,
    Bard,
    Kowalik,
    Meyer,
    Watson,
    Box3d,
    JennrichSampson,
    BrownDennis,
    Chebyquad,
    BrownAlmostLinear,
    Osborne1,
    Osborne2,
    Bdqrtic,
    Cube,
    Mancino,
    Heart8,
}

const BARD_Y: [f64; 15] = [
    0.14, 0.18, 0.22, 0.25, 0.29, 0.32, 0.35, 0.39, 0.37, 0.58, 0.73, 0.96, 1.34, 2.10, 4.39,
];

const KOWALIK_Y: [f64; 11] = [
    0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
];
const KOWALIK_U: [f64; 11] = [
    4.0, 2.0, 1.0, 0.5, 0.25, 0.167, 0.125, 0.1, 0.0833, 0.0714, 0.0625,
];

const MEYER_Y: [f64; 16] = [
    34780.0, 28610.0, 23650.0, 19630.0, 16370.0, 13720.0, 11540.0, 9744.0, 8261.0, 7030.0, 6005.0,
    5147.0, 4427.0, 3820.0, 3307.0, 2872.0,
];

const OSBORNE1_Y: [f64; 33] = [
    0.844, 0.908, 0.932, 0.936, 0.925, 0.908, 0.881, 0.850, 0.818, 0.784, 0.751, 0.718, 0.685,
    0.658, 0.628, 0.603, 0.580, 0.558, 0.538, 0.522, 0.506, 0.490, 0.478, 0.467, 0.457, 0.448,
    0.438, 0.431, 0.424, 0.420, 0.414, 0.411, 0.406,
];

const OSBORNE2_Y: [f64; 65] = [
    1.366, 1.191, 1.112, 1.013, 0.991, 0.885, 0.831, 0.847, 0.786, 0.725, 0.746, 0.679, 0.608,
    0.655, 0.616, 0.606, 0.602, 0.626, 0.651, 0.724, 0.649, 0.649, 0.694, 0.644, 0.624, 0.661,
    0.612, 0.558, 0.533, 0.495, 0.500, 0.423, 0.395, 0.375, 0.372, 0.391, 0.396, 0.405, 0.428,
    0.429, 0.523, 0.562, 0.607, 0.653, 0.672, 0.708, 0.633, 0.668, 0.645, 0.632, 0.591, 0.559,
    0.597, 0.625, 0.739, 0.710, 0.729, 0.720, 0.636, 0.581, 0.428, 0.292, 0.162, 0.098, 0.054,
];

impl MwFunction {
    pub fn name(&self) -> &'static str {
        match self {
            Self::LinearFull => "linear_full",
            Self::LinearRank1 => "linear_rank1",
            Self::LinearRank1Zero => "linear_rank1z",
            Self::Rosenbrock => "rosenbrock",
            Self::Helical => "helical",
            Self::PowellSingular => "powell_singular",
            Self::FreudensteinRoth => "freudenstein_roth",
            Self::Bard => "bard",
            Self::Kowalik => "kowalik",
            Self::Meyer => "meyer",
            Self::Watson => "watson",
            Self::Box3d => "box3d",
            Self::JennrichSampson => "jennrich_sampson",
            Self::BrownDennis => "brown_dennis",
            Self::Chebyquad => "chebyquad",
            Self::BrownAlmostLinear => "brown_almost_linear",
            Self::Osborne1 => "osborne1",
            Self::Osborne2 => "osborne2",
            Self::Bdqrtic => "bdqrtic",
            Self::Cube => "cube",
            Self::Mancino => "mancino",
            Self::Heart8 => "heart8",
        }
    }

    /// Fills `out` (length m) with the residual vector at `x` (length n).
    pub fn residuals(&self, x: &[f64], out: &mut [f64]) {
        let n = x.len();
        let m = out.len();
        match self {
            Self::LinearFull => {
                let s: f64 = x.iter().sum();
                let t = 2.0 * s / m as f64 + 1.0;
                for (i, r) in out.iter_mut().enumerate() {
                    *r = if i < n { x[i] - t } else { -t };
                }
            }
            Self::LinearRank1 => {
                let s: f64 = x.iter().enumerate().map(|(j, v)| (j + 1) as f64 * v).sum();
                for (i, r) in out.iter_mut().enumerate() {
                    *r = (i + 1) as f64 * s - 1.0;
                }
            }
            Self::LinearRank1Zero => {
                let s: f64 = x[1..n - 1]
                    .iter()
                    .enumerate()
                    .map(|(j, v)| (j + 2) as f64 * v)
                    .sum();
                for (i, r) in out.iter_mut().enumerate().take(m - 1) {
                    *r = i as f64 * s - 1.0;
                }
                out[m - 1] = -1.0;
            }
            Self::Rosenbrock => {
                out[0] = 10.0 * (x[1] - x[0] * x[0]);
                out[1] = 1.0 - x[0];
            }
            Self::Helical => {
                let theta = if x[0] > 0.0 {
                    (x[1] / x[0]).atan() / std::f64::consts::TAU
                } else if x[0] < 0.0 {
                    (x[1] / x[0]).atan() / std::f64::consts::TAU + 0.5
                } else if x[1] >= 0.0 {
                    0.25
                } else {
                    -0.25
                };
                out[0] = 10.0 * (x[2] - 10.0 * theta);
                out[1] = 10.0 * ((x[0] * x[0] + x[1] * x[1]).sqrt() - 1.0);
                out[2] = x[2];
            }
            Self::PowellSingular => {
                out[0] = x[0] + 10.0 * x[1];
                out[1] = 5.0f64.sqrt() * (x[2] - x[3]);
                out[2] = (x[1] - 2.0 * x[2]).powi(2);
                out[3] = 10.0f64.sqrt() * (x[0] - x[3]).powi(2);
            }
            Self::FreudensteinRoth => {
                out[0] = -13.0 + x[0] + ((5.0 - x[1]) * x[1] - 2.0) * x[1];
                out[1] = -29.0 + x[0] + ((1.0 + x[1]) * x[1] - 14.0) * x[1];
            }
            Self::Bard => {
                for (i, r) in out.iter_mut().enumerate() {
                    let u = (i + 1) as f64;
                    let v = 16.0 - u;
                    let w = u.min(v);
                    *r = BARD_Y[i] - (x[0] + u / (v * x[1] + w * x[2]));
                }
            }
            Self::Kowalik => {
                for (i, r) in out.iter_mut().enumerate() {
                    let u = KOWALIK_U[i];
                    *r = KOWALIK_Y[i] - x[0] * (u * u + u * x[1]) / (u * u + u * x[2] + x[3]);
                }
            }
            Self::Meyer => {
                for (i, r) in out.iter_mut().enumerate() {
                    let t = 45.0 + 5.0 * (i + 1) as f64;
                    *r = x[0] * (x[1] / (t + x[2])).exp() - MEYER_Y[i];
                }
            }
            Self::Watson => {
                for (i, r) in out.iter_mut().enumerate().take(29) {
                    let t = (i + 1) as f64 / 29.0;
                    let mut s1 = 0.0;
                    let mut tp = 1.0; // t^(j-1)
                    for (j, &xj) in x.iter().enumerate().skip(1) {
                        s1 += j as f64 * xj * tp;
                        tp *= t;
                    }
                    let mut s2 = 0.0;
                    let mut tp = 1.0; // t^j
                    for &xj in x.iter() {
                        s2 += xj * tp;
                        tp *= t;
                    }
                    *r = s1 - s2 * s2 - 1.0;
                }
                out[29] = x[0];
                out[30] = x[1] - x[0] * x[0] - 1.0;
            }
            Self::Box3d => {
                for (i, r) in out.iter_mut().enumerate() {
                    let t = 0.1 * (i + 1) as f64;
                    *r = (-t * x[0]).exp()
                        - (-t * x[1]).exp()
                        - x[2] * ((-t).exp() - (-10.0 * t).exp());
                }
            }
            Self::JennrichSampson => {
                for (i, r) in out.iter_mut().enumerate() {
                    let t = (i + 1) as f64;
                    *r = 2.0 + 2.0 * t - ((t * x[0]).exp() + (t * x[1]).exp());
                }
            }
            Self::BrownDennis => {
                for (i, r) in out.iter_mut().enumerate() {
                    let t = (i + 1) as f64 / 5.0;
                    *r = (x[0] + t * x[1] - t.exp()).powi(2)
                        + (x[2] + x[3] * t.sin() - t.cos()).powi(2);
                }
            }
            Self::Chebyquad => {
                out.fill(0.0);
                for &xj in x.iter() {
                    let mut t1 = 1.0;
                    let mut t2 = 2.0 * xj - 1.0;
                    let t = 2.0 * t2;
                    for r in out.iter_mut() {
                        *r += t2;
                        let th = t * t2 - t1;
                        t1 = t2;
                        t2 = th;
                    }
                }
                for (i, r) in out.iter_mut().enumerate() {
                    *r /= n as f64;
                    if (i + 1) % 2 == 0 {
                        *r += 1.0 / (((i + 1) * (i + 1)) as f64 - 1.0);
                    }
                }
            }
            Self::BrownAlmostLinear => {
                let s: f64 = x.iter().sum::<f64>() - (n + 1) as f64;
                for (i, r) in out.iter_mut().enumerate().take(n - 1) {
                    *r = x[i] + s;
                }
                out[n - 1] = x.iter().product::<f64>() - 1.0;
            }
            Self::Osborne1 => {
                for (i, r) in out.iter_mut().enumerate() {
                    let t = 10.0 * i as f64;
                    *r = OSBORNE1_Y[i]
                        - (x[0] + x[1] * (-t * x[3]).exp() + x[2] * (-t * x[4]).exp());
                }
            }
            Self::Osborne2 => {
                for (i, r) in out.iter_mut().enumerate() {
                    let t = i as f64 / 10.0;
                    *r = OSBORNE2_Y[i]
                        - (x[0] * (-t * x[4]).exp()
                            + x[1] * (-(t - x[8]).powi(2) * x[5]).exp()
                            + x[2] * (-(t - x[9]).powi(2) * x[6]).exp()
                            + x[3] * (-(t - x[10]).powi(2) * x[7]).exp());
                }
            }
            Self::Bdqrtic => {
                for i in 0..n - 4 {
                    out[i] = -4.0 * x[i] + 3.0;
                    out[n - 4 + i] = x[i] * x[i]
                        + 2.0 * x[i + 1] * x[i + 1]
                        + 3.0 * x[i + 2] * x[i + 2]
                        + 4.0 * x[i + 3] * x[i + 3]
                        + 5.0 * x[n - 1] * x[n - 1];
                }
            }
            Self::Cube => {
                out[0] = x[0] - 1.0;
                for i in 1..n {
                    out[i] = 10.0 * (x[i] - x[i - 1].powi(3));
                }
            }
            Self::Mancino => {
                for (i, r) in out.iter_mut().enumerate() {
                    let mut s = 0.0;
                    for j in 0..n {
                        let v = (x[i] * x[i] + (i + 1) as f64 / (j + 1) as f64).sqrt();
                        let lv = v.ln();
                        s += v * (lv.sin().powi(5) + lv.cos().powi(5));
                    }
                    *r = 1400.0 * x[i] + ((i + 1) as f64 - 50.0).powi(3) + s;
                }
            }
            Self::Heart8 => {
                let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
                let (t, u, v, w) = (x[4], x[5], x[6], x[7]);
                out[0] = a + b + 0.69;
                out[1] = c + d + 0.044;
                out[2] = t * a + u * b - v * c - w * d + 1.57;
                out[3] = v * a + w * b + t * c + u * d + 1.31;
                out[4] = a * (t * t - v * v) - 2.0 * c * t * v + b * (u * u - w * w)
                    - 2.0 * d * u * w
                    + 2.65;
                out[5] =
                    c * (t * t - v * v) + 2.0 * a * t * v + d * (u * u - w * w) + 2.0 * b * u * w
                        - 2.0;
                out[6] = a * t * (t * t - 3.0 * v * v)
                    + c * v * (v * v - 3.0 * t * t)
                    + b * u * (u * u - 3.0 * w * w)
                    + d * w * (w * w - 3.0 * u * u)
                    + 12.6;
                out[7] = c * t * (t * t - 3.0 * v * v) - a * v * (v * v - 3.0 * t * t)
                    + d * u * (u * u - 3.0 * w * w)
                    - b * w * (w * w - 3.0 * u * u)
                    - 9.48;
            }
        }
    }

    /// Standard starting point for dimension `n`.
    pub fn standard_start(&self, n: usize) -> Vec<f64> {
        match self {
            Self::LinearFull | Self::LinearRank1 | Self::LinearRank1Zero | Self::Bdqrtic => {
                vec![1.0; n]
            }
            Self::Rosenbrock => vec![-1.2, 1.0],
            Self::Helical => vec![-1.0, 0.0, 0.0],
            Self::PowellSingular => vec![3.0, -1.0, 0.0, 1.0],
            Self::FreudensteinRoth => vec![0.5, -2.0],
            Self::Bard => vec![1.0; 3],
            Self::Kowalik => vec![0.25, 0.39, 0.415, 0.39],
            Self::Meyer => vec![0.02, 4000.0, 250.0],
            Self::Watson | Self::BrownAlmostLinear | Self::Cube => vec![0.5; n],
            Self::Box3d => vec![0.0, 10.0, 20.0],
            Self::JennrichSampson => vec![0.3, 0.4],
            Self::BrownDennis => vec![25.0, 5.0, -5.0, -1.0],
            Self::Chebyquad => (1..=n).map(|j| j as f64 / (n + 1) as f64).collect(),
            Self::Osborne1 => vec![0.5, 1.5, -1.0, 0.01, 0.02],
            Self::Osborne2 => vec![1.3, 0.65, 0.65, 0.7, 0.6, 3.0, 5.0, 7.0, 2.0, 4.5, 5.5],
            Self::Mancino => (0..n)
                .map(|i| {
                    let mut s = 0.0;
                    for j in 0..n {
                        let v = ((i + 1) as f64 / (j + 1) as f64).sqrt();
                        let lv = v.ln();
                        s += v * (lv.sin().powi(5) + lv.cos().powi(5));
                    }
                    -8.710996e-4 * (((i + 1) as f64 - 50.0).powi(3) + s)
                })
                .collect(),
            Self::Heart8 => vec![-0.3, -0.39, 0.3, -0.344, -1.2, 2.69, 1.59, -1.5],
        }
    }
}

/// The 53 benchmark configurations: (function, n, m, tenfold start).
///
/// Dimension histogram over n = 2..=12 is [5, 6, 5, 4, 4, 5, 6, 5, 4, 4, 5].
pub const BENCHMARK_SET: [(MwFunction, usize, usize, bool); 53] = [
    (MwFunction::LinearFull, 9, 45, false),
    (MwFunction::LinearFull, 9, 45, true),
    (MwFunction::LinearRank1, 7, 35, false),
    (MwFunction::LinearRank1, 7, 35, true),
    (MwFunction::LinearRank1Zero, 7, 35, false),
    (MwFunction::LinearRank1Zero, 7, 35, true),
    (MwFunction::Rosenbrock, 2, 2, false),
    (MwFunction::Rosenbrock, 2, 2, true),
    (MwFunction::Helical, 3, 3, false),
    (MwFunction::Helical, 3, 3, true),
    (MwFunction::PowellSingular, 4, 4, false),
    (MwFunction::PowellSingular, 4, 4, true),
    (MwFunction::FreudensteinRoth, 2, 2, false),
    (MwFunction::FreudensteinRoth, 2, 2, true),
    (MwFunction::Bard, 3, 15, false),
    (MwFunction::Bard, 3, 15, true),
    (MwFunction::Kowalik, 4, 11, false),
    (MwFunction::Meyer, 3, 16, false),
    (MwFunction::Watson, 6, 31, false),
    (MwFunction::Watson, 6, 31, true),
    (MwFunction::Watson, 9, 31, false),
    (MwFunction::Watson, 9, 31, true),
    (MwFunction::Watson, 12, 31, false),
    (MwFunction::Watson, 12, 31, true),
    (MwFunction::Box3d, 3, 10, false),
    (MwFunction::JennrichSampson, 2, 10, false),
    (MwFunction::BrownDennis, 4, 20, false),
    (MwFunction::BrownDennis, 4, 20, true),
    (MwFunction::Chebyquad, 6, 6, false),
    (MwFunction::Chebyquad, 7, 7, false),
    (MwFunction::Chebyquad, 8, 8, false),
    (MwFunction::Chebyquad, 9, 9, false),
    (MwFunction::Chebyquad, 10, 10, false),
    (MwFunction::Chebyquad, 11, 11, false),
    (MwFunction::BrownAlmostLinear, 10, 10, false),
    (MwFunction::Osborne1, 5, 33, false),
    (MwFunction::Osborne2, 11, 65, false),
    (MwFunction::Osborne2, 11, 65, true),
    (MwFunction::Bdqrtic, 8, 8, false),
    (MwFunction::Bdqrtic, 10, 12, false),
    (MwFunction::Bdqrtic, 11, 14, false),
    (MwFunction::Bdqrtic, 12, 16, false),
    (MwFunction::Cube, 5, 5, false),
    (MwFunction::Cube, 6, 6, false),
    (MwFunction::Cube, 8, 8, false),
    (MwFunction::Mancino, 5, 5, false),
    (MwFunction::Mancino, 5, 5, true),
    (MwFunction::Mancino, 8, 8, false),
    (MwFunction::Mancino, 10, 10, false),
    (MwFunction::Mancino, 12, 12, false),
    (MwFunction::Mancino, 12, 12, true),
    (MwFunction::Heart8, 8, 8, false),
    (MwFunction::Heart8, 8, 8, true),
];
