//! Timelike directrix reconstruction from prescribed curvature and torsion.
//!
//! The frame obeys
//!
//! ```text
//! k' = T,  T' = k₁N,  N' = k₁T + k₂B,  B' = −k₂N
//! ```
//!
//! with `⟨T,T⟩ = −1`, `⟨N,N⟩ = ⟨B,B⟩ = 1` and all cross terms zero.
//! Neither an initial frame nor an interval is implied by the equations;
//! the defaults here are `T = e₁, N = e₂, B = e₃` at the origin over
//! `s ∈ [0, 1]` with step `1e-3`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lorentz::{coord_det, LVec3};
use crate::ode::Rk4;
use crate::spline::NaturalSpline;

pub const DEFAULT_STEP: f64 = 1e-3;
pub const DEFAULT_S_RANGE: (f64, f64) = (0.0, 1.0);
/// Largest frame defect tolerated during integration.
pub const DEFAULT_FRAME_TOL: f64 = 1e-6;
/// Tolerance on the seed frame's Gram conditions.
pub const SEED_TOL: f64 = 1e-12;
/// Below this |k₂| the curvature/torsion ratio is treated as undefined.
pub const TORSION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrenetError {
    #[error("seed frame is not a right-handed Lorentz-orthonormal frame (defect {defect:e})")]
    NonOrthonormalSeed { defect: f64 },
    #[error("curvature k1 = {k1} is not positive at s = {s}")]
    NonPositiveCurvature { s: f64, k1: f64 },
    #[error("curvature function is not finite at s = {s}")]
    NonFiniteCurvature { s: f64 },
    #[error("frame defect {defect:e} exceeds tolerance at s = {s}; reduce the step")]
    StepTooLarge { s: f64, defect: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("torsion |k2| = {k2:e} vanishes at s = {s}")]
    TorsionVanishes { s: f64, k2: f64 },
}

/// A scalar function of arc length, used for curvature, torsion and the
/// prescribed surface invariants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CurvatureFn {
    Constant(f64),
    /// Coefficients in ascending powers of `s`.
    Polynomial(Vec<f64>),
    /// `offset + amplitude·sin(frequency·s + phase)`.
    Sinusoid {
        amplitude: f64,
        frequency: f64,
        phase: f64,
        offset: f64,
    },
    Samples(NaturalSpline),
}

impl From<f64> for CurvatureFn {
    fn from(c: f64) -> Self {
        CurvatureFn::Constant(c)
    }
}

impl CurvatureFn {
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            CurvatureFn::Constant(c) => *c,
            CurvatureFn::Polynomial(coef) => coef.iter().rev().fold(0.0, |acc, &c| acc * s + c),
            CurvatureFn::Sinusoid {
                amplitude,
                frequency,
                phase,
                offset,
            } => offset + amplitude * (frequency * s + phase).sin(),
            CurvatureFn::Samples(sp) => sp.eval(s),
        }
    }

    pub fn derivative(&self, s: f64) -> f64 {
        match self {
            CurvatureFn::Constant(_) => 0.0,
            CurvatureFn::Polynomial(coef) => coef
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (p, &c)| acc * s + p as f64 * c),
            CurvatureFn::Sinusoid {
                amplitude,
                frequency,
                phase,
                ..
            } => amplitude * frequency * (frequency * s + phase).cos(),
            CurvatureFn::Samples(sp) => sp.derivative(s),
        }
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self {
            CurvatureFn::Constant(c) => Some(*c),
            CurvatureFn::Polynomial(coef) if coef.iter().skip(1).all(|&c| c == 0.0) => {
                Some(coef.first().copied().unwrap_or(0.0))
            }
            _ => None,
        }
    }
}

/// A Frenet frame `(T, N, B)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub t: LVec3,
    pub n: LVec3,
    pub b: LVec3,
}

impl Frame {
    pub const STANDARD: Frame = Frame {
        t: LVec3::E1,
        n: LVec3::E2,
        b: LVec3::E3,
    };

    /// Largest deviation of the six Gram conditions from their targets.
    pub fn defect(&self) -> f64 {
        let Frame { t, n, b } = *self;
        [
            (t.inner(t) + 1.0).abs(),
            (n.inner(n) - 1.0).abs(),
            (b.inner(b) - 1.0).abs(),
            t.inner(n).abs(),
            t.inner(b).abs(),
            n.inner(b).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Lorentz Gram–Schmidt in the order T, N, B.
    pub fn reorthonormalized(&self) -> Frame {
        let t = self.t / self.t.norm();
        let n = self.n + self.n.inner(t) * t;
        let n = n / n.norm();
        let b = self.b + self.b.inner(t) * t - self.b.inner(n) * n;
        let b = b / b.norm();
        Frame { t, n, b }
    }
}

/// Initial position and frame of the directrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrenetSeed {
    pub position: LVec3,
    pub frame: Frame,
}

impl Default for FrenetSeed {
    fn default() -> Self {
        FrenetSeed {
            position: LVec3::ZERO,
            frame: Frame::STANDARD,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrenetOptions {
    pub frame_tol: f64,
    /// Project the frame back onto the orthonormal set after every step.
    pub reorthonormalize: bool,
}

impl Default for FrenetOptions {
    fn default() -> Self {
        FrenetOptions {
            frame_tol: DEFAULT_FRAME_TOL,
            reorthonormalize: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrenetSample {
    pub position: LVec3,
    pub frame: Frame,
    pub k1: f64,
    pub k2: f64,
}

/// Uniform arc-length grid `s_i = s0 + i·step`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub s0: f64,
    pub step: f64,
    pub len: usize,
}

impl Grid {
    /// Grid covering `[s0, s1]` with the given step, which must divide the
    /// interval (to 1e-9 relative).
    pub fn over(s_range: (f64, f64), step: f64) -> Result<Grid, String> {
        let (s0, s1) = s_range;
        if !(step > 0.0 && step.is_finite()) {
            return Err(format!("step must be positive, got {step}"));
        }
        if !(s0.is_finite() && s1.is_finite() && s1 > s0) {
            return Err(format!("empty or invalid interval [{s0}, {s1}]"));
        }
        let intervals = ((s1 - s0) / step).round();
        if intervals < 2.0 {
            return Err("grid needs at least 3 samples".into());
        }
        if ((intervals * step) - (s1 - s0)).abs() > 1e-9 * (s1 - s0) {
            return Err(format!("step {step} does not divide [{s0}, {s1}]"));
        }
        Ok(Grid {
            s0,
            step,
            len: intervals as usize + 1,
        })
    }

    #[inline]
    pub fn s(&self, i: usize) -> f64 {
        self.s0 + i as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.s(i)).collect()
    }

    pub fn end(&self) -> f64 {
        self.s(self.len - 1)
    }

    pub fn matches(&self, other: &Grid) -> bool {
        self.len == other.len
            && (self.s0 - other.s0).abs() <= 1e-12 * (1.0 + self.s0.abs())
            && (self.step - other.step).abs() <= 1e-12 * self.step
    }
}

/// A sampled timelike directrix with its Frenet frame.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrenetCurve {
    pub grid: Grid,
    pub samples: Vec<FrenetSample>,
    pub k1_fn: CurvatureFn,
    pub k2_fn: CurvatureFn,
}

impl FrenetCurve {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn s(&self, i: usize) -> f64 {
        self.grid.s(i)
    }

    pub fn positions(&self) -> Vec<LVec3> {
        self.samples.iter().map(|p| p.position).collect()
    }
}

fn pack(p: LVec3, f: &Frame) -> [f64; 12] {
    [
        p.x1, p.x2, p.x3, f.t.x1, f.t.x2, f.t.x3, f.n.x1, f.n.x2, f.n.x3, f.b.x1, f.b.x2, f.b.x3,
    ]
}

fn unpack(y: &[f64; 12]) -> (LVec3, Frame) {
    (
        LVec3::new(y[0], y[1], y[2]),
        Frame {
            t: LVec3::new(y[3], y[4], y[5]),
            n: LVec3::new(y[6], y[7], y[8]),
            b: LVec3::new(y[9], y[10], y[11]),
        },
    )
}

fn checked_curvature(f: &CurvatureFn, s: f64) -> Result<f64, FrenetError> {
    let v = f.eval(s);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(FrenetError::NonFiniteCurvature { s })
    }
}

/// Integrates the Frenet equations over `s_range` with a fixed RK4 step.
pub fn integrate_frenet(
    k1: &CurvatureFn,
    k2: &CurvatureFn,
    seed: &FrenetSeed,
    s_range: (f64, f64),
    step: f64,
    options: &FrenetOptions,
) -> Result<FrenetCurve, FrenetError> {
    let grid = Grid::over(s_range, step).map_err(FrenetError::InvalidGrid)?;
    let seed_defect = seed.frame.defect();
    let handed = coord_det(seed.frame.t, seed.frame.n, seed.frame.b);
    if seed_defect > SEED_TOL || handed <= 0.0 || !seed.position.is_finite() {
        return Err(FrenetError::NonOrthonormalSeed {
            defect: seed_defect,
        });
    }

    // RK4 samples the coefficients at grid points and midpoints.
    for j in 0..(2 * grid.len - 1) {
        let s = grid.s0 + 0.5 * j as f64 * step;
        let c = checked_curvature(k1, s)?;
        checked_curvature(k2, s)?;
        if c <= 0.0 {
            return Err(FrenetError::NonPositiveCurvature { s, k1: c });
        }
    }

    let mut samples = Vec::with_capacity(grid.len);
    samples.push(FrenetSample {
        position: seed.position,
        frame: seed.frame,
        k1: k1.eval(grid.s0),
        k2: k2.eval(grid.s0),
    });
    let mut rk = Rk4::new(grid.s0, pack(seed.position, &seed.frame));
    for i in 1..grid.len {
        rk.step(step, grid.s(i), |s, y| {
            let a = k1.eval(s);
            let b = k2.eval(s);
            let mut d = [0.0; 12];
            for c in 0..3 {
                let t = y[3 + c];
                let n = y[6 + c];
                let bb = y[9 + c];
                d[c] = t;
                d[3 + c] = a * n;
                d[6 + c] = a * t + b * bb;
                d[9 + c] = -b * n;
            }
            d
        });
        let (mut position, mut frame) = unpack(&rk.y);
        if options.reorthonormalize {
            frame = frame.reorthonormalized();
            rk.reset_state(pack(position, &frame));
            position = LVec3::new(rk.y[0], rk.y[1], rk.y[2]);
        }
        let s = grid.s(i);
        let defect = frame.defect();
        if !(defect <= options.frame_tol) {
            return Err(FrenetError::StepTooLarge { s, defect });
        }
        samples.push(FrenetSample {
            position,
            frame,
            k1: k1.eval(s),
            k2: k2.eval(s),
        });
    }
    Ok(FrenetCurve {
        grid,
        samples,
        k1_fn: k1.clone(),
        k2_fn: k2.clone(),
    })
}

/// Maximum Gram-condition defect over all samples.
pub fn frame_defect(curve: &FrenetCurve) -> f64 {
    curve
        .samples
        .iter()
        .map(|p| p.frame.defect())
        .fold(0.0, f64::max)
}

/// Mean of `k₁/k₂` over the grid and the largest deviation from it. A
/// general helix has zero deviation.
pub fn helix_ratio(curve: &FrenetCurve) -> Result<(f64, f64), FrenetError> {
    let mut ratios = Vec::with_capacity(curve.len());
    for (i, p) in curve.samples.iter().enumerate() {
        if p.k2.abs() < TORSION_TOL {
            return Err(FrenetError::TorsionVanishes {
                s: curve.s(i),
                k2: p.k2,
            });
        }
        ratios.push(p.k1 / p.k2);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let dev = ratios.iter().map(|r| (r - mean).abs()).fold(0.0, f64::max);
    Ok((mean, dev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_curve(step: f64) -> FrenetCurve {
        integrate_frenet(
            &1.0.into(),
            &0.0.into(),
            &FrenetSeed::default(),
            (0.0, 1.0),
            step,
            &FrenetOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn seed_is_first_sample() {
        let c = unit_curve(1e-3);
        assert_eq!(c.samples[0].frame, Frame::STANDARD);
        assert_eq!(c.samples[0].position, LVec3::ZERO);
        assert_eq!(c.len(), 1001);
    }

    #[test]
    fn matches_hyperbolic_closed_form() {
        let c = unit_curve(1e-3);
        let last = c.samples.last().unwrap();
        let e = LVec3::new(1f64.sinh(), 1f64.cosh() - 1.0, 0.0);
        assert!((last.position - e).max_abs() < 1e-12);
        let t = LVec3::new(1f64.cosh(), 1f64.sinh(), 0.0);
        assert!((last.frame.t - t).max_abs() < 1e-12);
        assert!(frame_defect(&c) < 1e-8);
    }

    #[test]
    fn frame_defect_of_scaled_normal() {
        let mut c = unit_curve(0.1);
        c.samples.truncate(1);
        assert_eq!(frame_defect(&c), 0.0);
        c.samples[0].frame.n = c.samples[0].frame.n * 1.01;
        assert_relative_eq!(frame_defect(&c), 0.0201, epsilon = 1e-12);
    }

    #[test]
    fn helix_ratios() {
        let run = |k1: CurvatureFn, k2: f64| {
            let c = integrate_frenet(
                &k1,
                &k2.into(),
                &FrenetSeed::default(),
                (0.0, 1.0),
                1e-2,
                &FrenetOptions::default(),
            )
            .unwrap();
            helix_ratio(&c).unwrap()
        };
        assert_eq!(run(2.0.into(), 1.0), (2.0, 0.0));
        assert_eq!(run(1.0.into(), 1.0), (1.0, 0.0));
        let (mean, dev) = run(CurvatureFn::Polynomial(vec![1.0, 1.0]), 1.0);
        assert_relative_eq!(mean, 1.5, epsilon = 1e-12);
        assert_relative_eq!(dev, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn helix_ratio_rejects_zero_torsion() {
        let c = unit_curve(1e-2);
        assert!(matches!(helix_ratio(&c), Err(FrenetError::TorsionVanishes { .. })));
    }

    #[test]
    fn rejects_bad_seed_and_curvature() {
        let mut seed = FrenetSeed::default();
        seed.frame.n = seed.frame.n * 1.1;
        let r = integrate_frenet(&1.0.into(), &0.0.into(), &seed, (0.0, 1.0), 1e-2, &Default::default());
        assert!(matches!(r, Err(FrenetError::NonOrthonormalSeed { .. })));

        let mut left = FrenetSeed::default();
        left.frame.b = -left.frame.b;
        let r = integrate_frenet(&1.0.into(), &0.0.into(), &left, (0.0, 1.0), 1e-2, &Default::default());
        assert!(matches!(r, Err(FrenetError::NonOrthonormalSeed { .. })));

        let k1 = CurvatureFn::Polynomial(vec![0.5, -1.0]);
        let r = integrate_frenet(&k1, &0.0.into(), &FrenetSeed::default(), (0.0, 1.0), 1e-2, &Default::default());
        match r {
            Err(FrenetError::NonPositiveCurvature { s, .. }) => assert!((s - 0.5).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn step_too_large_is_reported() {
        let opts = FrenetOptions {
            frame_tol: 1e-6,
            reorthonormalize: false,
        };
        let r = integrate_frenet(&3.0.into(), &2.0.into(), &FrenetSeed::default(), (0.0, 2.0), 0.25, &opts);
        assert!(matches!(r, Err(FrenetError::StepTooLarge { .. })), "{r:?}");

        let opts = FrenetOptions {
            frame_tol: 1e-6,
            reorthonormalize: true,
        };
        let c = integrate_frenet(&3.0.into(), &2.0.into(), &FrenetSeed::default(), (0.0, 2.0), 0.25, &opts)
            .unwrap();
        assert!(frame_defect(&c) < 1e-10);
    }

    #[test]
    fn grid_must_divide_interval() {
        assert!(Grid::over((0.0, 1.0), 0.3).is_err());
        assert!(Grid::over((0.0, 1.0), -0.1).is_err());
        assert_eq!(Grid::over((0.0, 1.0), 0.25).unwrap().len, 5);
    }

    #[test]
    fn curvature_fn_evaluation() {
        let p = CurvatureFn::Polynomial(vec![1.0, -2.0, 3.0]);
        assert_eq!(p.eval(2.0), 1.0 - 4.0 + 12.0);
        assert_eq!(p.derivative(2.0), -2.0 + 12.0);
        let s = CurvatureFn::Sinusoid {
            amplitude: 0.5,
            frequency: 2.0,
            phase: 0.1,
            offset: 1.0,
        };
        assert_relative_eq!(s.eval(0.3), 1.0 + 0.5 * 0.7f64.sin());
        assert_relative_eq!(s.derivative(0.3), 1.0 * 0.7f64.cos());
        let json = r#"{"samples": {"s": [0, 0.5, 1], "values": [1, 1.5, 2]}}"#;
        let f: CurvatureFn = serde_json::from_str(json).unwrap();
        assert_relative_eq!(f.eval(0.25), 1.25, epsilon = 1e-14);
        let bad = r#"{"samples": {"s": [0, 0], "values": [1, 2]}}"#;
        assert!(serde_json::from_str::<CurvatureFn>(bad).is_err());
    }
}
