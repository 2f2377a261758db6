//! Determining systems for `(θ, φ)` and surface synthesis.
//!
//! Each [`SystemKind`] fixes which surface invariants are prescribed. Given a
//! directrix and an admissible seed `(θ₀, φ₀)`, integrating the system yields
//! an [`AngleTrack`] whose ruling field realizes the prescription. The seed is
//! free, so every kind (except the closed-form line-of-curvature mode) spans a
//! two-parameter family of surfaces.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frenet::{CurvatureFn, FrenetCurve};
use crate::ode::Rk4;
use crate::ruled::{ruling_from_angles, AngleSample, AngleTrack, RuledError, RuledSurfaceGrid, THETA_MIN};

/// Integration aborts once `|θ|` exceeds this; `cosh θ` is then ~2.4e8 and
/// the systems have usually entered a finite-s blow-up.
pub const THETA_MAX: f64 = 20.0;
const DOMAIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthesisError {
    #[error("|theta| = {theta:e} fell below the minimum {THETA_MIN:e} at s = {s}")]
    ThetaSingularity { s: f64, theta: f64 },
    #[error("theta left the representable range (|theta| > {THETA_MAX}) at s = {s}; the solution blows up")]
    Blowup { s: f64 },
    #[error("parameter domain violated at s = {s}: {reason}")]
    ParamDomain { s: f64, reason: String },
    #[error("missing parameter `{0}`")]
    MissingParam(&'static str),
    #[error("no real solution: |{what}| = {value} >= 1")]
    NoSolution { what: &'static str, value: f64 },
    #[error("denominator n*k2 + 1 vanishes")]
    DegenerateDenominator,
    #[error("cos(phi) vanishes")]
    PhiSingular,
    #[error("sin(mu) vanishes")]
    DegenerateAngle,
    #[error("the line-of-curvature mode is closed-form, not an ODE")]
    ClosedForm,
    #[error("directrix step {directrix} differs from the synthesis step {params}")]
    GridMismatch { directrix: f64, params: f64 },
    #[error("torsion |k2| = {k2:e} vanishes at s = {s}")]
    TorsionVanishes { s: f64, k2: f64 },
    #[error(transparent)]
    Ruled(#[from] RuledError),
}

/// Which invariants a synthesis run prescribes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    /// Distribution parameter `d` and strictional distance `v0`.
    #[serde(rename = "general_dv0")]
    GeneralDV0,
    /// Directrix is the striction line (`v0 = 0`); prescribes `d`.
    StrictionLine,
    /// Gaussian curvature through `n = 1/√K`, plus the angle `μ`.
    CurvatureAngle,
    /// `d = 0`; prescribes `v0`.
    Developable,
    /// Constant ruling direction.
    Cylinder,
    /// `φ = π/2` with `n = −1/k₂`; prescribes `μ`.
    AsymptoticLine,
    /// `φ = −∫k₂ + C` and `tanh θ = n k₁ cos φ`; prescribes `n` and `C`.
    LineOfCurvature,
}

impl SystemKind {
    pub const ALL: [SystemKind; 7] = [
        SystemKind::GeneralDV0,
        SystemKind::StrictionLine,
        SystemKind::CurvatureAngle,
        SystemKind::Developable,
        SystemKind::Cylinder,
        SystemKind::AsymptoticLine,
        SystemKind::LineOfCurvature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SystemKind::GeneralDV0 => "general_dv0",
            SystemKind::StrictionLine => "striction_line",
            SystemKind::CurvatureAngle => "curvature_angle",
            SystemKind::Developable => "developable",
            SystemKind::Cylinder => "cylinder",
            SystemKind::AsymptoticLine => "asymptotic_line",
            SystemKind::LineOfCurvature => "line_of_curvature",
        }
    }

    /// Parameters the kind reads, by field name.
    pub fn required_params(self) -> &'static [&'static str] {
        match self {
            SystemKind::GeneralDV0 => &["d", "v0", "theta0", "phi0"],
            SystemKind::StrictionLine => &["d", "theta0", "phi0"],
            SystemKind::CurvatureAngle => &["n", "mu", "theta0", "phi0"],
            SystemKind::Developable => &["v0", "theta0", "phi0"],
            SystemKind::Cylinder => &["theta0", "phi0"],
            SystemKind::AsymptoticLine => &["mu", "theta0"],
            SystemKind::LineOfCurvature => &["n", "c"],
        }
    }
}

/// Prescribed invariants and seed. Unused fields are ignored by a kind.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SynthesisParams {
    pub d: Option<CurvatureFn>,
    pub v0: Option<CurvatureFn>,
    pub n: Option<CurvatureFn>,
    pub mu: Option<f64>,
    pub c: Option<f64>,
    pub theta0: Option<f64>,
    pub phi0: Option<f64>,
    /// Expected grid step; checked against the directrix when present.
    pub step: Option<f64>,
}

impl SynthesisParams {
    /// First parameter the kind needs that is absent.
    pub fn missing_for(&self, kind: SystemKind) -> Option<&'static str> {
        kind.required_params().iter().copied().find(|&p| match p {
            "d" => self.d.is_none(),
            "v0" => self.v0.is_none(),
            "n" => self.n.is_none(),
            "mu" => self.mu.is_none(),
            "c" => self.c.is_none(),
            "theta0" => self.theta0.is_none(),
            "phi0" => self.phi0.is_none(),
            _ => false,
        })
    }
}

fn need<'a, T>(v: &'a Option<T>, name: &'static str) -> Result<&'a T, SynthesisError> {
    v.as_ref().ok_or(SynthesisError::MissingParam(name))
}

fn domain(s: f64, reason: impl Into<String>) -> SynthesisError {
    SynthesisError::ParamDomain {
        s,
        reason: reason.into(),
    }
}

/// `(θ′, φ′)` of the determining system for `kind` at one state.
pub fn system_rhs(
    kind: SystemKind,
    theta: f64,
    phi: f64,
    s: f64,
    params: &SynthesisParams,
    k1: f64,
    k2: f64,
) -> Result<(f64, f64), SynthesisError> {
    if kind == SystemKind::LineOfCurvature {
        return Err(SynthesisError::ClosedForm);
    }
    if kind != SystemKind::AsymptoticLine && theta.abs() < THETA_MIN {
        return Err(SynthesisError::ThetaSingularity { s, theta });
    }
    let (sp, cp) = phi.sin_cos();
    let sh = theta.sinh();
    let coth_term = k1 * cp / theta.tanh();
    match kind {
        SystemKind::GeneralDV0 => {
            let d = need(&params.d, "d")?.eval(s);
            let v0 = need(&params.v0, "v0")?.eval(s);
            let r2 = d * d + v0 * v0;
            if !(r2 > 0.0) {
                return Err(domain(s, "d^2 + v0^2 must be positive"));
            }
            Ok((v0 * sh / r2 + k1 * sp, -k2 + coth_term - d / r2))
        }
        SystemKind::StrictionLine => {
            let d = need(&params.d, "d")?.eval(s);
            if d == 0.0 {
                return Err(domain(s, "d must be nonzero"));
            }
            Ok((k1 * sp, -1.0 / d - k2 + coth_term))
        }
        SystemKind::CurvatureAngle => {
            let n = need(&params.n, "n")?.eval(s);
            let mu = *need(&params.mu, "mu")?;
            let cot = cot_checked(mu).ok_or_else(|| domain(s, "sin(mu) must be nonzero"))?;
            if !(n > 0.0) {
                return Err(domain(s, "n must be positive"));
            }
            Ok((sh * cot / n + k1 * sp, -1.0 / n - k2 + coth_term))
        }
        SystemKind::Developable => {
            let v0 = need(&params.v0, "v0")?.eval(s);
            if v0 == 0.0 {
                return Err(domain(s, "v0 must be nonzero"));
            }
            Ok((sh / v0 + k1 * sp, -k2 + coth_term))
        }
        SystemKind::Cylinder => Ok((k1 * sp, -k2 + coth_term)),
        SystemKind::AsymptoticLine => {
            let mu = *need(&params.mu, "mu")?;
            let cot = cot_checked(mu).ok_or_else(|| domain(s, "sin(mu) must be nonzero"))?;
            let n = asymptotic_n(params, s, k2)?;
            Ok((sh * cot / n + k1, 0.0))
        }
        SystemKind::LineOfCurvature => unreachable!(),
    }
}

fn cot_checked(mu: f64) -> Option<f64> {
    let (s, c) = mu.sin_cos();
    (s.abs() >= DOMAIN_TOL).then(|| c / s)
}

/// `n = −1/k₂`; a prescribed `n` must agree with it.
fn asymptotic_n(params: &SynthesisParams, s: f64, k2: f64) -> Result<f64, SynthesisError> {
    if k2.abs() < DOMAIN_TOL {
        return Err(SynthesisError::TorsionVanishes { s, k2 });
    }
    let n = -1.0 / k2;
    if let Some(given) = &params.n {
        let g = given.eval(s);
        if (g - n).abs() > 1e-12 * n.abs().max(1.0) {
            return Err(domain(s, format!("asymptotic line needs n = -1/k2 = {n}, got {g}")));
        }
    }
    Ok(n)
}

fn check_grid(params: &SynthesisParams, directrix: &FrenetCurve) -> Result<(), SynthesisError> {
    if let Some(step) = params.step {
        if (step - directrix.grid.step).abs() > 1e-12 * step.abs() {
            return Err(SynthesisError::GridMismatch {
                directrix: directrix.grid.step,
                params: step,
            });
        }
    }
    Ok(())
}

/// Integrates the determining system of `kind` along the directrix grid.
pub fn integrate_system(
    kind: SystemKind,
    params: &SynthesisParams,
    directrix: &FrenetCurve,
) -> Result<AngleTrack, SynthesisError> {
    check_grid(params, directrix)?;
    if let Some(name) = params.missing_for(kind) {
        return Err(SynthesisError::MissingParam(name));
    }
    if kind == SystemKind::LineOfCurvature {
        return line_of_curvature_track(params, directrix);
    }
    if kind == SystemKind::AsymptoticLine {
        for (i, p) in directrix.samples.iter().enumerate() {
            if p.k2.abs() < DOMAIN_TOL {
                return Err(SynthesisError::TorsionVanishes { s: directrix.s(i), k2: p.k2 });
            }
        }
        if directrix.k2_fn.as_constant().is_none() {
            return Err(domain(directrix.grid.s0, "asymptotic line mode needs constant k2"));
        }
    }

    let grid = directrix.grid;
    let theta0 = params.theta0.unwrap_or_default();
    let phi0 = if kind == SystemKind::AsymptoticLine {
        std::f64::consts::FRAC_PI_2
    } else {
        params.phi0.unwrap_or_default()
    };
    if theta0.abs() < THETA_MIN {
        return Err(SynthesisError::ThetaSingularity { s: grid.s0, theta: theta0 });
    }

    let k1 = &directrix.k1_fn;
    let k2 = &directrix.k2_fn;
    let rhs = |s: f64, y: &[f64; 2]| system_rhs(kind, y[0], y[1], s, params, k1.eval(s), k2.eval(s));

    let mut samples = Vec::with_capacity(grid.len);
    let mut rk = Rk4::new(grid.s0, [theta0, phi0]);
    for i in 0..grid.len {
        let s = grid.s(i);
        if i > 0 {
            // the closure cannot return errors; record the first one
            let mut failure = None;
            rk.step(grid.step, s, |t, y| match rhs(t, y) {
                Ok((a, b)) => [a, b],
                Err(e) => {
                    failure.get_or_insert(e);
                    [f64::NAN, f64::NAN]
                }
            });
            if let Some(e) = failure {
                return Err(relocate(e, s));
            }
        }
        let [theta, phi] = rk.y;
        if !theta.is_finite() || theta.abs() > THETA_MAX {
            return Err(SynthesisError::Blowup { s });
        }
        if theta.abs() < THETA_MIN {
            return Err(SynthesisError::ThetaSingularity { s, theta });
        }
        let (tp, pp) = rhs(s, &rk.y)?;
        samples.push(AngleSample {
            theta,
            phi,
            theta_prime: tp,
            phi_prime: pp,
        });
    }
    Ok(AngleTrack::new(grid, samples)?)
}

// Stage evaluations can fail between grid points; report the step's end.
fn relocate(e: SynthesisError, s: f64) -> SynthesisError {
    match e {
        SynthesisError::ThetaSingularity { theta, .. } => SynthesisError::ThetaSingularity { s, theta },
        other => other,
    }
}

fn line_of_curvature_track(params: &SynthesisParams, directrix: &FrenetCurve) -> Result<AngleTrack, SynthesisError> {
    let grid = directrix.grid;
    let n_fn = need(&params.n, "n")?;
    let c = *need(&params.c, "c")?;
    let phis = line_of_curvature_phi(&directrix.k2_fn, c, &grid.points());
    let mut samples = Vec::with_capacity(grid.len);
    for (i, &phi) in phis.iter().enumerate() {
        let s = grid.s(i);
        let n = n_fn.eval(s);
        let k1 = directrix.k1_fn.eval(s);
        let k2 = directrix.k2_fn.eval(s);
        let theta = locus_theta(n, k1, phi)?;
        if theta.abs() < THETA_MIN {
            return Err(SynthesisError::ThetaSingularity { s, theta });
        }
        // d/ds artanh(n k1 cos φ) with φ′ = −k₂
        let (sp, cp) = phi.sin_cos();
        let x = n * k1 * cp;
        let dx = n_fn.derivative(s) * k1 * cp + n * directrix.k1_fn.derivative(s) * cp + n * k1 * sp * k2;
        samples.push(AngleSample {
            theta,
            phi,
            theta_prime: dx / (1.0 - x * x),
            phi_prime: -k2,
        });
    }
    Ok(AngleTrack::new(grid, samples)?)
}

/// Ruling field `q_i` of an angle track over its directrix.
pub fn build_surface(track: &AngleTrack, directrix: &FrenetCurve) -> Result<RuledSurfaceGrid, SynthesisError> {
    if !track.grid().matches(&directrix.grid) {
        return Err(RuledError::GridMismatch.into());
    }
    let rulings = track
        .samples()
        .iter()
        .zip(&directrix.samples)
        .map(|(a, p)| ruling_from_angles(&p.frame, a.theta, a.phi).q)
        .collect();
    Ok(RuledSurfaceGrid::new(directrix.clone(), rulings, Some(track.clone()))?)
}

/// Constant `θ` making the directrix a geodesic: `tanh θ = n k₁/(n k₂ + 1)`.
pub fn geodesic_theta(n: f64, k1: f64, k2: f64) -> Result<f64, SynthesisError> {
    let den = n * k2 + 1.0;
    if den.abs() < DOMAIN_TOL {
        return Err(SynthesisError::DegenerateDenominator);
    }
    let x = n * k1 / den;
    if x.abs() >= 1.0 {
        return Err(SynthesisError::NoSolution {
            what: "n*k1/(n*k2+1)",
            value: x,
        });
    }
    Ok(x.atanh())
}

/// `φ_i = C − ∫_{s_0}^{s_i} k₂`, by Simpson's rule on each grid interval.
pub fn line_of_curvature_phi(k2: &CurvatureFn, c: f64, s_grid: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(s_grid.len());
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for (i, &s) in s_grid.iter().enumerate() {
        if i > 0 {
            let a = s_grid[i - 1];
            let piece = (s - a) / 6.0 * (k2.eval(a) + 4.0 * k2.eval(0.5 * (a + s)) + k2.eval(s));
            let t = piece - comp;
            let z = sum + t;
            comp = (z - sum) - t;
            sum = z;
        }
        out.push(c - sum);
    }
    out
}

/// `θ = artanh(n k₁ cos φ)`.
pub fn locus_theta(n: f64, k1: f64, phi: f64) -> Result<f64, SynthesisError> {
    let c = phi.cos();
    if c.abs() < DOMAIN_TOL {
        return Err(SynthesisError::PhiSingular);
    }
    let x = n * k1 * c;
    if x.abs() >= 1.0 {
        return Err(SynthesisError::NoSolution {
            what: "n*k1*cos(phi)",
            value: x,
        });
    }
    Ok(x.atanh())
}

/// `φ = atan(−cosh θ · cot μ)`, principal branch.
pub fn phi_from_theta_mu(theta: f64, mu: f64) -> Result<f64, SynthesisError> {
    let cot = cot_checked(mu).ok_or(SynthesisError::DegenerateAngle)?;
    Ok((-theta.cosh() * cot).atan())
}

/// `max |k₁/k₂ − sinh θ · cot μ|` over the directrix samples.
pub fn helix_relation_defect(theta: f64, mu: f64, curve: &FrenetCurve) -> Result<f64, SynthesisError> {
    let cot = cot_checked(mu).ok_or(SynthesisError::DegenerateAngle)?;
    let target = theta.sinh() * cot;
    let mut worst = 0.0f64;
    for (i, p) in curve.samples.iter().enumerate() {
        if p.k2.abs() < DOMAIN_TOL {
            return Err(SynthesisError::TorsionVanishes { s: curve.s(i), k2: p.k2 });
        }
        worst = worst.max((p.k1 / p.k2 - target).abs());
    }
    Ok(worst)
}
