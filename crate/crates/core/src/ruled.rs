//! Timelike ruled surfaces `r(s, v) = k(s) + v·q(s)` over a Frenet directrix.
//!
//! The ruling is written in the directrix frame through a hyperbolic angle
//! `θ` and a spacelike angle `φ`:
//!
//! ```text
//! m = cos φ N + sin φ B
//! A = −sin φ N + cos φ B
//! q = cosh θ T + sinh θ A
//! ```
//!
//! Surface invariants are available two ways. [`invariants_analytic`]
//! evaluates the closed forms in `(θ, φ, θ′, φ′)`. [`invariants_numeric`]
//! only sees the sampled `k_i` and `q_i` and differentiates them by finite
//! differences, so it can serve as an independent check of synthesis.
//!
//! The distribution parameter uses the Lorentzian mixed product
//! `⟨k′ × q, q′⟩ = −det[k′, q, q′]`. With a right-handed frame this
//! reproduces the sign of the closed form.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frenet::{Frame, FrenetCurve, Grid};
use crate::lorentz::{mixed_product, LVec3};

/// Smallest admissible `|θ|`; `coth θ` and the tangent-ruling degeneracy sit at 0.
pub const THETA_MIN: f64 = 1e-6;
/// `⟨q, q⟩ = −1` must hold to this tolerance on a surface grid.
pub const UNIT_RULING_TOL: f64 = 1e-9;
/// `⟨q′, q′⟩` below this marks a cylindrical (non-usable) sample.
pub const CYLINDRICAL_TOL: f64 = 1e-12;
/// Relative size of `‖r_s × r_v‖` below which a surface point is singular.
pub const SINGULAR_TOL: f64 = 1e-8;
pub const ANGLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RuledError {
    #[error("sample index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("singular surface point at s = {s}, v = {v}")]
    SingularPoint { s: f64, v: f64 },
    #[error("cylindrical ruling at s = {s}: q' vanishes")]
    CylindricalRuling { s: f64 },
    #[error("every sample is cylindrical; d and v0 are undefined")]
    AllCylindrical,
    #[error("ruling is not a unit timelike vector co-oriented with T (<q,q> = {norm_sq})")]
    NotUnitTimelike { norm_sq: f64 },
    #[error("ruling is tangent to the directrix; phi is undefined")]
    TangentRuling,
    #[error("distribution parameter vanishes; the ruling is torsal")]
    DevelopableRuling,
    #[error("sin(mu) vanishes")]
    DegenerateAngle,
    #[error("|theta| = {theta:e} below the minimum at s = {s}")]
    ThetaBelowMinimum { s: f64, theta: f64 },
    #[error("grids of directrix and ruling data differ")]
    GridMismatch,
    #[error("need at least 3 samples for finite differences, got {0}")]
    TooFewSamples(usize),
    #[error("{0}")]
    Domain(String),
}

/// Angle coordinates of a ruling field sampled along the directrix grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleSample {
    pub theta: f64,
    pub phi: f64,
    pub theta_prime: f64,
    pub phi_prime: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngleTrack {
    grid: Grid,
    samples: Vec<AngleSample>,
}

impl AngleTrack {
    /// Validates finiteness and the `|θ| ≥ θ_min` guard.
    pub fn new(grid: Grid, samples: Vec<AngleSample>) -> Result<Self, RuledError> {
        if samples.len() != grid.len {
            return Err(RuledError::GridMismatch);
        }
        for (i, a) in samples.iter().enumerate() {
            let finite = a.theta.is_finite()
                && a.phi.is_finite()
                && a.theta_prime.is_finite()
                && a.phi_prime.is_finite();
            if !finite {
                return Err(RuledError::Domain(format!("non-finite angle data at s = {}", grid.s(i))));
            }
            if a.theta.abs() < THETA_MIN {
                return Err(RuledError::ThetaBelowMinimum {
                    s: grid.s(i),
                    theta: a.theta,
                });
            }
        }
        Ok(AngleTrack { grid, samples })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[AngleSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Directrix samples plus a unit timelike ruling per sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuledSurfaceGrid {
    directrix: FrenetCurve,
    rulings: Vec<LVec3>,
    provenance: Option<AngleTrack>,
}

impl RuledSurfaceGrid {
    pub fn new(
        directrix: FrenetCurve,
        rulings: Vec<LVec3>,
        provenance: Option<AngleTrack>,
    ) -> Result<Self, RuledError> {
        if rulings.len() != directrix.len() {
            return Err(RuledError::GridMismatch);
        }
        if let Some(track) = &provenance {
            if !track.grid().matches(&directrix.grid) {
                return Err(RuledError::GridMismatch);
            }
        }
        for q in &rulings {
            let nq = q.norm_sq();
            if !q.is_finite() || (nq + 1.0).abs() > UNIT_RULING_TOL {
                return Err(RuledError::NotUnitTimelike { norm_sq: nq });
            }
        }
        Ok(RuledSurfaceGrid {
            directrix,
            rulings,
            provenance,
        })
    }

    pub fn directrix(&self) -> &FrenetCurve {
        &self.directrix
    }

    pub fn rulings(&self) -> &[LVec3] {
        &self.rulings
    }

    pub fn provenance(&self) -> Option<&AngleTrack> {
        self.provenance.as_ref()
    }

    pub fn len(&self) -> usize {
        self.rulings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rulings.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.directrix.grid.step
    }

    pub fn s(&self, i: usize) -> f64 {
        self.directrix.s(i)
    }

    /// Copy of the surface with the given rulings, dropping provenance.
    pub fn with_rulings(&self, rulings: Vec<LVec3>) -> Result<Self, RuledError> {
        RuledSurfaceGrid::new(self.directrix.clone(), rulings, None)
    }
}

/// Per-sample invariants of a non-cylindrical ruling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantSample {
    pub s: f64,
    /// Distribution parameter (signed).
    pub d: f64,
    /// Strictional distance.
    pub v0: f64,
    /// Gaussian curvature `d²/(d² + v0²)²`.
    pub gaussian: f64,
    /// Chasles angle with `tan μ = v0/d`.
    pub mu_chasles: f64,
    /// The angle parametrizing `d = n sin²μ, v0 = n sin μ cos μ`; it is
    /// `π/2 − mu_chasles` for `d > 0`.
    pub mu_param: f64,
    /// `(d² + v0²)/d`, absent on torsal rulings.
    pub n: Option<f64>,
}

/// Invariants along the grid; `None` marks a cylindrical sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceInvariants {
    pub samples: Vec<Option<InvariantSample>>,
}

impl SurfaceInvariants {
    pub fn usable(&self) -> impl Iterator<Item = (usize, &InvariantSample)> {
        self.samples
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_ref().map(|x| (i, x)))
    }

    pub fn cylindrical_count(&self) -> usize {
        self.samples.iter().filter(|s| s.is_none()).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RulingVectors {
    pub q: LVec3,
    pub a: LVec3,
    pub m: LVec3,
}

pub fn ruling_from_angles(frame: &Frame, theta: f64, phi: f64) -> RulingVectors {
    let (sp, cp) = phi.sin_cos();
    let a = -sp * frame.n + cp * frame.b;
    let m = cp * frame.n + sp * frame.b;
    let q = theta.cosh() * frame.t + theta.sinh() * a;
    RulingVectors { q, a, m }
}

/// Recovers `(θ, φ)` from a ruling; `φ` is returned in `[0, 2π)`.
pub fn angles_from_ruling(frame: &Frame, q: LVec3, tol: f64) -> Result<(f64, f64), RuledError> {
    let nq = q.norm_sq();
    if (nq + 1.0).abs() > tol || -q.inner(frame.t) <= 0.0 {
        return Err(RuledError::NotUnitTimelike { norm_sq: nq });
    }
    let qn = q.inner(frame.n);
    let qb = q.inner(frame.b);
    let sinh_theta = qn.hypot(qb);
    if sinh_theta < tol {
        return Err(RuledError::TangentRuling);
    }
    let theta = sinh_theta.asinh();
    let phi = (-qn).atan2(qb).rem_euclid(std::f64::consts::TAU);
    Ok((theta, phi))
}

pub fn evaluate_surface(surface: &RuledSurfaceGrid, i: usize, v: f64) -> Result<LVec3, RuledError> {
    if i >= surface.len() {
        return Err(RuledError::IndexOutOfRange {
            index: i,
            len: surface.len(),
        });
    }
    Ok(surface.directrix.samples[i].position + v * surface.rulings[i])
}

/// Second-order finite-difference derivative at index `i` of a uniformly
/// sampled sequence: central in the interior, one-sided at the ends.
pub fn fd_at<T>(values: &[T], i: usize, h: f64) -> T
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let n = values.len();
    assert!(n >= 3 && i < n, "fd_at needs 3 samples and an index in range");
    if i == 0 {
        (values[1] * 4.0 - values[0] * 3.0 - values[2]) * (0.5 / h)
    } else if i == n - 1 {
        (values[n - 1] * 3.0 - values[n - 2] * 4.0 + values[n - 3]) * (0.5 / h)
    } else {
        (values[i + 1] - values[i - 1]) * (0.5 / h)
    }
}

pub fn fd_derivative<T>(values: &[T], h: f64) -> Vec<T>
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
{
    (0..values.len()).map(|i| fd_at(values, i, h)).collect()
}

fn require_fd(surface: &RuledSurfaceGrid) -> Result<(), RuledError> {
    if surface.len() < 3 {
        Err(RuledError::TooFewSamples(surface.len()))
    } else {
        Ok(())
    }
}

/// Unit normal `(r_s × r_v)/‖r_s × r_v‖` with `r_s` from finite differences.
pub fn surface_normal(
    surface: &RuledSurfaceGrid,
    i: usize,
    v: f64,
    h: f64,
) -> Result<LVec3, RuledError> {
    if i >= surface.len() {
        return Err(RuledError::IndexOutOfRange {
            index: i,
            len: surface.len(),
        });
    }
    require_fd(surface)?;
    let positions = surface.directrix.positions();
    let r_s = fd_at(&positions, i, h) + v * fd_at(&surface.rulings, i, h);
    let r_v = surface.rulings[i];
    let c = r_s.cross(r_v);
    let norm = c.norm();
    if norm < SINGULAR_TOL * r_s.euclid_norm() * r_v.euclid_norm() || norm == 0.0 {
        return Err(RuledError::SingularPoint { s: surface.s(i), v });
    }
    Ok(c / norm)
}

/// Limit of the unit normal along a nontorsal ruling, `(q′ × q)/‖q′‖`.
pub fn asymptotic_direction(surface: &RuledSurfaceGrid, i: usize, h: f64) -> Result<LVec3, RuledError> {
    if i >= surface.len() {
        return Err(RuledError::IndexOutOfRange {
            index: i,
            len: surface.len(),
        });
    }
    require_fd(surface)?;
    let q = surface.rulings[i];
    let dq = fd_at(&surface.rulings, i, h);
    let norm = dq.norm();
    if norm * norm < CYLINDRICAL_TOL {
        return Err(RuledError::CylindricalRuling { s: surface.s(i) });
    }
    Ok(dq.cross(q) / norm)
}

/// Derivatives of `m` and `A` along the directrix.
pub fn frame_derivatives(frame: &Frame, phi: f64, phi_prime: f64, k1: f64, k2: f64) -> (LVec3, LVec3) {
    let (sp, cp) = phi.sin_cos();
    let a = -sp * frame.n + cp * frame.b;
    let m = cp * frame.n + sp * frame.b;
    let w = phi_prime + k2;
    let m_prime = k1 * cp * frame.t + w * a;
    let a_prime = -k1 * sp * frame.t - w * m;
    (m_prime, a_prime)
}

/// `q′` assembled from its `T, N, B` components, and `⟨q′, q′⟩` from the
/// expanded closed form (the two must agree).
pub fn q_prime_analytic(
    frame: &Frame,
    theta: f64,
    phi: f64,
    theta_prime: f64,
    phi_prime: f64,
    k1: f64,
    k2: f64,
) -> (LVec3, f64) {
    let (sh, ch) = (theta.sinh(), theta.cosh());
    let (sp, cp) = phi.sin_cos();
    let w = phi_prime + k2;
    let ct = sh * (theta_prime - k1 * sp);
    let cn = ch * (k1 - theta_prime * sp) - w * sh * cp;
    let cb = theta_prime * ch * cp - w * sh * sp;
    let q_prime = ct * frame.t + cn * frame.n + cb * frame.b;
    let norm_sq = theta_prime * theta_prime - 2.0 * k1 * theta_prime * sp
        + k1 * k1 * (ch * ch * cp * cp + sp * sp)
        - 2.0 * k1 * w * sh * ch * cp
        + w * w * sh * sh;
    (q_prime, norm_sq)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureRelations {
    pub mu_chasles: f64,
    pub gaussian: f64,
    pub n: f64,
}

/// Chasles angle, Gaussian curvature and `n = (d² + v0²)/d`.
pub fn curvature_relations(d: f64, v0: f64) -> Result<CurvatureRelations, RuledError> {
    if d == 0.0 {
        return Err(RuledError::DevelopableRuling);
    }
    let r2 = d * d + v0 * v0;
    Ok(CurvatureRelations {
        mu_chasles: (v0 / d).atan(),
        gaussian: d * d / (r2 * r2),
        n: r2 / d,
    })
}

/// `d = n sin²μ`, `v0 = n sin μ cos μ`.
pub fn dv0_from_n_mu(n: f64, mu: f64) -> Result<(f64, f64), RuledError> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(RuledError::Domain(format!("n must be positive, got {n}")));
    }
    let (s, c) = mu.sin_cos();
    if s.abs() < ANGLE_TOL {
        return Err(RuledError::DegenerateAngle);
    }
    Ok((n * s * s, n * s * c))
}

fn invariant_sample(s: f64, d: f64, v0: f64) -> InvariantSample {
    match curvature_relations(d, v0) {
        Ok(rel) => InvariantSample {
            s,
            d,
            v0,
            gaussian: rel.gaussian,
            mu_chasles: rel.mu_chasles,
            mu_param: (d * d).atan2(v0 * d),
            n: Some(rel.n),
        },
        Err(_) => InvariantSample {
            s,
            d,
            v0,
            gaussian: 0.0,
            mu_chasles: std::f64::consts::FRAC_PI_2.copysign(v0),
            mu_param: 0.0,
            n: None,
        },
    }
}

/// Closed-form invariants from an angle track.
pub fn invariants_analytic(track: &AngleTrack, directrix: &FrenetCurve) -> Result<SurfaceInvariants, RuledError> {
    if !track.grid().matches(&directrix.grid) {
        return Err(RuledError::GridMismatch);
    }
    let mut out = Vec::with_capacity(track.len());
    for (i, (a, p)) in track.samples().iter().zip(&directrix.samples).enumerate() {
        let s = directrix.s(i);
        let (_, norm_sq) = q_prime_analytic(&p.frame, a.theta, a.phi, a.theta_prime, a.phi_prime, p.k1, p.k2);
        if norm_sq <= CYLINDRICAL_TOL {
            return Err(RuledError::CylindricalRuling { s });
        }
        let sh = a.theta.sinh();
        let w = a.phi_prime + p.k2;
        let v0 = sh * (a.theta_prime - p.k1 * a.phi.sin()) / norm_sq;
        let d = sh * (p.k1 * a.theta.cosh() * a.phi.cos() - w * sh) / norm_sq;
        out.push(Some(invariant_sample(s, d, v0)));
    }
    Ok(SurfaceInvariants { samples: out })
}

/// Invariants recomputed from raw `(k_i, q_i)` samples by finite differences.
pub fn invariants_numeric(surface: &RuledSurfaceGrid, h: f64) -> Result<SurfaceInvariants, RuledError> {
    require_fd(surface)?;
    let k_prime = fd_derivative(&surface.directrix.positions(), h);
    let q_prime = fd_derivative(&surface.rulings, h);
    let samples: Vec<Option<InvariantSample>> = (0..surface.len())
        .map(|i| {
            let qq = q_prime[i].norm_sq();
            if qq < CYLINDRICAL_TOL {
                return None;
            }
            let d = mixed_product(k_prime[i], surface.rulings[i], q_prime[i]) / qq;
            let v0 = -k_prime[i].inner(q_prime[i]) / qq;
            Some(invariant_sample(surface.s(i), d, v0))
        })
        .collect();
    if samples.iter().all(Option::is_none) {
        return Err(RuledError::AllCylindrical);
    }
    Ok(SurfaceInvariants { samples })
}

/// Central points `c_i = k_i + v0_i q_i`.
pub fn striction_curve(surface: &RuledSurfaceGrid, invariants: &SurfaceInvariants) -> Result<Vec<LVec3>, RuledError> {
    if invariants.samples.len() != surface.len() {
        return Err(RuledError::GridMismatch);
    }
    invariants
        .samples
        .iter()
        .enumerate()
        .map(|(i, inv)| match inv {
            Some(x) => Ok(surface.directrix.samples[i].position + x.v0 * surface.rulings[i]),
            None => Err(RuledError::CylindricalRuling { s: surface.s(i) }),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::{integrate_frenet, FrenetOptions, FrenetSample, FrenetSeed};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

    fn close(a: LVec3, b: LVec3, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    fn boosted_frame() -> Frame {
        // Frame of the k1 = 1, k2 = 0 directrix at s = 0.7
        let (c, s) = (0.7f64.cosh(), 0.7f64.sinh());
        Frame {
            t: LVec3::new(c, s, 0.0),
            n: LVec3::new(s, c, 0.0),
            b: LVec3::E3,
        }
    }

    #[test]
    fn ruling_examples() {
        let f = boosted_frame();
        let r = ruling_from_angles(&f, 0.0, 1.3);
        assert!(close(r.q, f.t, 1e-15));

        let a = 0.8f64;
        let r = ruling_from_angles(&f, a, 0.0);
        assert!(close(r.q, a.cosh() * f.t + a.sinh() * f.b, 1e-14));
        assert!(close(r.m, f.n, 1e-15));

        let r = ruling_from_angles(&f, 1.0, FRAC_PI_2);
        assert!(close(r.a, -f.n, 1e-15));
        assert!(close(r.q, 1f64.cosh() * f.t - 1f64.sinh() * f.n, 1e-14));
        assert!(close(r.m, f.b, 1e-15));
        assert!((r.q.norm_sq() + 1.0).abs() < 1e-12);
        assert!(r.q.inner(r.m).abs() < 1e-12);
    }

    #[test]
    fn angles_from_ruling_examples() {
        let f = Frame::STANDARD;
        let q = 1f64.cosh() * f.t + 1f64.sinh() * f.b;
        let (t, p) = angles_from_ruling(&f, q, 1e-9).unwrap();
        assert_relative_eq!(t, 1.0, epsilon = 1e-14);
        assert!(p.abs() < 1e-15);
        assert_eq!(angles_from_ruling(&f, f.t, 1e-9), Err(RuledError::TangentRuling));
        assert!(matches!(
            angles_from_ruling(&f, LVec3::new(2.0, 0.0, 0.0), 1e-9),
            Err(RuledError::NotUnitTimelike { .. })
        ));
    }

    fn tiny_surface(k: Vec<LVec3>, q: Vec<LVec3>) -> RuledSurfaceGrid {
        let n = k.len();
        let samples = k
            .into_iter()
            .map(|position| FrenetSample {
                position,
                frame: Frame::STANDARD,
                k1: 1.0,
                k2: 0.0,
            })
            .collect();
        let curve = FrenetCurve {
            grid: Grid {
                s0: 0.0,
                step: 1.0,
                len: n,
            },
            samples,
            k1_fn: 1.0.into(),
            k2_fn: 0.0.into(),
        };
        RuledSurfaceGrid::new(curve, q, None).unwrap()
    }

    #[test]
    fn evaluate_surface_examples() {
        let s = tiny_surface(vec![LVec3::new(1.0, 1.0, 0.0)], vec![LVec3::E1]);
        assert_eq!(evaluate_surface(&s, 0, 0.0).unwrap(), LVec3::new(1.0, 1.0, 0.0));
        assert_eq!(evaluate_surface(&s, 0, -2.0).unwrap(), LVec3::new(-1.0, 1.0, 0.0));
        let s0 = tiny_surface(vec![LVec3::ZERO], vec![LVec3::E1]);
        assert_eq!(evaluate_surface(&s0, 0, 1.0).unwrap(), LVec3::E1);
        assert!(matches!(
            evaluate_surface(&s, 3, 0.0),
            Err(RuledError::IndexOutOfRange { index: 3, len: 1 })
        ));
    }

    #[test]
    fn rejects_non_unit_ruling() {
        let curve = integrate_frenet(&1.0.into(), &0.0.into(), &FrenetSeed::default(), (0.0, 0.2), 0.1, &Default::default())
            .unwrap();
        let r = RuledSurfaceGrid::new(curve, vec![LVec3::E1, LVec3::E1 * 1.1, LVec3::E1], None);
        assert!(matches!(r, Err(RuledError::NotUnitTimelike { .. })));
    }

    fn planar_surface(step: f64) -> RuledSurfaceGrid {
        let curve = integrate_frenet(&1.0.into(), &0.0.into(), &FrenetSeed::default(), (0.0, 1.0), step, &FrenetOptions::default())
            .unwrap();
        let n = curve.len();
        RuledSurfaceGrid::new(curve, vec![LVec3::E1; n], None).unwrap()
    }

    #[test]
    fn normal_of_planar_surface() {
        let h = 1e-3;
        let s = planar_surface(h);
        let m = surface_normal(&s, 1000, 0.0, h).unwrap();
        assert!(close(m, LVec3::E3, 1e-9) || close(m, -LVec3::E3, 1e-9), "{m}");
        assert!(matches!(surface_normal(&s, 0, 0.0, h), Err(RuledError::SingularPoint { .. })));
    }

    #[test]
    fn asymptotic_direction_examples() {
        let h = 1e-3;
        let s = planar_surface(h);
        assert!(matches!(asymptotic_direction(&s, 10, h), Err(RuledError::CylindricalRuling { .. })));

        // q(s) = cosh s e1 + sinh s e2 on a grid centred at s = 0
        let grid: Vec<f64> = (-2..=2).map(|i| i as f64 * h).collect();
        let q: Vec<LVec3> = grid.iter().map(|&t| LVec3::new(t.cosh(), t.sinh(), 0.0)).collect();
        let k = vec![LVec3::ZERO; q.len()];
        let surf = tiny_surface(k, q);
        let a = asymptotic_direction(&surf, 2, h).unwrap();
        assert!(close(a, LVec3::E3, 1e-6), "{a}");
    }

    #[test]
    fn frame_derivative_examples() {
        let f = boosted_frame();
        let (k1, k2) = (0.7, 0.3);
        let (mp, _) = frame_derivatives(&f, 0.0, -k2, k1, k2);
        assert!(close(mp, k1 * f.t, 1e-15));
        let (mp, ap) = frame_derivatives(&f, 0.4, -k2, 0.0, k2);
        assert!(close(mp, LVec3::ZERO, 0.0) && close(ap, LVec3::ZERO, 0.0));
    }

    #[test]
    fn q_prime_examples() {
        let f = boosted_frame();
        // cylinder conditions zero every component
        let (theta, phi, k1, k2) = (0.9f64, 0.6f64, 1.2, 0.4);
        let tp = k1 * phi.sin();
        let pp = -k2 + k1 * phi.cos() / theta.tanh();
        let (qp, nsq) = q_prime_analytic(&f, theta, phi, tp, pp, k1, k2);
        assert!(qp.max_abs() < 1e-14 && nsq.abs() < 1e-14);

        // theta' = 0, phi = 0
        let (theta, pp, k1, k2) = (0.7f64, 0.2, 1.1, 0.5);
        let (qp, nsq) = q_prime_analytic(&f, theta, 0.0, 0.0, pp, k1, k2);
        let c = k1 * theta.cosh() - (pp + k2) * theta.sinh();
        assert!(close(qp, c * f.n, 1e-14));
        assert_relative_eq!(nsq, c * c, epsilon = 1e-14);

        let (_, nsq) = q_prime_analytic(&f, 1.0, FRAC_PI_2, 2.0, 0.6, 1.0, 0.4);
        assert_relative_eq!(nsq, 1.0 + 1f64.sinh().powi(2), epsilon = 1e-13);
        assert_relative_eq!(nsq, 2.381097845541816, epsilon = 1e-12);
    }

    #[test]
    fn curvature_relation_examples() {
        let r = curvature_relations(1.0, 0.0).unwrap();
        assert_eq!((r.mu_chasles, r.gaussian, r.n), (0.0, 1.0, 1.0));
        let r = curvature_relations(1.0, 1.0).unwrap();
        assert_relative_eq!(r.mu_chasles, FRAC_PI_4);
        assert_relative_eq!(r.gaussian, 0.25);
        assert_relative_eq!(r.n, 2.0);
        assert_eq!(curvature_relations(0.0, 1.0), Err(RuledError::DevelopableRuling));
    }

    #[test]
    fn dv0_examples() {
        let (d, v0) = dv0_from_n_mu(2.0, FRAC_PI_2).unwrap();
        assert_relative_eq!(d, 2.0);
        assert!(v0.abs() < 1e-15);
        let (d, v0) = dv0_from_n_mu(2.0, FRAC_PI_4).unwrap();
        assert_relative_eq!(d, 1.0, epsilon = 1e-15);
        assert_relative_eq!(v0, 1.0, epsilon = 1e-15);
        assert_eq!(dv0_from_n_mu(2.0, 0.0), Err(RuledError::DegenerateAngle));
        assert!(matches!(dv0_from_n_mu(-1.0, 1.0), Err(RuledError::Domain(_))));
    }

    #[test]
    fn mu_param_is_complement_of_chasles() {
        let inv = invariant_sample(0.0, 0.5, 0.3);
        assert_relative_eq!(inv.mu_param + inv.mu_chasles, FRAC_PI_2, epsilon = 1e-15);
        let (d, v0) = dv0_from_n_mu(1.7, 2.2).unwrap();
        assert_relative_eq!(invariant_sample(0.0, d, v0).mu_param, 2.2, epsilon = 1e-14);
    }

    #[test]
    fn striction_of_zero_v0_is_directrix() {
        let h = 1e-2;
        let s = planar_surface(h);
        let inv = SurfaceInvariants {
            samples: (0..s.len())
                .map(|i| Some(invariant_sample(s.s(i), 1.0, 0.0)))
                .collect(),
        };
        let c = striction_curve(&s, &inv).unwrap();
        assert_eq!(c, s.directrix().positions());
        let cyl = SurfaceInvariants {
            samples: vec![None; s.len()],
        };
        assert!(matches!(striction_curve(&s, &cyl), Err(RuledError::CylindricalRuling { .. })));
    }

    #[test]
    fn constant_ruling_is_all_cylindrical() {
        let s = planar_surface(1e-2);
        assert_eq!(invariants_numeric(&s, 1e-2), Err(RuledError::AllCylindrical));
    }

    fn frame_strategy() -> impl Strategy<Value = Frame> {
        // boost along e2 followed by a rotation in the (N, B) plane
        (-1.5..1.5f64, 0.0..TAU).prop_map(|(r, a)| {
            let (c, s) = (r.cosh(), r.sinh());
            let t = LVec3::new(c, s, 0.0);
            let n0 = LVec3::new(s, c, 0.0);
            let (sa, ca) = a.sin_cos();
            Frame {
                t,
                n: ca * n0 + sa * LVec3::E3,
                b: -sa * n0 + ca * LVec3::E3,
            }
        })
    }

    proptest! {
        #[test]
        fn ruling_round_trip(f in frame_strategy(), theta in 1e-3..2.0f64, phi in 0.0..TAU) {
            let r = ruling_from_angles(&f, theta, phi);
            prop_assert!((r.q.norm_sq() + 1.0).abs() < 1e-12);
            prop_assert!((r.m.norm_sq() - 1.0).abs() < 1e-12);
            prop_assert!((r.a.norm_sq() - 1.0).abs() < 1e-12);
            prop_assert!(r.q.inner(r.m).abs() < 1e-12);
            let (t, p) = angles_from_ruling(&f, r.q, 1e-9).unwrap();
            prop_assert!((t - theta).abs() < 1e-10);
            let dp = (p - phi).rem_euclid(TAU);
            prop_assert!(dp.min(TAU - dp) < 1e-10, "phi {} vs {}", p, phi);
        }

        #[test]
        fn frame_derivatives_preserve_unit_length(f in frame_strategy(), phi in 0.0..TAU,
                                                 pp in -2.0..2.0f64, k1 in 0.0..3.0f64, k2 in -2.0..2.0f64) {
            let (sp, cp) = phi.sin_cos();
            let a = -sp * f.n + cp * f.b;
            let m = cp * f.n + sp * f.b;
            let (mp, ap) = frame_derivatives(&f, phi, pp, k1, k2);
            prop_assert!(mp.inner(m).abs() < 1e-12);
            prop_assert!(ap.inner(a).abs() < 1e-12);
        }

        #[test]
        fn eq10_matches_component_norm(f in frame_strategy(), theta in 0.1..2.0f64, phi in 0.0..TAU,
                                       tp in -3.0..3.0f64, pp in -3.0..3.0f64,
                                       k1 in 0.0..3.0f64, k2 in -3.0..3.0f64) {
            let (qp, nsq) = q_prime_analytic(&f, theta, phi, tp, pp, k1, k2);
            prop_assert!((qp.norm_sq() - nsq).abs() < 1e-10 * (1.0 + nsq.abs()));
        }

        #[test]
        fn eq20_round_trips_through_n(n in 1e-3..10.0f64, mu in 0.1..(std::f64::consts::PI - 0.1)) {
            let (d, v0) = dv0_from_n_mu(n, mu).unwrap();
            let rel = curvature_relations(d, v0).unwrap();
            prop_assert!((rel.n - n).abs() < 1e-12 * n.max(1.0));
        }
    }
}
