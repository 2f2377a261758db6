//! Independent recomputation of surface invariants.
//!
//! Everything here works from the raw `(k_i, q_i)` samples and the directrix
//! frame. Angle-track provenance attached to a surface is never read, so a
//! faulty synthesis cannot certify itself.
//!
//! Headline errors are maxima over interior samples. Endpoint derivatives
//! are one-sided and of lower accuracy, so they are reported separately.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frenet::CurvatureFn;
use crate::lorentz::{coord_det, LVec3};
use crate::ruled::{
    dv0_from_n_mu, fd_derivative, invariants_numeric, surface_normal, InvariantSample, RuledError,
    RuledSurfaceGrid, SurfaceInvariants,
};
use crate::synthesis::{helix_relation_defect, SynthesisError, SynthesisParams, SystemKind};

/// Guards the normalization of the line-of-curvature determinant.
const NORMALIZATION_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Relative tolerance for prescribed nonzero quantities (d, v0, K).
    #[serde(default = "default_rel")]
    pub rel: f64,
    /// Absolute tolerance for quantities prescribed to vanish and for
    /// algebraic defects.
    #[serde(default = "default_abs")]
    pub abs: f64,
}

fn default_rel() -> f64 {
    1e-4
}

fn default_abs() -> f64 {
    1e-6
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rel: default_rel(),
            abs: default_abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerificationError {
    #[error(transparent)]
    Ruled(#[from] RuledError),
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareMode {
    Relative,
    Absolute,
}

/// Comparison of one recomputed quantity against its prescription.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantityCheck {
    pub name: String,
    pub mode: CompareMode,
    pub tolerance: f64,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub mean_error: f64,
    pub endpoint_max_abs_error: f64,
    pub samples: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DefectCheck {
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// One row of per-sample output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub s: f64,
    pub invariants: Option<InvariantSample>,
    pub d_prescribed: Option<f64>,
    pub v0_prescribed: Option<f64>,
    pub q_prime_norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub system: SystemKind,
    pub tolerances: Tolerances,
    pub samples: usize,
    pub cylindrical_samples: usize,
    pub quantities: Vec<QuantityCheck>,
    pub defects: BTreeMap<String, DefectCheck>,
    /// Defects at the two grid ends, informational only.
    pub endpoint_defects: BTreeMap<String, f64>,
    pub rows: Vec<SampleRow>,
    pub pass: bool,
}

impl InvariantReport {
    pub fn add_defect(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        let pass = value.is_finite() && value <= tolerance;
        self.defects.insert(name.into(), DefectCheck { value, tolerance, pass });
        self.refresh_verdict();
    }

    pub fn quantity(&self, name: &str) -> Option<&QuantityCheck> {
        self.quantities.iter().find(|q| q.name == name)
    }

    fn refresh_verdict(&mut self) {
        self.pass = self.quantities.iter().all(|q| q.pass) && self.defects.values().all(|d| d.pass);
    }
}

/// Values a kind prescribes at arc length `s`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Prescribed {
    d: Option<f64>,
    v0: Option<f64>,
    gaussian: Option<f64>,
}

fn prescribed_at(
    kind: SystemKind,
    params: &SynthesisParams,
    s: f64,
    k2: f64,
) -> Result<Prescribed, VerificationError> {
    let eval = |f: &Option<CurvatureFn>, name: &'static str| {
        f.as_ref().map(|f| f.eval(s)).ok_or(SynthesisError::MissingParam(name))
    };
    let from_n_mu = |n: f64, mu: f64| -> Result<Prescribed, VerificationError> {
        let (d, v0) = dv0_from_n_mu(n, mu)?;
        Ok(Prescribed {
            d: Some(d),
            v0: Some(v0),
            gaussian: Some(1.0 / (n * n)),
        })
    };
    let mu = || params.mu.ok_or(SynthesisError::MissingParam("mu"));
    Ok(match kind {
        SystemKind::GeneralDV0 => Prescribed {
            d: Some(eval(&params.d, "d")?),
            v0: Some(eval(&params.v0, "v0")?),
            gaussian: None,
        },
        SystemKind::StrictionLine => Prescribed {
            d: Some(eval(&params.d, "d")?),
            v0: Some(0.0),
            gaussian: None,
        },
        SystemKind::Developable => Prescribed {
            d: Some(0.0),
            v0: Some(eval(&params.v0, "v0")?),
            gaussian: None,
        },
        SystemKind::CurvatureAngle => from_n_mu(eval(&params.n, "n")?, mu()?)?,
        SystemKind::AsymptoticLine => from_n_mu(-1.0 / k2, mu()?)?,
        SystemKind::LineOfCurvature => {
            let n = eval(&params.n, "n")?;
            Prescribed {
                gaussian: Some(1.0 / (n * n)),
                ..Prescribed::default()
            }
        }
        SystemKind::Cylinder => Prescribed::default(),
    })
}

struct Accumulator {
    name: &'static str,
    prescribed: Vec<(usize, f64, f64)>,
}

impl Accumulator {
    fn new(name: &'static str) -> Self {
        Accumulator {
            name,
            prescribed: Vec::new(),
        }
    }

    fn push(&mut self, i: usize, measured: f64, target: f64) {
        self.prescribed.push((i, measured, target));
    }

    fn finish(self, last: usize, tol: &Tolerances) -> Option<QuantityCheck> {
        if self.prescribed.is_empty() {
            return None;
        }
        let max_target = self.prescribed.iter().map(|p| p.2.abs()).fold(0.0, f64::max);
        let mode = if max_target <= tol.abs {
            CompareMode::Absolute
        } else {
            CompareMode::Relative
        };
        let (mut max_abs, mut max_rel, mut sum, mut count, mut endpoint) = (0.0f64, 0.0f64, 0.0, 0usize, 0.0f64);
        for &(i, m, t) in &self.prescribed {
            let err = (m - t).abs();
            if i == 0 || i == last {
                endpoint = endpoint.max(err);
                continue;
            }
            max_abs = max_abs.max(err);
            let rel = if t != 0.0 { err / t.abs() } else { f64::INFINITY };
            max_rel = max_rel.max(if err == 0.0 { 0.0 } else { rel });
            sum += err;
            count += 1;
        }
        let (headline, tolerance) = match mode {
            CompareMode::Relative => (max_rel, tol.rel),
            CompareMode::Absolute => (max_abs, tol.abs),
        };
        Some(QuantityCheck {
            name: self.name.to_string(),
            mode,
            tolerance,
            max_abs_error: max_abs,
            max_rel_error: max_rel,
            mean_error: if count > 0 { sum / count as f64 } else { 0.0 },
            endpoint_max_abs_error: endpoint,
            samples: count,
            pass: count > 0 && headline.is_finite() && headline <= tolerance,
        })
    }
}

/// Recomputes invariants from raw samples and compares them with what
/// `kind` prescribes.
///
/// Cylinder surfaces skip the `d`/`v0` comparison and report the largest
/// finite-difference `|q′|` (coordinate norm, which bounds the Lorentz norm)
/// as the `q_prime_max` defect. Failed comparisons set the verdict; only a
/// surface without any usable sample is an error.
pub fn recompute_report(
    surface: &RuledSurfaceGrid,
    prescription: &SynthesisParams,
    kind: SystemKind,
    tolerances: &Tolerances,
) -> Result<InvariantReport, VerificationError> {
    let h = surface.step();
    let q_prime = fd_derivative(surface.rulings(), h);
    let last = surface.len() - 1;
    let interior_q_prime_max = q_prime[1..last].iter().map(|v| v.euclid_norm()).fold(0.0, f64::max);

    let invariants = if kind == SystemKind::Cylinder {
        SurfaceInvariants {
            samples: vec![None; surface.len()],
        }
    } else {
        invariants_numeric(surface, h)?
    };

    let mut acc_d = Accumulator::new("d");
    let mut acc_v0 = Accumulator::new("v0");
    let mut acc_k = Accumulator::new("gaussian_curvature");
    let mut rows = Vec::with_capacity(surface.len());
    for (i, inv) in invariants.samples.iter().enumerate() {
        let s = surface.s(i);
        let pre = prescribed_at(kind, prescription, s, surface.directrix().samples[i].k2)?;
        if let Some(x) = inv {
            if let Some(t) = pre.d {
                acc_d.push(i, x.d, t);
            }
            if let Some(t) = pre.v0 {
                acc_v0.push(i, x.v0, t);
            }
            if let Some(t) = pre.gaussian {
                acc_k.push(i, x.gaussian, t);
            }
        }
        rows.push(SampleRow {
            s,
            invariants: *inv,
            d_prescribed: pre.d,
            v0_prescribed: pre.v0,
            q_prime_norm: q_prime[i].euclid_norm(),
        });
    }
    let quantities: Vec<QuantityCheck> = [acc_d, acc_v0, acc_k]
        .into_iter()
        .filter_map(|a| a.finish(last, tolerances))
        .collect();

    let mut report = InvariantReport {
        system: kind,
        tolerances: *tolerances,
        samples: surface.len(),
        cylindrical_samples: invariants.cylindrical_count(),
        quantities,
        defects: BTreeMap::new(),
        endpoint_defects: BTreeMap::new(),
        rows,
        pass: false,
    };
    if kind == SystemKind::Cylinder {
        report.add_defect("q_prime_max", interior_q_prime_max, tolerances.abs);
    } else {
        report.refresh_verdict();
    }
    Ok(report)
}

/// Characterizations of the directrix on the surface.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpecialCase {
    /// Surface normal parallel to the principal normal.
    Geodesic,
    /// Surface normal along the binormal.
    AsymptoticLine,
    /// Surface normals along the directrix sweep a developable surface.
    LineOfCurvature,
    /// `k₁/k₂ = sinh θ · cot μ` for constant `θ`, `μ`.
    Helix { theta: f64, mu: f64 },
}

impl SpecialCase {
    pub fn name(&self) -> &'static str {
        match self {
            SpecialCase::Geodesic => "geodesic",
            SpecialCase::AsymptoticLine => "asymptotic_line",
            SpecialCase::LineOfCurvature => "line_of_curvature",
            SpecialCase::Helix { .. } => "helix",
        }
    }
}

fn normals_along_directrix(surface: &RuledSurfaceGrid, h: f64) -> Result<Vec<LVec3>, RuledError> {
    (0..surface.len()).map(|i| surface_normal(surface, i, 0.0, h)).collect()
}

// Samples within `band` of either end are reported as endpoint values.
fn split_max(values: &[f64], band: usize) -> (f64, f64) {
    let n = values.len();
    let band = band.min((n - 1) / 2);
    let interior = values[band..n - band].iter().copied().fold(0.0, f64::max);
    let ends = values[..band].iter().chain(&values[n - band..]).copied().fold(0.0, f64::max);
    (interior, ends)
}

/// Defects for one special case, keyed `<case>` (interior maximum) and
/// `<case>_endpoints`.
pub fn special_case_defects(
    surface: &RuledSurfaceGrid,
    case: &SpecialCase,
    h: f64,
) -> Result<BTreeMap<String, f64>, VerificationError> {
    let name = case.name();
    let mut out = BTreeMap::new();
    // m′ differences m, itself built from differenced positions, so the
    // samples next to each end inherit one-sided error as well
    let band = if matches!(case, SpecialCase::LineOfCurvature) { 2 } else { 1 };
    let per_sample: Vec<f64> = match case {
        SpecialCase::Helix { theta, mu } => {
            out.insert(name.to_string(), helix_relation_defect(*theta, *mu, surface.directrix())?);
            return Ok(out);
        }
        SpecialCase::Geodesic => {
            let m = normals_along_directrix(surface, h)?;
            m.iter()
                .zip(&surface.directrix().samples)
                .map(|(m, p)| 1.0 - m.inner(p.frame.n).abs())
                .collect()
        }
        SpecialCase::AsymptoticLine => {
            let m = normals_along_directrix(surface, h)?;
            m.iter()
                .zip(&surface.directrix().samples)
                .map(|(m, p)| m.inner(p.frame.n).abs())
                .collect()
        }
        SpecialCase::LineOfCurvature => {
            let m = normals_along_directrix(surface, h)?;
            let m_prime = fd_derivative(&m, h);
            let k_prime = fd_derivative(&surface.directrix().positions(), h);
            (0..m.len())
                .map(|i| {
                    let det = coord_det(k_prime[i], m[i], m_prime[i]).abs();
                    let scale = k_prime[i].euclid_norm() * m[i].euclid_norm() * m_prime[i].euclid_norm();
                    det / (scale + NORMALIZATION_EPS)
                })
                .collect()
        }
    };
    let (interior, ends) = split_max(&per_sample, band);
    out.insert(name.to_string(), interior);
    out.insert(format!("{name}_endpoints"), ends);
    Ok(out)
}

/// Runs a special-case check and records its headline defect in `report`.
pub fn apply_special_case(
    report: &mut InvariantReport,
    surface: &RuledSurfaceGrid,
    case: &SpecialCase,
) -> Result<(), VerificationError> {
    let defects = special_case_defects(surface, case, surface.step())?;
    let tol = report.tolerances.abs;
    for (k, v) in defects {
        if k.ends_with("_endpoints") {
            report.endpoint_defects.insert(k, v);
        } else {
            report.add_defect(k, v, tol);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::{integrate_frenet, FrenetOptions, FrenetSeed};
    use crate::synthesis::{build_surface, integrate_system};

    fn general_surface(step: f64) -> (RuledSurfaceGrid, SynthesisParams) {
        let c = integrate_frenet(&1.0.into(), &0.1.into(), &FrenetSeed::default(), (0.0, 0.5), step, &FrenetOptions::default())
            .unwrap();
        let p = SynthesisParams {
            d: Some(0.5.into()),
            v0: Some(0.3.into()),
            theta0: Some(1.0),
            phi0: Some(0.2),
            ..Default::default()
        };
        let t = integrate_system(SystemKind::GeneralDV0, &p, &c).unwrap();
        (build_surface(&t, &c).unwrap(), p)
    }

    #[test]
    fn general_round_trip_passes() {
        let (s, p) = general_surface(1e-3);
        let r = recompute_report(&s, &p, SystemKind::GeneralDV0, &Tolerances::default()).unwrap();
        assert!(r.pass, "{:#?}", r.quantities);
        assert_eq!(r.quantities.len(), 2);
        assert!(r.quantity("d").unwrap().max_rel_error < 1e-5);
    }

    #[test]
    fn oracle_rejects_noisy_rulings() {
        let (s, p) = general_surface(1e-3);
        // deterministic pseudo-noise of amplitude 1e-3, re-normalized
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut noise = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state as f64 / u64::MAX as f64 - 0.5) * 2e-3
        };
        let noisy: Vec<LVec3> = s
            .rulings()
            .iter()
            .map(|q| {
                let v = *q + LVec3::new(0.0, noise(), noise());
                v / v.norm()
            })
            .collect();
        let noisy = s.with_rulings(noisy).unwrap();
        let r = recompute_report(&noisy, &p, SystemKind::GeneralDV0, &Tolerances::default()).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn cylinder_report_uses_q_prime_defect() {
        let c = integrate_frenet(&1.0.into(), &0.0.into(), &FrenetSeed::default(), (0.0, 1.0), 1e-3, &FrenetOptions::default())
            .unwrap();
        let p = SynthesisParams {
            theta0: Some(1.0),
            phi0: Some(0.5),
            ..Default::default()
        };
        let t = integrate_system(SystemKind::Cylinder, &p, &c).unwrap();
        let s = build_surface(&t, &c).unwrap();
        let r = recompute_report(&s, &p, SystemKind::Cylinder, &Tolerances::default()).unwrap();
        assert!(r.quantities.is_empty());
        assert!(r.defects["q_prime_max"].value < 1e-6);
        assert!(r.pass);
        assert_eq!(
            recompute_report(&s, &p, SystemKind::GeneralDV0, &Tolerances::default()),
            Err(VerificationError::Ruled(RuledError::AllCylindrical))
        );
    }

    #[test]
    fn line_of_curvature_negative_control() {
        let (s, _) = general_surface(1e-3);
        let d = special_case_defects(&s, &SpecialCase::LineOfCurvature, 1e-3).unwrap();
        assert!(d["line_of_curvature"] > 1e-3, "{d:?}");
        let g = special_case_defects(&s, &SpecialCase::Geodesic, 1e-3).unwrap();
        assert!(g["geodesic"] > 1e-4, "{g:?}");
    }

    #[test]
    fn tolerances_deserialize_with_defaults() {
        let t: Tolerances = serde_json::from_str(r#"{"rel": 1e-3}"#).unwrap();
        assert_eq!(t, Tolerances { rel: 1e-3, abs: 1e-6 });
    }
}
