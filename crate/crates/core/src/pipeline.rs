//! JSON run configurations, batch runs and file emission.
//!
//! A run integrates the directrix, synthesizes the angle track for the
//! configured system, builds the surface and verifies it. Outputs are a
//! per-sample CSV table, a JSON report and an optional Wavefront OBJ mesh.
//! Every writer is deterministic: identical configurations produce
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::frenet::{
    integrate_frenet, CurvatureFn, Frame, FrenetError, FrenetOptions, FrenetSeed, DEFAULT_S_RANGE, DEFAULT_STEP,
};
use crate::lorentz::LVec3;
use crate::ruled::{AngleTrack, RuledSurfaceGrid};
use crate::synthesis::{build_surface, geodesic_theta, integrate_system, SynthesisError, SynthesisParams, SystemKind};
use crate::verification::{apply_special_case, recompute_report, InvariantReport, SpecialCase, Tolerances, VerificationError};

pub const SCHEMA_VERSION: u32 = 1;

/// Seeds swept when no lists are given.
pub const DEFAULT_THETA0: [f64; 3] = [0.25, 0.5, 1.0];
pub const DEFAULT_PHI0: [f64; 4] = [
    0.0,
    std::f64::consts::FRAC_PI_2,
    std::f64::consts::PI,
    3.0 * std::f64::consts::FRAC_PI_2,
];

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid config at `{field}`: {message}")]
    ConfigInvalid { field: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("directrix: {0}")]
    Frenet(#[from] FrenetError),
    #[error("synthesis: {0}")]
    Synthesis(#[from] SynthesisError),
    #[error("verification: {0}")]
    Verification(#[from] VerificationError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl PipelineError {
    fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        PipelineError::ConfigInvalid {
            field: field.into(),
            message: message.into(),
        }
    }

    fn io(path: &Path, source: io::Error) -> Self {
        PipelineError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Arc length at which integration failed, when known.
    pub fn location(&self) -> Option<f64> {
        match *self {
            PipelineError::Frenet(
                FrenetError::NonPositiveCurvature { s, .. }
                | FrenetError::NonFiniteCurvature { s }
                | FrenetError::StepTooLarge { s, .. }
                | FrenetError::TorsionVanishes { s, .. },
            ) => Some(s),
            PipelineError::Synthesis(
                SynthesisError::ThetaSingularity { s, .. }
                | SynthesisError::Blowup { s }
                | SynthesisError::ParamDomain { s, .. }
                | SynthesisError::TorsionVanishes { s, .. },
            ) => Some(s),
            _ => None,
        }
    }

    pub fn is_config_error(&self) -> bool {
        matches!(self, PipelineError::ConfigInvalid { .. })
    }
}

/// A curvature-like input: a bare number is a constant.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureInput(pub CurvatureFn);

impl Serialize for CurvatureInput {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            CurvatureFn::Constant(c) => serializer.serialize_f64(c),
            ref f => f.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for CurvatureInput {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Function(CurvatureFn),
        }
        match Raw::deserialize(deserializer) {
            Ok(Raw::Number(c)) => Ok(CurvatureInput(CurvatureFn::Constant(c))),
            Ok(Raw::Function(f)) => Ok(CurvatureInput(f)),
            Err(_) => Err(serde::de::Error::custom(
                "expected a number or one of {\"constant\"|\"polynomial\"|\"sinusoid\"|\"samples\": ...}",
            )),
        }
    }
}

impl From<f64> for CurvatureInput {
    fn from(c: f64) -> Self {
        CurvatureInput(CurvatureFn::Constant(c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaRule {
    /// Constant seed keeping the directrix a geodesic (needs `n`).
    Geodesic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThetaSeed {
    Value(f64),
    Rule(ThetaRule),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialFrame {
    pub position: LVec3,
    pub t: LVec3,
    pub n: LVec3,
    pub b: LVec3,
}

impl From<InitialFrame> for FrenetSeed {
    fn from(f: InitialFrame) -> Self {
        FrenetSeed {
            position: f.position,
            frame: Frame { t: f.t, n: f.n, b: f.b },
        }
    }
}

fn default_s_range() -> [f64; 2] {
    [DEFAULT_S_RANGE.0, DEFAULT_S_RANGE.1]
}

fn default_step() -> f64 {
    DEFAULT_STEP
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectrixConfig {
    pub k1: CurvatureInput,
    pub k2: CurvatureInput,
    #[serde(default = "default_s_range")]
    pub s_range: [f64; 2],
    #[serde(default = "default_step")]
    pub step: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_frame: Option<InitialFrame>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<CurvatureInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v0: Option<CurvatureInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<CurvatureInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta0: Option<ThetaSeed>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi0: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshConfig {
    pub v_range: [f64; 2],
    pub v_samples: usize,
    pub path: PathBuf,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputsConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mesh: Option<MeshConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report_path: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub directrix: DirectrixConfig,
    pub system: SystemKind,
    pub params: ParamsConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<SpecialCase>,
    #[serde(default)]
    pub outputs: OutputsConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
}

/// Command-line overrides of configured numerics.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Overrides {
    pub step: Option<f64>,
    pub tol_rel: Option<f64>,
    pub tol_abs: Option<f64>,
}

impl RunConfig {
    /// Parses and validates a JSON document. Errors name the offending field.
    pub fn from_json_str(text: &str) -> Result<RunConfig, PipelineError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            PipelineError::invalid(field, e.into_inner().to_string())
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<RunConfig, PipelineError> {
        let text = fs::read_to_string(path).map_err(|e| PipelineError::io(path, e))?;
        RunConfig::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> Result<String, PipelineError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn apply_overrides(&mut self, o: &Overrides) -> Result<(), PipelineError> {
        if let Some(step) = o.step {
            self.directrix.step = step;
        }
        if let Some(rel) = o.tol_rel {
            self.tolerances.rel = rel;
        }
        if let Some(abs) = o.tol_abs {
            self.tolerances.abs = abs;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(PipelineError::invalid(
                "schema_version",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema_version),
            ));
        }
        let d = &self.directrix;
        if !(d.step.is_finite() && d.step > 0.0) {
            return Err(PipelineError::invalid("directrix.step", "must be positive and finite"));
        }
        let [s0, s1] = d.s_range;
        if !(s0.is_finite() && s1.is_finite() && s1 > s0) {
            return Err(PipelineError::invalid("directrix.s_range", "need finite s0 < s1"));
        }
        if let Some(name) = self.synthesis_template().missing_for(self.system) {
            return Err(PipelineError::invalid(
                format!("params.{name}"),
                format!("required by system `{}`", self.system.name()),
            ));
        }
        if self.params.theta0 == Some(ThetaSeed::Rule(ThetaRule::Geodesic)) && self.params.n.is_none() {
            return Err(PipelineError::invalid("params.n", "the geodesic seed rule needs n"));
        }
        if let Some(m) = &self.outputs.mesh {
            if m.v_samples < 2 {
                return Err(PipelineError::invalid("outputs.mesh.v_samples", "need at least 2"));
            }
            if !(m.v_range[0].is_finite() && m.v_range[1].is_finite() && m.v_range[1] > m.v_range[0]) {
                return Err(PipelineError::invalid("outputs.mesh.v_range", "need finite v_min < v_max"));
            }
        }
        for (name, v) in [("tolerances.rel", self.tolerances.rel), ("tolerances.abs", self.tolerances.abs)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(PipelineError::invalid(name, "must be positive and finite"));
            }
        }
        Ok(())
    }

    // Parameters with θ₀ left unresolved when it is given by a rule.
    fn synthesis_template(&self) -> SynthesisParams {
        let p = &self.params;
        let f = |x: &Option<CurvatureInput>| x.as_ref().map(|c| c.0.clone());
        SynthesisParams {
            d: f(&p.d),
            v0: f(&p.v0),
            n: f(&p.n),
            mu: p.mu,
            c: p.c,
            theta0: p.theta0.map(|t| match t {
                ThetaSeed::Value(v) => v,
                ThetaSeed::Rule(_) => f64::NAN,
            }),
            phi0: p.phi0,
            step: Some(self.directrix.step),
        }
    }

    /// Synthesis parameters with any seed rule evaluated at the grid start.
    pub fn synthesis_params(&self) -> Result<SynthesisParams, PipelineError> {
        let mut params = self.synthesis_template();
        if let Some(ThetaSeed::Rule(ThetaRule::Geodesic)) = self.params.theta0 {
            let s0 = self.directrix.s_range[0];
            let n = params.n.as_ref().map(|n| n.eval(s0)).unwrap_or(f64::NAN);
            let k1 = self.directrix.k1.0.eval(s0);
            let k2 = self.directrix.k2.0.eval(s0);
            params.theta0 = Some(geodesic_theta(n, k1, k2)?);
        }
        Ok(params)
    }

    pub fn seed(&self) -> FrenetSeed {
        self.directrix.initial_frame.map(Into::into).unwrap_or_default()
    }

    /// Copy of this configuration with a different angle seed.
    pub fn with_seed(&self, theta0: f64, phi0: f64) -> RunConfig {
        let mut c = self.clone();
        c.params.theta0 = Some(ThetaSeed::Value(theta0));
        c.params.phi0 = Some(phi0);
        c
    }
}

/// Everything produced by one run.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub params: SynthesisParams,
    pub track: AngleTrack,
    pub surface: RuledSurfaceGrid,
    pub report: InvariantReport,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.report.pass
    }
}

/// Directrix → synthesis → surface → verification.
pub fn run_config(config: &RunConfig) -> Result<RunOutcome, PipelineError> {
    config.validate()?;
    let d = &config.directrix;
    let directrix = integrate_frenet(
        &d.k1.0,
        &d.k2.0,
        &config.seed(),
        (d.s_range[0], d.s_range[1]),
        d.step,
        &FrenetOptions::default(),
    )?;
    let params = config.synthesis_params()?;
    let track = integrate_system(config.system, &params, &directrix)?;
    let surface = build_surface(&track, &directrix)?;
    let mut report = recompute_report(&surface, &params, config.system, &config.tolerances)?;
    for case in &config.checks {
        apply_special_case(&mut report, &surface, case)?;
    }
    Ok(RunOutcome {
        params,
        track,
        surface,
        report,
    })
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub const CSV_HEADER: [&str; 18] = [
    "s",
    "theta",
    "phi",
    "k1",
    "k2",
    "q1",
    "q2",
    "q3",
    "d",
    "v0",
    "gaussian_curvature",
    "mu",
    "d_prescribed",
    "v0_prescribed",
    "d_error",
    "v0_error",
    "q_prime_norm",
    "cylindrical",
];

/// Per-sample table with full double precision.
pub fn write_csv<W: Write>(outcome: &RunOutcome, writer: W) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER)?;
    let track = outcome.track.samples();
    let directrix = outcome.surface.directrix();
    for (i, row) in outcome.report.rows.iter().enumerate() {
        let q = outcome.surface.rulings()[i];
        let inv = row.invariants;
        let err = |m: Option<f64>, t: Option<f64>| m.zip(t).map(|(m, t)| (m - t).abs());
        w.write_record([
            fmt_f64(row.s),
            fmt_f64(track[i].theta),
            fmt_f64(track[i].phi),
            fmt_f64(directrix.samples[i].k1),
            fmt_f64(directrix.samples[i].k2),
            fmt_f64(q.x1),
            fmt_f64(q.x2),
            fmt_f64(q.x3),
            fmt_opt(inv.map(|x| x.d)),
            fmt_opt(inv.map(|x| x.v0)),
            fmt_opt(inv.map(|x| x.gaussian)),
            fmt_opt(inv.map(|x| x.mu_chasles)),
            fmt_opt(row.d_prescribed),
            fmt_opt(row.v0_prescribed),
            fmt_opt(err(inv.map(|x| x.d), row.d_prescribed)),
            fmt_opt(err(inv.map(|x| x.v0), row.v0_prescribed)),
            fmt_f64(row.q_prime_norm),
            (inv.is_none()).to_string(),
        ])?;
    }
    w.flush().map_err(|e| PipelineError::io(Path::new("<csv>"), e))?;
    Ok(())
}

/// JSON document written as the run report.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport<'a> {
    pub schema_version: u32,
    pub system: SystemKind,
    pub params: &'a ParamsConfig,
    pub report: &'a InvariantReport,
}

pub fn report_json(config: &RunConfig, outcome: &RunOutcome) -> Result<String, PipelineError> {
    let doc = RunReport {
        schema_version: SCHEMA_VERSION,
        system: config.system,
        params: &config.params,
        report: &outcome.report,
    };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

/// Comment lines opening an OBJ file.
pub fn mesh_header(config: &RunConfig) -> Result<String, PipelineError> {
    Ok(format!(
        "# timelike ruled surface r(s,v) = k(s) + v q(s), system {}, params {}\n\
         # Minkowski coordinates (x1 timelike) written as Euclidean triples; viewer distances are Euclidean, not Lorentzian\n",
        config.system.name(),
        serde_json::to_string(&config.params)?,
    ))
}

/// Writes the sampled surface as a Wavefront OBJ: vertices row-major in `s`
/// then `v`, one quad per lattice cell.
pub fn write_obj<W: Write>(
    surface: &RuledSurfaceGrid,
    v_range: [f64; 2],
    v_samples: usize,
    header: &str,
    mut w: W,
) -> io::Result<()> {
    if v_samples < 2 {
        return Err(io::Error::new(io::ErrorKind::InvalidInput, "v_samples must be at least 2"));
    }
    let ns = surface.len();
    let dv = (v_range[1] - v_range[0]) / (v_samples - 1) as f64;
    let mut buf = String::with_capacity(ns * v_samples * 48);
    buf.push_str(header);
    let positions = surface.directrix().positions();
    for (k, q) in positions.iter().zip(surface.rulings()) {
        for j in 0..v_samples {
            let v = v_range[0] + j as f64 * dv;
            let r = *k + v * *q;
            let _ = writeln!(buf, "v {} {} {}", r.x1, r.x2, r.x3);
        }
    }
    for i in 0..ns.saturating_sub(1) {
        for j in 0..v_samples - 1 {
            let a = i * v_samples + j + 1;
            let b = a + v_samples;
            let _ = writeln!(buf, "f {} {} {} {}", a, b, b + 1, a + 1);
        }
    }
    w.write_all(buf.as_bytes())
}

pub fn export_mesh(
    surface: &RuledSurfaceGrid,
    mesh: &MeshConfig,
    header: &str,
    path: &Path,
) -> Result<(), PipelineError> {
    let mut bytes = Vec::new();
    write_obj(surface, mesh.v_range, mesh.v_samples, header, &mut bytes).map_err(|e| PipelineError::io(path, e))?;
    write_file(path, &bytes)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), PipelineError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| PipelineError::io(parent, e))?;
    }
    fs::write(path, bytes).map_err(|e| PipelineError::io(path, e))
}

fn resolve(out_dir: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        out_dir.join(p)
    }
}

/// Which configured outputs to write.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    All,
    MeshOnly,
}

/// Writes configured outputs; relative paths resolve against `out_dir`.
pub fn write_outputs(
    config: &RunConfig,
    outcome: &RunOutcome,
    out_dir: &Path,
    emit: Emit,
) -> Result<Vec<PathBuf>, PipelineError> {
    let mut written = Vec::new();
    let o = &config.outputs;
    if emit == Emit::All {
        if let Some(p) = &o.csv_path {
            let path = resolve(out_dir, p);
            let mut bytes = Vec::new();
            write_csv(outcome, &mut bytes)?;
            write_file(&path, &bytes)?;
            written.push(path);
        }
        if let Some(p) = &o.report_path {
            let path = resolve(out_dir, p);
            write_file(&path, report_json(config, outcome)?.as_bytes())?;
            written.push(path);
        }
    }
    if let Some(m) = &o.mesh {
        let path = resolve(out_dir, &m.path);
        export_mesh(&outcome.surface, m, &mesh_header(config)?, &path)?;
        written.push(path);
    }
    Ok(written)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }
}

/// One seed of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta0: f64,
    pub phi0: f64,
    pub verdict: Verdict,
    pub max_rel_error: Option<f64>,
    pub max_abs_error: Option<f64>,
    pub max_defect: Option<f64>,
    pub failure_s: Option<f64>,
    pub message: String,
}

fn summarize(theta0: f64, phi0: f64, result: Result<RunOutcome, PipelineError>) -> SweepRow {
    match result {
        Ok(outcome) => {
            let r = &outcome.report;
            let fold = |it: &mut dyn Iterator<Item = f64>| it.fold(None, |a: Option<f64>, x| Some(a.map_or(x, |a| a.max(x))));
            let failed: Vec<&str> = r
                .quantities
                .iter()
                .filter(|q| !q.pass)
                .map(|q| q.name.as_str())
                .chain(r.defects.iter().filter(|(_, d)| !d.pass).map(|(k, _)| k.as_str()))
                .collect();
            SweepRow {
                theta0,
                phi0,
                verdict: if r.pass { Verdict::Pass } else { Verdict::Fail },
                max_rel_error: fold(&mut r.quantities.iter().map(|q| q.max_rel_error)),
                max_abs_error: fold(&mut r.quantities.iter().map(|q| q.max_abs_error)),
                max_defect: fold(&mut r.defects.values().map(|d| d.value)),
                failure_s: None,
                message: if failed.is_empty() {
                    String::new()
                } else {
                    format!("out of tolerance: {}", failed.join(" "))
                },
            }
        }
        Err(e) => SweepRow {
            theta0,
            phi0,
            verdict: Verdict::Error,
            max_rel_error: None,
            max_abs_error: None,
            max_defect: None,
            failure_s: e.location(),
            message: e.to_string(),
        },
    }
}

/// Runs every `(θ₀, φ₀)` combination independently, in `θ₀`-major order.
/// A failing seed produces a failing row and never aborts the sweep.
pub fn sweep_grid(base: &RunConfig, theta0: &[f64], phi0: &[f64]) -> Vec<SweepRow> {
    let seeds: Vec<(f64, f64)> = theta0.iter().flat_map(|&t| phi0.iter().map(move |&p| (t, p))).collect();
    seeds
        .par_iter()
        .map(|&(t, p)| summarize(t, p, run_config(&base.with_seed(t, p))))
        .collect()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], writer: W) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "theta0",
        "phi0",
        "verdict",
        "max_rel_error",
        "max_abs_error",
        "max_defect",
        "failure_s",
        "message",
    ])?;
    for r in rows {
        w.write_record([
            fmt_f64(r.theta0),
            fmt_f64(r.phi0),
            r.verdict.as_str().to_string(),
            fmt_opt(r.max_rel_error),
            fmt_opt(r.max_abs_error),
            fmt_opt(r.max_defect),
            fmt_opt(r.failure_s),
            r.message.clone(),
        ])?;
    }
    w.flush().map_err(|e| PipelineError::io(Path::new("<csv>"), e))?;
    Ok(())
}
