//! Natural cubic spline through sampled `(s, value)` pairs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplineError {
    #[error("need at least 2 samples, got {0}")]
    TooFewPoints(usize),
    #[error("s and values differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("sample abscissae must be strictly increasing and finite")]
    NotIncreasing,
    #[error("sample values must be finite")]
    NonFinite,
}

/// Raw serialized form of a sampled function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampledRaw {
    pub s: Vec<f64>,
    pub values: Vec<f64>,
}

/// Interpolant with natural end conditions (zero second derivative at both
/// ends). Outside the sampled range the end cubic is continued.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SampledRaw", into = "SampledRaw")]
pub struct NaturalSpline {
    s: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl TryFrom<SampledRaw> for NaturalSpline {
    type Error = SplineError;
    fn try_from(raw: SampledRaw) -> Result<Self, SplineError> {
        NaturalSpline::new(raw.s, raw.values)
    }
}

impl From<NaturalSpline> for SampledRaw {
    fn from(sp: NaturalSpline) -> Self {
        SampledRaw {
            s: sp.s,
            values: sp.y,
        }
    }
}

impl NaturalSpline {
    pub fn new(s: Vec<f64>, y: Vec<f64>) -> Result<Self, SplineError> {
        if s.len() != y.len() {
            return Err(SplineError::LengthMismatch(s.len(), y.len()));
        }
        let n = s.len();
        if n < 2 {
            return Err(SplineError::TooFewPoints(n));
        }
        if s.iter().any(|v| !v.is_finite()) || s.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SplineError::NotIncreasing);
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(SplineError::NonFinite);
        }
        let m = second_derivatives(&s, &y);
        Ok(NaturalSpline { s, y, m })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.s[0], self.s[self.s.len() - 1])
    }

    fn segment(&self, x: f64) -> usize {
        let n = self.s.len();
        match self.s.partition_point(|&v| v <= x) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let h = self.s[i + 1] - self.s[i];
        let a = (self.s[i + 1] - x) / h;
        let b = (x - self.s[i]) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let h = self.s[i + 1] - self.s[i];
        let a = (self.s[i + 1] - x) / h;
        let b = (x - self.s[i]) / h;
        (self.y[i + 1] - self.y[i]) / h
            + (-(3.0 * a * a - 1.0) * self.m[i] + (3.0 * b * b - 1.0) * self.m[i + 1]) * h / 6.0
    }
}

// Tridiagonal solve (Thomas) for the interior second derivatives.
fn second_derivatives(s: &[f64], y: &[f64]) -> Vec<f64> {
    let n = s.len();
    let mut m = vec![0.0; n];
    if n < 3 {
        return m;
    }
    let k = n - 2;
    let mut diag = vec![0.0; k];
    let mut upper = vec![0.0; k];
    let mut rhs = vec![0.0; k];
    for j in 0..k {
        let i = j + 1;
        let h0 = s[i] - s[i - 1];
        let h1 = s[i + 1] - s[i];
        diag[j] = 2.0 * (h0 + h1);
        upper[j] = h1;
        rhs[j] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
    }
    for j in 1..k {
        let lower = s[j + 1] - s[j];
        let w = lower / diag[j - 1];
        diag[j] -= w * upper[j - 1];
        rhs[j] -= w * rhs[j - 1];
    }
    m[k] = rhs[k - 1] / diag[k - 1];
    for j in (0..k - 1).rev() {
        m[j + 1] = (rhs[j] - upper[j] * m[j + 2]) / diag[j];
    }
    m
}
