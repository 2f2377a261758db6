//! Vector algebra in Minkowski 3-space with signature (−,+,+).
//!
//! The first component is the timelike axis. The cross product follows the
//! component expansion
//! `x × y = (x₂y₃ − x₃y₂, x₁y₃ − x₃y₁, x₂y₁ − x₁y₂)`, which satisfies
//! `⟨x × y, z⟩ = −det[x, y, z]` and is Lorentz-orthogonal to both factors.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default tolerance for causal classification and angle dispatch.
pub const DEFAULT_EPS: f64 = 1e-9;

/// A vector of Minkowski 3-space. `x1` is the timelike coordinate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct LVec3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl LVec3 {
    pub const ZERO: LVec3 = LVec3::new(0.0, 0.0, 0.0);
    pub const E1: LVec3 = LVec3::new(1.0, 0.0, 0.0);
    pub const E2: LVec3 = LVec3::new(0.0, 1.0, 0.0);
    pub const E3: LVec3 = LVec3::new(0.0, 0.0, 1.0);

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        LVec3 { x1, x2, x3 }
    }

    /// Lorentzian inner product `−x₁y₁ + x₂y₂ + x₃y₃`.
    #[inline]
    pub fn inner(self, other: LVec3) -> f64 {
        -self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.inner(self)
    }

    /// `sqrt(|⟨v,v⟩|)`; zero for null vectors.
    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().abs().sqrt()
    }

    #[inline]
    pub fn cross(self, other: LVec3) -> LVec3 {
        LVec3::new(
            self.x2 * other.x3 - self.x3 * other.x2,
            self.x1 * other.x3 - self.x3 * other.x1,
            self.x2 * other.x1 - self.x1 * other.x2,
        )
    }

    /// Norm of the coordinate triple in the Euclidean sense.
    #[inline]
    pub fn euclid_norm(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    #[inline]
    pub fn max_abs(self) -> f64 {
        self.x1.abs().max(self.x2.abs()).max(self.x3.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }
}

impl From<[f64; 3]> for LVec3 {
    fn from(a: [f64; 3]) -> Self {
        LVec3::new(a[0], a[1], a[2])
    }
}

impl From<LVec3> for [f64; 3] {
    fn from(v: LVec3) -> Self {
        v.to_array()
    }
}

impl fmt::Display for LVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x1, self.x2, self.x3)
    }
}

impl Index<usize> for LVec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x1,
            1 => &self.x2,
            2 => &self.x3,
            _ => panic!("LVec3 index {i} out of range"),
        }
    }
}

impl Add for LVec3 {
    type Output = LVec3;
    fn add(self, o: LVec3) -> LVec3 {
        LVec3::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl AddAssign for LVec3 {
    fn add_assign(&mut self, o: LVec3) {
        *self = *self + o;
    }
}

impl Sub for LVec3 {
    type Output = LVec3;
    fn sub(self, o: LVec3) -> LVec3 {
        LVec3::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl SubAssign for LVec3 {
    fn sub_assign(&mut self, o: LVec3) {
        *self = *self - o;
    }
}

impl Neg for LVec3 {
    type Output = LVec3;
    fn neg(self) -> LVec3 {
        LVec3::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for LVec3 {
    type Output = LVec3;
    fn mul(self, c: f64) -> LVec3 {
        LVec3::new(self.x1 * c, self.x2 * c, self.x3 * c)
    }
}

impl Mul<LVec3> for f64 {
    type Output = LVec3;
    fn mul(self, v: LVec3) -> LVec3 {
        v * self
    }
}

impl Div<f64> for LVec3 {
    type Output = LVec3;
    fn div(self, c: f64) -> LVec3 {
        LVec3::new(self.x1 / c, self.x2 / c, self.x3 / c)
    }
}

pub fn lorentz_inner(x: LVec3, y: LVec3) -> f64 {
    x.inner(y)
}

pub fn lorentz_norm(v: LVec3) -> f64 {
    v.norm()
}

pub fn lorentz_cross(x: LVec3, y: LVec3) -> LVec3 {
    x.cross(y)
}

/// Coordinate determinant of the matrix with rows `a`, `b`, `c`.
pub fn coord_det(a: LVec3, b: LVec3, c: LVec3) -> f64 {
    a.x1 * (b.x2 * c.x3 - b.x3 * c.x2) - a.x2 * (b.x1 * c.x3 - b.x3 * c.x1)
        + a.x3 * (b.x1 * c.x2 - b.x2 * c.x1)
}

/// Lorentzian mixed product `⟨x × y, z⟩`. Equals `−det[x, y, z]`.
pub fn mixed_product(x: LVec3, y: LVec3, z: LVec3) -> f64 {
    x.cross(y).inner(z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalClass {
    Spacelike,
    TimelikeFuture,
    TimelikePast,
    Null,
    Zero,
}

impl CausalClass {
    pub fn is_timelike(self) -> bool {
        matches!(self, CausalClass::TimelikeFuture | CausalClass::TimelikePast)
    }
}

/// Classifies `v` by the sign of `⟨v,v⟩`.
///
/// A vector whose coordinates are all below `eps` is `Zero`. Otherwise the
/// null band is relative, `|⟨v,v⟩| ≤ eps·|v|²` in the coordinate norm, so
/// `v` and `c·v` classify alike for any `c > 0` that keeps `c·v` out of the
/// zero band.
pub fn causal_character(v: LVec3, eps: f64) -> CausalClass {
    if v.max_abs() < eps {
        return CausalClass::Zero;
    }
    let e2 = v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3;
    let q = v.norm_sq();
    if q.abs() <= eps * e2 {
        CausalClass::Null
    } else if q > 0.0 {
        CausalClass::Spacelike
    } else if v.x1 > 0.0 {
        CausalClass::TimelikeFuture
    } else {
        CausalClass::TimelikePast
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AngleKind {
    /// Two co-oriented timelike vectors.
    Hyperbolic,
    /// Two spacelike vectors spanning a timelike plane.
    Central,
    /// Two spacelike vectors spanning a spacelike plane.
    Spacelike,
    /// One spacelike and one timelike vector.
    LorentzianTimelike,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleResult {
    pub kind: AngleKind,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AngleError {
    #[error("angle undefined for a null or zero vector")]
    NullInput,
    #[error("timelike vectors have opposite time orientation")]
    OppositeOrientation,
    #[error("vectors span a degenerate plane")]
    DegenerateSpan,
}

/// Angle between two non-null vectors, dispatched on their causal characters.
///
/// The central and Lorentzian-timelike branches use `|⟨x,y⟩|`, so the
/// returned value is the nonnegative root for either sign of the product.
pub fn lorentz_angle(x: LVec3, y: LVec3, eps: f64) -> Result<AngleResult, AngleError> {
    let cx = causal_character(x, eps);
    let cy = causal_character(y, eps);
    if matches!(cx, CausalClass::Null | CausalClass::Zero)
        || matches!(cy, CausalClass::Null | CausalClass::Zero)
    {
        return Err(AngleError::NullInput);
    }
    let xy = x.inner(y);
    let nx = x.norm();
    let ny = y.norm();
    let ratio = xy.abs() / (nx * ny);
    match (cx.is_timelike(), cy.is_timelike()) {
        (true, true) => {
            if cx != cy {
                return Err(AngleError::OppositeOrientation);
            }
            Ok(AngleResult {
                kind: AngleKind::Hyperbolic,
                value: ratio.max(1.0).acosh(),
            })
        }
        (false, false) => {
            let xx = x.norm_sq();
            let yy = y.norm_sq();
            let gram = xx * yy - xy * xy;
            if gram.abs() <= eps * xx * yy {
                return Err(AngleError::DegenerateSpan);
            }
            if gram < 0.0 {
                Ok(AngleResult {
                    kind: AngleKind::Central,
                    value: ratio.max(1.0).acosh(),
                })
            } else {
                let c = (xy / (nx * ny)).clamp(-1.0, 1.0);
                Ok(AngleResult {
                    kind: AngleKind::Spacelike,
                    value: c.acos(),
                })
            }
        }
        _ => Ok(AngleResult {
            kind: AngleKind::LorentzianTimelike,
            value: ratio.asinh(),
        }),
    }
}
