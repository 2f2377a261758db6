//! Synthesis and verification of timelike ruled surfaces in Minkowski 3-space.
//!
//! A surface `r(s, v) = k(s) + v·q(s)` is built over a timelike directrix
//! `k` reconstructed from its curvature and torsion ([`frenet`]). The unit
//! timelike ruling `q` is described by two angles `(θ, φ)` relative to the
//! directrix frame ([`ruled`]); integrating one of the determining systems
//! ([`synthesis`]) produces angle tracks whose surfaces carry prescribed
//! invariants. [`verification`] recomputes those invariants from the raw
//! samples by finite differences, and [`pipeline`] ties everything to JSON
//! configurations, CSV tables, JSON reports and OBJ meshes.

pub mod lorentz;
pub mod ode;
pub mod spline;
pub mod frenet;
pub mod ruled;
pub mod synthesis;
pub mod verification;
pub mod pipeline;

pub use frenet::{CurvatureFn, Frame, FrenetCurve, FrenetSeed, Grid};
pub use lorentz::{CausalClass, LVec3};
pub use ruled::{AngleTrack, RuledSurfaceGrid, SurfaceInvariants};
pub use synthesis::{SynthesisParams, SystemKind};
pub use pipeline::{run_config, RunConfig};
pub use verification::{InvariantReport, SpecialCase, Tolerances};
