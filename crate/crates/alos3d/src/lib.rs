//! 3-D adaptive line-of-sight (ALOS) path following.
//!
//! This crate implements ALOS guidance for vehicles that steer heading and
//! pitch while being pushed around by an unknown, slowly varying current or
//! wind. The guidance law estimates the resulting crab angles online and
//! compensates for them, so cross- and vertical-track errors converge to zero
//! instead of a steady-state bias.
//!
//! The kinematic core is an amplitude-phase rewriting of the NED velocity:
//! speed amplitudes times sinusoids of (vehicle angle + crab angle). Two
//! decompositions are provided:
//!
//! - the body-velocity model, whose vertical crab angle lives in the vertical
//!   plane of the body x-axis and degenerates when the velocity projection
//!   into that plane vanishes, and
//! - the spherical model, whose crab angles are plain differences of the
//!   velocity azimuth/elevation and the vehicle azimuth/elevation. It stays
//!   well defined for any orientation with nonzero horizontal speed.
//!
//! On top of that sit the PATH-frame error geometry for straight segments and
//! regular curved paths, the adaptive guidance law with parameter projection,
//! and a deterministic fixed-step closed-loop simulator with convergence-rate
//! fitting.
//!
//! The `examples/` directory is the best starting point; each example is a
//! runnable demonstration of one capability. A thin `alos3d` binary exposes
//! the same machinery as `run`, `compare`, `sweep` and `rate-fit` subcommands
//! driven by a TOML scenario file.

pub mod amplitude_phase;
pub mod attitude;
pub mod cascade;
pub mod cli;
pub mod guidance;
pub mod path;
pub mod ratefit;
pub mod scenario;
pub mod sim;
pub mod simlog;

mod error;

pub use error::Error;

/// Default absolute tolerance for geometric identities.
///
/// The identities this library checks (orthonormality, velocity
/// reconstruction, formulation equivalence) are exact in real arithmetic;
/// the tolerance only absorbs floating-point error. Operations that accept a
/// tolerance use this value unless overridden.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
