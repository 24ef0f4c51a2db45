//! The adaptive line-of-sight guidance law.
//!
//! Commanded heading and pitch steer the vehicle toward the path while the
//! crab-angle estimates absorb the drift caused by current or wind:
//!
//! ```text
//! ψ_d = π_h − β̂_c − atan(y_e / Δ_h)
//! θ_d = π_v + α̂_c + atan(z_e / Δ_v)
//!
//! dβ̂_c/dt = k_h · Δ_h/√(Δ_h² + y_e²) · Proj(β̂_c, y_e)
//! dα̂_c/dt = k_v · Δ_v/√(Δ_v² + z_e²) · Proj(α̂_c, z_e)
//! ```
//!
//! The projection operator confines the estimates to a compact set without
//! affecting the law while they are inside it.

use crate::path::TrackingError;
use crate::{attitude::ssa, Error};

/// Pitch commands are clipped to ±(π/2 − 5°) so downstream kinematics never
/// leave the Euler chart; the clip raises a flag instead of an error.
pub const THETA_COMMAND_LIMIT: f64 =
    std::f64::consts::FRAC_PI_2 - 5.0 * std::f64::consts::PI / 180.0;

/// Guidance gains and projection bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuidanceParams {
    /// Horizontal look-ahead distance Δ_h (m), > 0.
    pub delta_h: f64,
    /// Vertical look-ahead distance Δ_v (m), > 0.
    pub delta_v: f64,
    /// Horizontal adaptive gain k_h (rad/(m·s)), > 0.
    pub k_h: f64,
    /// Vertical adaptive gain k_v (rad/(m·s)), > 0.
    pub k_v: f64,
    /// Estimate magnitude limit L (rad) of the projection operator.
    pub proj_bound: f64,
    /// Boundary-layer width ε (rad) of the projection operator.
    pub proj_layer: f64,
}

impl Default for GuidanceParams {
    fn default() -> Self {
        Self {
            delta_h: 20.0,
            delta_v: 20.0,
            k_h: 0.0015,
            k_v: 0.0015,
            proj_bound: 45.0_f64.to_radians(),
            proj_layer: 5.0_f64.to_radians(),
        }
    }
}

impl GuidanceParams {
    pub fn validate(&self) -> Result<(), Error> {
        for (value, message) in [
            (self.delta_h, "guidance delta_h must be > 0"),
            (self.delta_v, "guidance delta_v must be > 0"),
            (self.k_h, "guidance k_h must be > 0"),
            (self.k_v, "guidance k_v must be > 0"),
            (self.proj_bound, "guidance proj_bound must be > 0"),
            (self.proj_layer, "guidance proj_layer must be > 0"),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParameter(message));
            }
        }
        Ok(())
    }
}

/// The crab-angle estimates (α̂_c, β̂_c).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EstimatorState {
    pub alpha_hat: f64,
    pub beta_hat: f64,
}

/// Commanded heading and pitch, with a flag when the pitch clip engaged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuidanceCommand {
    pub psi_d: f64,
    pub theta_d: f64,
    pub theta_saturated: bool,
}

/// Time derivatives of the estimator state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorRates {
    pub alpha_hat_dot: f64,
    pub beta_hat_dot: f64,
}

/// Commanded heading ψ_d = π_h − β̂_c − atan(y_e/Δ_h), normalized to [-π, π).
pub fn psi_command(pi_h: f64, y_e: f64, est: &EstimatorState, gp: &GuidanceParams) -> f64 {
    ssa(pi_h - est.beta_hat - (y_e / gp.delta_h).atan())
}

/// Commanded pitch θ_d = π_v + α̂_c + atan(z_e/Δ_v), clipped to the chart.
pub fn theta_command(
    pi_v: f64,
    z_e: f64,
    est: &EstimatorState,
    gp: &GuidanceParams,
) -> (f64, bool) {
    let raw = pi_v + est.alpha_hat + (z_e / gp.delta_v).atan();
    if raw.abs() > THETA_COMMAND_LIMIT {
        (raw.signum() * THETA_COMMAND_LIMIT, true)
    } else {
        (raw, false)
    }
}

/// Both commands at once.
pub fn guidance_command(
    pi_h: f64,
    pi_v: f64,
    err: &TrackingError,
    est: &EstimatorState,
    gp: &GuidanceParams,
) -> GuidanceCommand {
    let (theta_d, theta_saturated) = theta_command(pi_v, err.z_e, est, gp);
    GuidanceCommand {
        psi_d: psi_command(pi_h, err.y_e, est, gp),
        theta_d,
        theta_saturated,
    }
}

/// Continuous boundary-layer projection.
///
/// Passes `signal` through unchanged while the estimate is inside the bound
/// or the signal moves it inward; scales the signal linearly to zero across
/// the boundary layer when moving outward; returns zero at or beyond
/// bound + layer moving outward. Continuous in both arguments.
pub fn projection(estimate: f64, signal: f64, gp: &GuidanceParams) -> f64 {
    if estimate.abs() <= gp.proj_bound || estimate * signal <= 0.0 {
        return signal;
    }
    let excess = estimate.abs() - gp.proj_bound;
    signal * (1.0 - excess / gp.proj_layer).max(0.0)
}

/// Adaptation rates of the crab-angle estimates.
pub fn estimator_rates(
    err: &TrackingError,
    est: &EstimatorState,
    gp: &GuidanceParams,
) -> EstimatorRates {
    let horizontal = gp.delta_h / (gp.delta_h * gp.delta_h + err.y_e * err.y_e).sqrt();
    let vertical = gp.delta_v / (gp.delta_v * gp.delta_v + err.z_e * err.z_e).sqrt();
    EstimatorRates {
        alpha_hat_dot: gp.k_v * vertical * projection(est.alpha_hat, err.z_e, gp),
        beta_hat_dot: gp.k_h * horizontal * projection(est.beta_hat, err.y_e, gp),
    }
}
