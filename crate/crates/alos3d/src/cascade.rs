//! The reduced closed-loop cascade: vertical subsystem driven by the
//! horizontal one through a vanishing perturbation.
//!
//! Inserting the guidance law into the straight-segment error dynamics and
//! writing the estimation errors α̃_c = α_c − α̂_c, β̃_c = β_c − β̂_c gives a
//! cascade of two subsystems in ξ = (z_e, α̃_c, y_e, β̃_c):
//!
//! ```text
//! vertical:    ż_e = −(U·Δ_v)/√(Δ_v² + z_e²) · (cos(α̃_c)·z_e/Δ_v − sin(α̃_c)) + g
//!              dα̃_c/dt = −k_v·Δ_v/√(Δ_v² + z_e²) · Proj(α̂_c, z_e)
//! horizontal:  ẏ_e = −(U_h·Δ_h)/√(Δ_h² + y_e²) · (cos(β̃_c)·y_e/Δ_h − sin(β̃_c))
//!              dβ̃_c/dt = −k_h·Δ_h/√(Δ_h² + y_e²) · Proj(β̂_c, y_e)
//! ```
//!
//! with the coupling perturbation
//!
//! ```text
//! g = U_h·sin(π_v)·(cos(β̃_c − atan(y_e/Δ_h)) − 1)
//! ```
//!
//! g vanishes with the horizontal subsystem regardless of π_v or β_c, so the
//! vertical estimate carries no steady-state bias even during coupled 3-D
//! motion. The equations assume the true crab angles vary slowly; the rates
//! returned here treat them as frozen.

use crate::guidance::{estimator_rates, EstimatorState, GuidanceParams};
use crate::path::TrackingError;

/// Cascade state ξ = (z_e, α̃_c, y_e, β̃_c).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CascadeState {
    pub z_e: f64,
    pub alpha_tilde: f64,
    pub y_e: f64,
    pub beta_tilde: f64,
}

impl CascadeState {
    fn apply(&self, d: &CascadeState, dt: f64) -> CascadeState {
        CascadeState {
            z_e: self.z_e + d.z_e * dt,
            alpha_tilde: self.alpha_tilde + d.alpha_tilde * dt,
            y_e: self.y_e + d.y_e * dt,
            beta_tilde: self.beta_tilde + d.beta_tilde * dt,
        }
    }

    fn combine(k1: &Self, k2: &Self, k3: &Self, k4: &Self) -> Self {
        CascadeState {
            z_e: (k1.z_e + 2.0 * k2.z_e + 2.0 * k3.z_e + k4.z_e) / 6.0,
            alpha_tilde: (k1.alpha_tilde
                + 2.0 * k2.alpha_tilde
                + 2.0 * k3.alpha_tilde
                + k4.alpha_tilde)
                / 6.0,
            y_e: (k1.y_e + 2.0 * k2.y_e + 2.0 * k3.y_e + k4.y_e) / 6.0,
            beta_tilde: (k1.beta_tilde
                + 2.0 * k2.beta_tilde
                + 2.0 * k3.beta_tilde
                + k4.beta_tilde)
                / 6.0,
        }
    }
}

/// Frozen slow variables the cascade evolves against: speeds, path
/// elevation, and the true crab angles (needed to evaluate the projection at
/// the estimate α̂_c = α_c − α̃_c rather than at the estimation error).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeContext {
    pub speed_total: f64,
    pub speed_horizontal: f64,
    pub pi_v: f64,
    pub true_alpha: f64,
    pub true_beta: f64,
}

/// The perturbation g coupling the horizontal subsystem into the vertical:
/// `U_h·sin(π_v)·(cos(β̃_c − atan(y_e/Δ_h)) − 1)`.
///
/// Bounded by 2·U_h·|sin(π_v)|, zero at the horizontal origin, and
/// identically zero on horizontal paths.
pub fn perturbation_g(
    y_e: f64,
    beta_tilde: f64,
    speed_horizontal: f64,
    pi_v: f64,
    gp: &GuidanceParams,
) -> f64 {
    speed_horizontal * pi_v.sin() * ((beta_tilde - (y_e / gp.delta_h).atan()).cos() - 1.0)
}

/// Right-hand side of the cascade at state ξ.
pub fn cascade_rhs(
    xi: &CascadeState,
    ctx: &CascadeContext,
    gp: &GuidanceParams,
) -> CascadeState {
    let vertical_scale =
        gp.delta_v / (gp.delta_v * gp.delta_v + xi.z_e * xi.z_e).sqrt();
    let horizontal_scale =
        gp.delta_h / (gp.delta_h * gp.delta_h + xi.y_e * xi.y_e).sqrt();

    let z_rate = -ctx.speed_total
        * vertical_scale
        * (xi.alpha_tilde.cos() * xi.z_e / gp.delta_v - xi.alpha_tilde.sin())
        + perturbation_g(xi.y_e, xi.beta_tilde, ctx.speed_horizontal, ctx.pi_v, gp);
    let y_rate = -ctx.speed_horizontal
        * horizontal_scale
        * (xi.beta_tilde.cos() * xi.y_e / gp.delta_h - xi.beta_tilde.sin());

    // The estimate rates come from the adaptation law itself; the tilde
    // rates are their negatives under frozen true crab angles.
    let est = EstimatorState {
        alpha_hat: ctx.true_alpha - xi.alpha_tilde,
        beta_hat: ctx.true_beta - xi.beta_tilde,
    };
    let err = TrackingError {
        x_e: 0.0,
        y_e: xi.y_e,
        z_e: xi.z_e,
    };
    let rates = estimator_rates(&err, &est, gp);

    CascadeState {
        z_e: z_rate,
        alpha_tilde: -rates.alpha_hat_dot,
        y_e: y_rate,
        beta_tilde: -rates.beta_hat_dot,
    }
}

/// Integrates the cascade with fixed-step RK4, returning the trajectory
/// sampled at every step (including the initial state).
pub fn integrate_cascade(
    xi0: CascadeState,
    ctx: &CascadeContext,
    gp: &GuidanceParams,
    dt: f64,
    steps: usize,
) -> Vec<(f64, CascadeState)> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut xi = xi0;
    out.push((0.0, xi));
    for i in 0..steps {
        let k1 = cascade_rhs(&xi, ctx, gp);
        let k2 = cascade_rhs(&xi.apply(&k1, dt / 2.0), ctx, gp);
        let k3 = cascade_rhs(&xi.apply(&k2, dt / 2.0), ctx, gp);
        let k4 = cascade_rhs(&xi.apply(&k3, dt), ctx, gp);
        xi = xi.apply(&CascadeState::combine(&k1, &k2, &k3, &k4), dt);
        out.push(((i + 1) as f64 * dt, xi));
    }
    out
}
