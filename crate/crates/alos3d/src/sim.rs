//! Deterministic closed-loop kinematic simulation.
//!
//! The vehicle surrogate moves at a (possibly modulated) constant speed
//! relative to the water/air mass; the current displaces it; heading and
//! pitch follow the guidance commands either perfectly or through a
//! first-order lag; roll is exogenous. Position, the crab-angle estimates,
//! the path parameter (curved runs) and the lagged attitude (lag mode) are
//! advanced together by fixed-step classical RK4, so a run is bit-identical
//! for identical inputs and admits a clean O(dt⁴) consistency check.

use nalgebra::Vector3;

use crate::amplitude_phase::{body_crab_angles, spherical_crab_from_angles};
use crate::attitude::{
    rotation_body_to_ned, spherical_velocity, ssa, BodyVelocity, EulerAngles, NedVector,
};
use crate::guidance::{estimator_rates, guidance_command, EstimatorState, GuidanceParams};
use crate::path::{
    curved_errors, frame_rates, path_frame_rotation, segment_geometry, switch_segment,
    tracking_errors, CurvedPath, SegmentGeometry, TrackingError, Waypoint,
};
use crate::simlog::{
    LogRow, SimLog, FLAG_ALPHA_PROJECTION, FLAG_BETA_PROJECTION, FLAG_SEGMENT_SWITCHED,
    FLAG_THETA_SATURATED,
};
use crate::Error;

/// Horizontal ground speed below which the course angle is treated as
/// degenerate and the run aborts.
const MIN_HORIZONTAL_SPEED: f64 = 1e-6;

/// Review window for pitch-command saturation. A long saturated climb toward
/// the path is legitimate; the run aborts only when the command has been
/// pinned at the clip for a full window without the vertical error improving
/// (the commanded geometry is unreachable).
const SATURATION_WINDOW_SECONDS: f64 = 10.0;

/// Full kinematic state of the surrogate vehicle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleState {
    pub position: NedVector,
    pub attitude: EulerAngles,
    pub relative_velocity_body: BodyVelocity,
}

/// Constant or slowly ramping ocean/wind current in NED.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentModel {
    pub base: NedVector,
    pub ramp: NedVector,
}

impl CurrentModel {
    pub fn none() -> Self {
        Self {
            base: NedVector { x: 0.0, y: 0.0, z: 0.0 },
            ramp: NedVector { x: 0.0, y: 0.0, z: 0.0 },
        }
    }

    pub fn at(&self, t: f64) -> Vector3<f64> {
        self.base.to_vector() + t * self.ramp.to_vector()
    }
}

/// How heading and pitch track their commands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AutopilotModel {
    /// ψ = ψ_d and θ = θ_d exactly, every evaluation.
    Perfect,
    /// First-order lag toward the commands with the given time constant (s).
    FirstOrderLag { time_constant: f64 },
}

/// Exogenous roll angle profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RollProfile {
    Constant(f64),
    Sinusoid { amplitude: f64, period: f64 },
}

impl RollProfile {
    pub fn at(&self, t: f64) -> f64 {
        match *self {
            RollProfile::Constant(v) => v,
            RollProfile::Sinusoid { amplitude, period } => {
                amplitude * (2.0 * std::f64::consts::PI * t / period).sin()
            }
        }
    }
}

/// Relative-speed profile: constant direction, magnitude either fixed or
/// sinusoidal within [base − amplitude, base + amplitude].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedProfile {
    pub amplitude: f64,
    pub period: f64,
}

/// The vehicle surrogate: relative velocity direction and magnitude,
/// autopilot and roll models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleModel {
    pub relative_velocity: BodyVelocity,
    pub speed_profile: Option<SpeedProfile>,
    pub autopilot: AutopilotModel,
    pub roll: RollProfile,
}

impl VehicleModel {
    fn relative_velocity_at(&self, t: f64) -> BodyVelocity {
        match self.speed_profile {
            None => self.relative_velocity,
            Some(SpeedProfile { amplitude, period }) => {
                let base = self.relative_velocity.speed();
                let scale =
                    1.0 + amplitude * (2.0 * std::f64::consts::PI * t / period).sin() / base;
                BodyVelocity {
                    u: self.relative_velocity.u * scale,
                    v: self.relative_velocity.v * scale,
                    w: self.relative_velocity.w * scale,
                }
            }
        }
    }
}

/// The path being followed: a waypoint polyline or a curved descriptor.
#[derive(Debug, Clone, PartialEq)]
pub enum Track {
    Segments(Vec<SegmentGeometry>),
    Curve(CurvedPath),
}

impl Track {
    pub fn from_waypoints(waypoints: &[Waypoint]) -> Result<Self, Error> {
        if waypoints.len() < 2 {
            return Err(Error::InvalidParameter("at least two waypoints required"));
        }
        let segments = waypoints
            .windows(2)
            .map(|w| segment_geometry(&w[0], &w[1]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Track::Segments(segments))
    }

    /// Position where a run starts by default.
    pub fn start_position(&self) -> Result<NedVector, Error> {
        match self {
            Track::Segments(segs) => Ok(segs[0].origin),
            Track::Curve(path) => Ok(path.sample(0.0)?.position),
        }
    }

    /// Frame angles at the start, for default attitude alignment.
    pub fn start_angles(&self) -> Result<(f64, f64), Error> {
        match self {
            Track::Segments(segs) => Ok((segs[0].pi_h, segs[0].pi_v)),
            Track::Curve(path) => {
                let s = path.sample(0.0)?;
                Ok((s.pi_h, s.pi_v))
            }
        }
    }
}

/// Everything a run needs, already validated.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub track: Track,
    pub current: CurrentModel,
    pub vehicle: VehicleModel,
    pub guidance: GuidanceParams,
    pub initial_position: Option<NedVector>,
    pub initial_attitude: Option<(f64, f64)>,
    pub initial_estimates: EstimatorState,
    pub dt: f64,
    pub duration: f64,
    pub switch_radius: f64,
    pub convergence_tolerance: f64,
    pub seed: u64,
}

/// A run that could not continue; carries where and why.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
#[error("simulation aborted at step {step} (t = {time} s): {cause}")]
pub struct SimAbort {
    pub step: usize,
    pub time: f64,
    pub cause: Error,
}

/// Integrated state: position, path parameter (curved runs), estimates, and
/// the lagged attitude angles (lag mode; ignored under perfect tracking).
#[derive(Debug, Clone, Copy)]
struct SimState {
    position: Vector3<f64>,
    varpi: f64,
    alpha_hat: f64,
    beta_hat: f64,
    psi: f64,
    theta: f64,
}

#[derive(Debug, Clone, Copy)]
struct SimDeriv {
    position: Vector3<f64>,
    varpi: f64,
    alpha_hat: f64,
    beta_hat: f64,
    psi: f64,
    theta: f64,
}

impl SimState {
    fn apply(&self, d: &SimDeriv, dt: f64) -> SimState {
        SimState {
            position: self.position + d.position * dt,
            varpi: self.varpi + d.varpi * dt,
            alpha_hat: self.alpha_hat + d.alpha_hat * dt,
            beta_hat: self.beta_hat + d.beta_hat * dt,
            psi: self.psi + d.psi * dt,
            theta: self.theta + d.theta * dt,
        }
    }
}

fn combine(k1: &SimDeriv, k2: &SimDeriv, k3: &SimDeriv, k4: &SimDeriv) -> SimDeriv {
    SimDeriv {
        position: (k1.position + 2.0 * k2.position + 2.0 * k3.position + k4.position) / 6.0,
        varpi: (k1.varpi + 2.0 * k2.varpi + 2.0 * k3.varpi + k4.varpi) / 6.0,
        alpha_hat: (k1.alpha_hat + 2.0 * k2.alpha_hat + 2.0 * k3.alpha_hat + k4.alpha_hat) / 6.0,
        beta_hat: (k1.beta_hat + 2.0 * k2.beta_hat + 2.0 * k3.beta_hat + k4.beta_hat) / 6.0,
        psi: (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi) / 6.0,
        theta: (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta) / 6.0,
    }
}

/// Everything observable at one evaluation of the closed loop.
#[derive(Debug, Clone, Copy)]
struct Evaluation {
    deriv: SimDeriv,
    err: TrackingError,
    attitude: EulerAngles,
    psi_d: f64,
    theta_d: f64,
    theta_saturated: bool,
    alpha_c: f64,
    beta_c: f64,
    alpha_c_star: f64,
    gamma: f64,
    speed_total: f64,
    speed_horizontal: f64,
}

/// One evaluation of the closed-loop right-hand side.
///
/// Under perfect tracking the attitude is algebraic: heading and pitch are
/// set to the commands before the kinematics are evaluated, at every RK4
/// substage.
fn evaluate(
    t: f64,
    state: &SimState,
    track_frame: &FrameContext,
    scenario: &Scenario,
) -> Result<Evaluation, Error> {
    let gp = &scenario.guidance;
    let position = NedVector::from_vector(state.position);

    let (err, pi_h, pi_v, sample) = match track_frame {
        FrameContext::Segment(seg) => (tracking_errors(seg, &position), seg.pi_h, seg.pi_v, None),
        FrameContext::Curve(path) => {
            let (err, sample) = curved_errors(path, state.varpi, &position)?;
            (err, sample.pi_h, sample.pi_v, Some(sample))
        }
    };

    let est = EstimatorState {
        alpha_hat: state.alpha_hat,
        beta_hat: state.beta_hat,
    };
    let cmd = guidance_command(pi_h, pi_v, &err, &est, gp);

    let roll = scenario.vehicle.roll.at(t);
    let attitude = match scenario.vehicle.autopilot {
        AutopilotModel::Perfect => EulerAngles::new(roll, cmd.theta_d, cmd.psi_d)?,
        AutopilotModel::FirstOrderLag { .. } => EulerAngles::new(roll, state.theta, state.psi)?,
    };

    let v_rel = scenario.vehicle.relative_velocity_at(t);
    let ground =
        rotation_body_to_ned(&attitude) * v_rel.to_vector() + scenario.current.at(t);
    let ground_ned = NedVector::from_vector(ground);
    let sv = spherical_velocity(&ground_ned)?;
    if sv.speed_horizontal() < MIN_HORIZONTAL_SPEED {
        return Err(Error::DegenerateCourse);
    }

    let crab = spherical_crab_from_angles(&attitude, &sv)?;
    let body_ground = BodyVelocity::from_vector(
        rotation_body_to_ned(&attitude).transpose() * ground,
    );
    let alpha_c_star = body_crab_angles(&attitude, &body_ground)
        .map(|b| b.alpha_c_star)
        .unwrap_or(f64::NAN);

    let rates = estimator_rates(&err, &est, gp);

    let varpi_dot = match &sample {
        None => 0.0,
        Some(sample) => {
            let v_p =
                path_frame_rotation(sample.pi_h, sample.pi_v).transpose() * ground;
            frame_rates(sample, &err, v_p.x)
                .map_err(|e| match e {
                    Error::PathFrameSingularity { denominator, .. } => {
                        Error::PathFrameSingularity {
                            varpi: state.varpi,
                            denominator,
                        }
                    }
                    other => other,
                })?
                .varpi_dot
        }
    };

    let (psi_dot, theta_dot) = match scenario.vehicle.autopilot {
        AutopilotModel::Perfect => (0.0, 0.0),
        AutopilotModel::FirstOrderLag { time_constant } => (
            ssa(cmd.psi_d - state.psi) / time_constant,
            (cmd.theta_d - state.theta) / time_constant,
        ),
    };

    Ok(Evaluation {
        deriv: SimDeriv {
            position: ground,
            varpi: varpi_dot,
            alpha_hat: rates.alpha_hat_dot,
            beta_hat: rates.beta_hat_dot,
            psi: psi_dot,
            theta: theta_dot,
        },
        err,
        attitude,
        psi_d: cmd.psi_d,
        theta_d: cmd.theta_d,
        theta_saturated: cmd.theta_saturated,
        alpha_c: crab.alpha_c,
        beta_c: crab.beta_c,
        alpha_c_star,
        gamma: sv.flight_path(),
        speed_total: sv.speed_total(),
        speed_horizontal: sv.speed_horizontal(),
    })
}

enum FrameContext<'a> {
    Segment(&'a SegmentGeometry),
    Curve(&'a CurvedPath),
}

/// Advances the closed loop by one RK4 step.
///
/// Returns the new state together with the evaluation at the step start,
/// which is what gets logged.
fn rk4_step(
    t: f64,
    state: &SimState,
    frame: &FrameContext,
    scenario: &Scenario,
) -> Result<(SimState, Evaluation), Error> {
    let dt = scenario.dt;
    let e1 = evaluate(t, state, frame, scenario)?;
    let e2 = evaluate(
        t + dt / 2.0,
        &state.apply(&e1.deriv, dt / 2.0),
        frame,
        scenario,
    )?;
    let e3 = evaluate(
        t + dt / 2.0,
        &state.apply(&e2.deriv, dt / 2.0),
        frame,
        scenario,
    )?;
    let e4 = evaluate(t + dt, &state.apply(&e3.deriv, dt), frame, scenario)?;
    let next = state.apply(&combine(&e1.deriv, &e2.deriv, &e3.deriv, &e4.deriv), dt);
    Ok((next, e1))
}

/// A single external step of the full closed loop, exposed for consistency
/// checks: advances (state, estimates) by one RK4 step on a straight
/// segment and reports the logged quantities.
pub fn step_full(
    state: &VehicleState,
    est: &EstimatorState,
    seg: &SegmentGeometry,
    current: &CurrentModel,
    autopilot: AutopilotModel,
    gp: &GuidanceParams,
    dt: f64,
) -> Result<(VehicleState, EstimatorState, LogRow), SimAbort> {
    let scenario = Scenario {
        track: Track::Segments(vec![*seg]),
        current: *current,
        vehicle: VehicleModel {
            relative_velocity: state.relative_velocity_body,
            speed_profile: None,
            autopilot,
            roll: RollProfile::Constant(state.attitude.phi()),
        },
        guidance: *gp,
        initial_position: Some(state.position),
        initial_attitude: Some((state.attitude.psi(), state.attitude.theta())),
        initial_estimates: *est,
        dt,
        duration: dt,
        switch_radius: 1.0,
        convergence_tolerance: 0.1,
        seed: 0,
    };
    let sim_state = SimState {
        position: state.position.to_vector(),
        varpi: 0.0,
        alpha_hat: est.alpha_hat,
        beta_hat: est.beta_hat,
        psi: state.attitude.psi(),
        theta: state.attitude.theta(),
    };
    let frame = FrameContext::Segment(seg);
    let (next, eval) = rk4_step(0.0, &sim_state, &frame, &scenario).map_err(|cause| SimAbort {
        step: 0,
        time: 0.0,
        cause,
    })?;
    // a fresh evaluation at the new state yields the post-step attitude
    let eval_next = evaluate(dt, &next, &frame, &scenario).map_err(|cause| SimAbort {
        step: 1,
        time: dt,
        cause,
    })?;
    Ok((
        VehicleState {
            position: NedVector::from_vector(next.position),
            attitude: eval_next.attitude,
            relative_velocity_body: state.relative_velocity_body,
        },
        EstimatorState {
            alpha_hat: next.alpha_hat,
            beta_hat: next.beta_hat,
        },
        row_from_eval(0.0, &sim_state, &eval, gp, 0.0, false),
    ))
}

fn row_from_eval(
    t: f64,
    state: &SimState,
    eval: &Evaluation,
    gp: &GuidanceParams,
    segment_or_varpi: f64,
    switched: bool,
) -> LogRow {
    let mut flags = 0u32;
    if eval.theta_saturated {
        flags |= FLAG_THETA_SATURATED;
    }
    if state.alpha_hat.abs() > gp.proj_bound {
        flags |= FLAG_ALPHA_PROJECTION;
    }
    if state.beta_hat.abs() > gp.proj_bound {
        flags |= FLAG_BETA_PROJECTION;
    }
    if switched {
        flags |= FLAG_SEGMENT_SWITCHED;
    }
    LogRow {
        t,
        x_n: state.position.x,
        y_n: state.position.y,
        z_n: state.position.z,
        x_e: eval.err.x_e,
        y_e: eval.err.y_e,
        z_e: eval.err.z_e,
        phi: eval.attitude.phi(),
        theta: eval.attitude.theta(),
        psi: eval.attitude.psi(),
        psi_d: eval.psi_d,
        theta_d: eval.theta_d,
        alpha_c: eval.alpha_c,
        alpha_c_star: eval.alpha_c_star,
        beta_c: eval.beta_c,
        alpha_hat: state.alpha_hat,
        beta_hat: state.beta_hat,
        gamma: eval.gamma,
        speed_total: eval.speed_total,
        speed_horizontal: eval.speed_horizontal,
        segment_or_varpi,
        flags,
    }
}

/// Runs a scenario to completion.
///
/// Deterministic: an identical scenario produces a bit-identical log. Aborts
/// carry the step index and cause; reaching the final waypoint ends the run
/// early with `finished_path` set.
pub fn run_scenario(scenario: &Scenario) -> Result<SimLog, SimAbort> {
    let gp = &scenario.guidance;
    let start_position = scenario
        .initial_position
        .map(Ok)
        .unwrap_or_else(|| scenario.track.start_position())
        .map_err(|cause| SimAbort {
            step: 0,
            time: 0.0,
            cause,
        })?;

    let (psi0, theta0) = match scenario.initial_attitude {
        Some(att) => att,
        None => scenario.track.start_angles().map_err(|cause| SimAbort {
            step: 0,
            time: 0.0,
            cause,
        })?,
    };

    let mut state = SimState {
        position: start_position.to_vector(),
        varpi: 0.0,
        alpha_hat: scenario.initial_estimates.alpha_hat,
        beta_hat: scenario.initial_estimates.beta_hat,
        psi: psi0,
        theta: theta0,
    };

    if let Track::Curve(path) = &scenario.track {
        state.varpi = crate::path::solve_varpi_for_position(path, &start_position, 0.0)
            .map_err(|cause| SimAbort {
                step: 0,
                time: 0.0,
                cause,
            })?;
    }

    let steps = (scenario.duration / scenario.dt).round() as usize;
    let mut rows = Vec::with_capacity(steps + 1);
    let mut active_segment = 0usize;
    let mut finished_path = false;
    let saturation_window = (SATURATION_WINDOW_SECONDS / scenario.dt).round() as usize;
    let mut saturated_steps = 0usize;
    let mut z_e_at_window_start = f64::INFINITY;

    let mut step = 0usize;
    while step < steps {
        let t = step as f64 * scenario.dt;
        let (frame, marker) = match &scenario.track {
            Track::Segments(segs) => (
                FrameContext::Segment(&segs[active_segment]),
                active_segment as f64,
            ),
            Track::Curve(path) => (FrameContext::Curve(path), state.varpi),
        };
        let (next, eval) =
            rk4_step(t, &state, &frame, scenario).map_err(|cause| SimAbort {
                step,
                time: t,
                cause,
            })?;

        if eval.theta_saturated {
            if saturated_steps == 0 {
                z_e_at_window_start = eval.err.z_e.abs();
            }
            saturated_steps += 1;
            if saturated_steps >= saturation_window.max(1) {
                if eval.err.z_e.abs() >= z_e_at_window_start {
                    return Err(SimAbort {
                        step,
                        time: t,
                        cause: Error::PersistentSaturation(
                            saturated_steps as f64 * scenario.dt,
                        ),
                    });
                }
                // still improving: slide the window
                saturated_steps = 0;
            }
        } else {
            saturated_steps = 0;
        }

        // Segment switching happens between steps; estimator state carries
        // over unchanged (crab angles belong to the environment, not the path).
        let mut switched = false;
        if let Track::Segments(segs) = &scenario.track {
            let seg = &segs[active_segment];
            let err_next =
                tracking_errors(seg, &NedVector::from_vector(next.position));
            if switch_segment(seg, &err_next, scenario.switch_radius) {
                if active_segment + 1 < segs.len() {
                    active_segment += 1;
                } else {
                    finished_path = true;
                }
                switched = true;
            }
        }
        if let Track::Curve(path) = &scenario.track {
            // leave a few steps of margin so RK4 substages never sample
            // beyond the descriptor domain
            if next.varpi + 4.0 * eval.deriv.varpi.abs() * scenario.dt >= path.varpi_max() {
                finished_path = true;
            }
        }

        rows.push(row_from_eval(t, &state, &eval, gp, marker, switched));
        state = next;
        step += 1;
        if finished_path {
            break;
        }
    }

    // Final row at the last reached state.
    let t = step as f64 * scenario.dt;
    let (frame, marker) = match &scenario.track {
        Track::Segments(segs) => (
            FrameContext::Segment(&segs[active_segment]),
            active_segment as f64,
        ),
        Track::Curve(path) => (FrameContext::Curve(path), state.varpi),
    };
    let eval = evaluate(t, &state, &frame, scenario).map_err(|cause| SimAbort {
        step,
        time: t,
        cause,
    })?;
    rows.push(row_from_eval(t, &state, &eval, gp, marker, false));

    Ok(SimLog {
        rows,
        dt: scenario.dt,
        delta_h: gp.delta_h,
        delta_v: gp.delta_v,
        finished_path,
    })
}
