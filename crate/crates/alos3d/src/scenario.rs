//! TOML scenario configuration.
//!
//! A scenario file has nested sections mirroring the library modules; every
//! invariant is re-validated at load time and unknown keys are hard errors,
//! so a typo in a gain name cannot silently invalidate an experiment. All
//! angles are radians, lengths meters, speeds m/s.
//!
//! ```toml
//! [path]
//! waypoints = [[0.0, 0.0, 0.0], [600.0, 0.0, 0.0]]
//! # or: curve = { kind = "helix", center = [0.0, 0.0, 0.0], radius = 150.0,
//! #               pitch_per_turn = 30.0, varpi_max = 12.0 }
//!
//! [current]
//! velocity = [0.2, 0.4, 0.0]
//! ramp = [0.0, 0.0, 0.0]
//!
//! [vehicle]
//! relative_velocity = [2.0, 0.0, 0.0]
//! autopilot = "perfect"            # or "lag"
//! # time_constant = 1.0            # lag mode
//! # roll = { kind = "sinusoid", amplitude = 0.1, period = 25.0 }
//! # initial_position = [0.0, 30.0, 10.0]
//!
//! [guidance]
//! delta_h = 20.0
//! delta_v = 20.0
//! k_h = 0.0015
//! k_v = 0.0015
//!
//! [sim]
//! dt = 0.01
//! duration = 600.0
//!
//! [output]
//! csv = "run.csv"
//! decimation = 10
//! ```

use serde::Deserialize;
use std::path::{Path, PathBuf};

use crate::attitude::NedVector;
use crate::guidance::{EstimatorState, GuidanceParams};
use crate::path::{CurvedPath, Waypoint};
use crate::sim::{
    AutopilotModel, CurrentModel, RollProfile, Scenario, SpeedProfile, Track, VehicleModel,
};

/// A configuration problem, with a message naming the violated invariant.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
#[error("config error: {0}")]
pub struct ConfigError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub path: PathSection,
    #[serde(default)]
    pub current: CurrentSection,
    pub vehicle: VehicleSection,
    #[serde(default)]
    pub guidance: GuidanceSection,
    pub sim: SimSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathSection {
    #[serde(default)]
    pub waypoints: Option<Vec<[f64; 3]>>,
    #[serde(default)]
    pub curve: Option<CurveSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    Straight {
        origin: [f64; 3],
        azimuth: f64,
        elevation: f64,
        length: f64,
    },
    HorizontalCircle {
        center: [f64; 3],
        radius: f64,
        varpi_max: f64,
    },
    VerticalArc {
        center: [f64; 3],
        radius: f64,
        azimuth: f64,
        varpi_max: f64,
    },
    Helix {
        center: [f64; 3],
        radius: f64,
        pitch_per_turn: f64,
        varpi_max: f64,
    },
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct CurrentSection {
    #[serde(default)]
    pub velocity: [f64; 3],
    #[serde(default)]
    pub ramp: [f64; 3],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleSection {
    pub relative_velocity: [f64; 3],
    #[serde(default)]
    pub speed_sine_amplitude: f64,
    #[serde(default = "default_speed_period")]
    pub speed_sine_period: f64,
    #[serde(default = "default_autopilot")]
    pub autopilot: String,
    #[serde(default = "default_time_constant")]
    pub time_constant: f64,
    #[serde(default)]
    pub roll: Option<RollSpec>,
    #[serde(default)]
    pub initial_position: Option<[f64; 3]>,
    /// Initial (yaw, pitch) for lag mode; defaults to the path direction.
    #[serde(default)]
    pub initial_attitude: Option<[f64; 2]>,
}

fn default_speed_period() -> f64 {
    60.0
}

fn default_autopilot() -> String {
    "perfect".to_string()
}

fn default_time_constant() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RollSpec {
    Constant { value: f64 },
    Sinusoid { amplitude: f64, period: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GuidanceSection {
    #[serde(default = "default_delta")]
    pub delta_h: f64,
    #[serde(default = "default_delta")]
    pub delta_v: f64,
    #[serde(default = "default_gain")]
    pub k_h: f64,
    #[serde(default = "default_gain")]
    pub k_v: f64,
    #[serde(default = "default_proj_bound")]
    pub proj_bound: f64,
    #[serde(default = "default_proj_layer")]
    pub proj_layer: f64,
    #[serde(default)]
    pub initial_alpha_hat: f64,
    #[serde(default)]
    pub initial_beta_hat: f64,
}

impl Default for GuidanceSection {
    fn default() -> Self {
        Self {
            delta_h: default_delta(),
            delta_v: default_delta(),
            k_h: default_gain(),
            k_v: default_gain(),
            proj_bound: default_proj_bound(),
            proj_layer: default_proj_layer(),
            initial_alpha_hat: 0.0,
            initial_beta_hat: 0.0,
        }
    }
}

fn default_delta() -> f64 {
    20.0
}

fn default_gain() -> f64 {
    0.0015
}

fn default_proj_bound() -> f64 {
    45.0_f64.to_radians()
}

fn default_proj_layer() -> f64 {
    5.0_f64.to_radians()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSection {
    #[serde(default = "default_dt")]
    pub dt: f64,
    pub duration: f64,
    /// Sphere-of-acceptance radius; defaults to 2·Δ_h.
    #[serde(default)]
    pub switch_radius: Option<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_convergence")]
    pub convergence_tolerance: f64,
}

fn default_dt() -> f64 {
    0.01
}

fn default_convergence() -> f64 {
    0.1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default = "default_decimation")]
    pub decimation: usize,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            csv: None,
            decimation: default_decimation(),
        }
    }
}

fn default_decimation() -> usize {
    1
}

/// Parameter sweep: one run per grid value.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    /// One of: `initial_radius`, `gain`, `curvature`, `current`.
    pub parameter: String,
    pub values: Vec<f64>,
}

impl std::str::FromStr for ScenarioConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError(e.to_string()))
    }
}

impl ScenarioConfig {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        text.parse()
    }

    /// Validates every invariant and builds the runtime scenario.
    pub fn build(&self) -> Result<Scenario, ConfigError> {
        let track = self.build_track()?;

        for (i, c) in self.current.velocity.iter().enumerate() {
            if !c.is_finite() {
                return err(format!("current velocity component {i} must be finite"));
            }
        }
        for (i, c) in self.current.ramp.iter().enumerate() {
            if !c.is_finite() {
                return err(format!("current ramp component {i} must be finite"));
            }
        }
        let current = CurrentModel {
            base: NedVector::new(
                self.current.velocity[0],
                self.current.velocity[1],
                self.current.velocity[2],
            )
            .map_err(|e| ConfigError(e.to_string()))?,
            ramp: NedVector::new(self.current.ramp[0], self.current.ramp[1], self.current.ramp[2])
                .map_err(|e| ConfigError(e.to_string()))?,
        };

        let vehicle = self.build_vehicle()?;
        let guidance = self.build_guidance()?;

        if !(self.sim.dt.is_finite() && self.sim.dt > 0.0) {
            return err("sim dt must be > 0");
        }
        if !(self.sim.duration.is_finite() && self.sim.duration > 0.0) {
            return err("sim duration must be > 0");
        }
        let switch_radius = self.sim.switch_radius.unwrap_or(2.0 * guidance.delta_h);
        if !(switch_radius.is_finite() && switch_radius > 0.0) {
            return err("sim switch_radius must be > 0");
        }
        if !(self.sim.convergence_tolerance.is_finite() && self.sim.convergence_tolerance > 0.0) {
            return err("sim convergence_tolerance must be > 0");
        }
        if self.output.decimation == 0 {
            return err("output decimation must be >= 1");
        }

        let initial_position = match self.vehicle.initial_position {
            None => None,
            Some([x, y, z]) => Some(
                NedVector::new(x, y, z)
                    .map_err(|_| ConfigError("initial_position must be finite".into()))?,
            ),
        };
        let initial_attitude = self.vehicle.initial_attitude.map(|[psi, theta]| (psi, theta));
        if let Some((_, theta)) = initial_attitude {
            if theta.abs() >= std::f64::consts::FRAC_PI_2 - 1e-6 {
                return err("initial_attitude pitch must stay inside the ±π/2 chart");
            }
        }

        let initial_estimates = EstimatorState {
            alpha_hat: self.guidance.initial_alpha_hat,
            beta_hat: self.guidance.initial_beta_hat,
        };
        let limit = guidance.proj_bound + guidance.proj_layer;
        if initial_estimates.alpha_hat.abs() > limit || initial_estimates.beta_hat.abs() > limit {
            return err("initial crab-angle estimates must lie inside proj_bound + proj_layer");
        }

        Ok(Scenario {
            track,
            current,
            vehicle,
            guidance,
            initial_position,
            initial_attitude,
            initial_estimates,
            dt: self.sim.dt,
            duration: self.sim.duration,
            switch_radius,
            convergence_tolerance: self.sim.convergence_tolerance,
            seed: self.sim.seed,
        })
    }

    fn build_track(&self) -> Result<Track, ConfigError> {
        match (&self.path.waypoints, &self.path.curve) {
            (Some(_), Some(_)) => err("path must give either waypoints or curve, not both"),
            (None, None) => err("path must give waypoints or a curve"),
            (Some(wps), None) => {
                if wps.len() < 2 {
                    return err("path needs at least two waypoints");
                }
                let waypoints = wps
                    .iter()
                    .map(|[x, y, z]| Waypoint::new(*x, *y, *z))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| ConfigError("waypoints must be finite".into()))?;
                Track::from_waypoints(&waypoints).map_err(|e| {
                    ConfigError(format!("waypoint path invalid: {e}"))
                })
            }
            (None, Some(curve)) => {
                let path = curve.build()?;
                Ok(Track::Curve(path))
            }
        }
    }

    fn build_vehicle(&self) -> Result<VehicleModel, ConfigError> {
        let [u, v, w] = self.vehicle.relative_velocity;
        let relative_velocity = crate::attitude::BodyVelocity::new(u, v, w)
            .map_err(|_| ConfigError("relative_velocity must be finite".into()))?;
        let base_speed = relative_velocity.speed();
        if base_speed <= 0.0 {
            return err("vehicle relative speed must be > 0");
        }
        let speed_profile = if self.vehicle.speed_sine_amplitude != 0.0 {
            if self.vehicle.speed_sine_amplitude < 0.0 {
                return err("speed_sine_amplitude must be >= 0");
            }
            if self.vehicle.speed_sine_amplitude >= base_speed {
                return err("speed_sine_amplitude must keep the speed positive (amplitude < base speed)");
            }
            if self.vehicle.speed_sine_period <= 0.0 {
                return err("speed_sine_period must be > 0");
            }
            Some(SpeedProfile {
                amplitude: self.vehicle.speed_sine_amplitude,
                period: self.vehicle.speed_sine_period,
            })
        } else {
            None
        };
        let autopilot = match self.vehicle.autopilot.as_str() {
            "perfect" => AutopilotModel::Perfect,
            "lag" => {
                if !(self.vehicle.time_constant.is_finite() && self.vehicle.time_constant > 0.0) {
                    return err("autopilot time_constant must be > 0 in lag mode");
                }
                AutopilotModel::FirstOrderLag {
                    time_constant: self.vehicle.time_constant,
                }
            }
            other => return err(format!("unknown autopilot mode '{other}' (perfect or lag)")),
        };
        let roll = match &self.vehicle.roll {
            None => RollProfile::Constant(0.0),
            Some(RollSpec::Constant { value }) => {
                if !value.is_finite() {
                    return err("roll value must be finite");
                }
                RollProfile::Constant(*value)
            }
            Some(RollSpec::Sinusoid { amplitude, period }) => {
                if !(amplitude.is_finite() && period.is_finite() && *period > 0.0) {
                    return err("roll sinusoid needs finite amplitude and period > 0");
                }
                RollProfile::Sinusoid {
                    amplitude: *amplitude,
                    period: *period,
                }
            }
        };
        Ok(VehicleModel {
            relative_velocity,
            speed_profile,
            autopilot,
            roll,
        })
    }

    fn build_guidance(&self) -> Result<GuidanceParams, ConfigError> {
        let gp = GuidanceParams {
            delta_h: self.guidance.delta_h,
            delta_v: self.guidance.delta_v,
            k_h: self.guidance.k_h,
            k_v: self.guidance.k_v,
            proj_bound: self.guidance.proj_bound,
            proj_layer: self.guidance.proj_layer,
        };
        gp.validate().map_err(|e| ConfigError(e.to_string()))?;
        Ok(gp)
    }
}

impl CurveSpec {
    pub fn build(&self) -> Result<CurvedPath, ConfigError> {
        let ned = |p: &[f64; 3], what: &str| {
            NedVector::new(p[0], p[1], p[2])
                .map_err(|_| ConfigError(format!("{what} must be finite")))
        };
        match self {
            CurveSpec::Straight {
                origin,
                azimuth,
                elevation,
                length,
            } => {
                if !(length.is_finite() && *length > 0.0) {
                    return err("straight curve length must be > 0");
                }
                if elevation.abs() >= std::f64::consts::FRAC_PI_2 - 1e-6 {
                    return err("straight curve elevation must stay inside ±π/2");
                }
                Ok(CurvedPath::Straight {
                    origin: ned(origin, "curve origin")?,
                    pi_h: *azimuth,
                    pi_v: *elevation,
                    length: *length,
                })
            }
            CurveSpec::HorizontalCircle {
                center,
                radius,
                varpi_max,
            } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return err("circle radius must be > 0");
                }
                if !(varpi_max.is_finite() && *varpi_max > 0.0) {
                    return err("curve varpi_max must be > 0");
                }
                Ok(CurvedPath::HorizontalCircle {
                    center: ned(center, "circle center")?,
                    radius: *radius,
                    varpi_max: *varpi_max,
                })
            }
            CurveSpec::VerticalArc {
                center,
                radius,
                azimuth,
                varpi_max,
            } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return err("arc radius must be > 0");
                }
                if !(varpi_max.is_finite() && *varpi_max > 0.0) {
                    return err("curve varpi_max must be > 0");
                }
                if *varpi_max >= std::f64::consts::FRAC_PI_2 - 1e-3 {
                    return err("vertical arc varpi_max must keep the tangent inside ±π/2");
                }
                Ok(CurvedPath::VerticalArc {
                    center: ned(center, "arc center")?,
                    radius: *radius,
                    azimuth: *azimuth,
                    varpi_max: *varpi_max,
                })
            }
            CurveSpec::Helix {
                center,
                radius,
                pitch_per_turn,
                varpi_max,
            } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return err("helix radius must be > 0");
                }
                if !pitch_per_turn.is_finite() {
                    return err("helix pitch_per_turn must be finite");
                }
                if !(varpi_max.is_finite() && *varpi_max > 0.0) {
                    return err("curve varpi_max must be > 0");
                }
                Ok(CurvedPath::Helix {
                    center: ned(center, "helix center")?,
                    radius: *radius,
                    pitch_per_turn: *pitch_per_turn,
                    varpi_max: *varpi_max,
                })
            }
        }
    }
}
