//! Waypoints, the PATH frame, tracking errors, and curved-path geometry.
//!
//! The PATH frame {p} is built from two successive rotations: about the
//! inertial z-axis by the path azimuth π_h, then about the resulting y-axis
//! by the path elevation π_v. Track errors are the vehicle position relative
//! to the frame origin, expressed in {p}:
//!
//! ```text
//! e_p = R_yᵀ(π_v) · R_zᵀ(π_h) · (p − origin)
//! ```
//!
//! For straight segments the frame is fixed per segment. For regular curved
//! paths the frame rides along the curve at parameter ϖ, chosen at runtime so
//! the along-track error stays identically zero; the frame then has angular
//! velocity ω_p = (−sin(π_v)·π̇_h, π̇_v, cos(π_v)·π̇_h), which couples the
//! cross- and vertical-track error rates through ω_x.

use nalgebra::{Matrix3, Vector3};

use crate::attitude::{ssa, NedVector};
use crate::Error;

const ELEVATION_MARGIN: f64 = 1e-6;

/// A path waypoint in NED coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Waypoint {
    pub position: NedVector,
}

impl Waypoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, Error> {
        Ok(Self {
            position: NedVector::new(x, y, z)?,
        })
    }
}

/// Geometry of one straight path segment: frame origin at the start
/// waypoint, azimuth π_h, elevation π_v, and segment length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentGeometry {
    pub origin: NedVector,
    pub pi_h: f64,
    pub pi_v: f64,
    pub length: f64,
}

/// Along-, cross- and vertical-track errors in the PATH frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackingError {
    pub x_e: f64,
    pub y_e: f64,
    pub z_e: f64,
}

/// Angular velocity of the moving PATH frame, expressed in {p}, and the
/// path-parameter rate that keeps x_e = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathFrameRates {
    pub omega_x: f64,
    pub omega_y: f64,
    pub omega_z: f64,
    pub varpi_dot: f64,
}

/// Rotation from {p} to {n}: R_z(π_h)·R_y(π_v).
pub fn path_frame_rotation(pi_h: f64, pi_v: f64) -> Matrix3<f64> {
    let (sh, ch) = pi_h.sin_cos();
    let (sv, cv) = pi_v.sin_cos();
    // R_z(π_h) * R_y(π_v)
    Matrix3::new(
        ch * cv,
        -sh,
        ch * sv,
        sh * cv,
        ch,
        sh * sv,
        -sv,
        0.0,
        cv,
    )
}

/// Builds segment geometry between two successive waypoints.
///
/// π_h = atan2(Δy, Δx); π_v = atan2(−Δz, √(Δx² + Δy²)), so a path that
/// ascends in NED (Δz < 0) has π_v > 0 and the segment direction maps to the
/// {p} x-axis. Vertical segments sit on the chart limit and are rejected.
pub fn segment_geometry(wp_i: &Waypoint, wp_next: &Waypoint) -> Result<SegmentGeometry, Error> {
    let delta = wp_next.position.to_vector() - wp_i.position.to_vector();
    let length = delta.norm();
    if length == 0.0 {
        return Err(Error::DegenerateSegment);
    }
    let horizontal = (delta.x * delta.x + delta.y * delta.y).sqrt();
    let pi_v = (-delta.z).atan2(horizontal);
    if pi_v.abs() >= std::f64::consts::FRAC_PI_2 - ELEVATION_MARGIN {
        return Err(Error::VerticalSegment);
    }
    Ok(SegmentGeometry {
        origin: wp_i.position,
        pi_h: delta.y.atan2(delta.x),
        pi_v,
        length,
    })
}

/// Track errors of a position relative to a straight segment.
pub fn tracking_errors(seg: &SegmentGeometry, p: &NedVector) -> TrackingError {
    let e = path_frame_rotation(seg.pi_h, seg.pi_v).transpose()
        * (p.to_vector() - seg.origin.to_vector());
    TrackingError {
        x_e: e.x,
        y_e: e.y,
        z_e: e.z,
    }
}

/// Sphere-of-acceptance switching: true once the along-track progress is
/// within `radius` of the segment end (strict inequality).
pub fn switch_segment(seg: &SegmentGeometry, err: &TrackingError, radius: f64) -> bool {
    err.x_e > seg.length - radius
}

/// One sample of a curved path descriptor at parameter ϖ: position, tangent
/// angles, parametrization speed ‖p′(ϖ)‖, and the tangent-angle derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub position: NedVector,
    pub pi_h: f64,
    pub pi_v: f64,
    /// ‖p′(ϖ)‖, meters per unit ϖ; positive everywhere for a regular path.
    pub speed: f64,
    pub dpi_h: f64,
    pub dpi_v: f64,
}

/// A regular parametrized curved path over ϖ ∈ [0, ϖ_max].
///
/// Descriptors are analytic: positions and tangent angles come with exact
/// derivatives, so stability experiments carry no interpolation error.
#[derive(Debug, Clone, PartialEq)]
pub enum CurvedPath {
    /// A straight line as a degenerate curve, parametrized by arc length.
    Straight {
        origin: NedVector,
        pi_h: f64,
        pi_v: f64,
        length: f64,
    },
    /// Horizontal circle of radius `radius` about `center`, counterclockwise
    /// seen from above; ϖ is the polar angle.
    HorizontalCircle {
        center: NedVector,
        radius: f64,
        varpi_max: f64,
    },
    /// Circular arc in the vertical plane of azimuth `azimuth`; ϖ is the arc
    /// angle, with π_v = −ϖ (the arc bends downward for increasing ϖ).
    VerticalArc {
        center: NedVector,
        radius: f64,
        azimuth: f64,
        varpi_max: f64,
    },
    /// Helix about a vertical axis through `center`: radius `radius`, climb
    /// of `pitch_per_turn` meters per 2π of ϖ (positive = ascending in NED).
    Helix {
        center: NedVector,
        radius: f64,
        pitch_per_turn: f64,
        varpi_max: f64,
    },
}

impl CurvedPath {
    pub fn varpi_max(&self) -> f64 {
        match self {
            CurvedPath::Straight { length, .. } => *length,
            CurvedPath::HorizontalCircle { varpi_max, .. }
            | CurvedPath::VerticalArc { varpi_max, .. }
            | CurvedPath::Helix { varpi_max, .. } => *varpi_max,
        }
    }

    /// Evaluates the descriptor. Fails outside [0, ϖ_max] or where the
    /// tangent elevation hits the ±π/2 chart limit.
    pub fn sample(&self, varpi: f64) -> Result<PathSample, Error> {
        if !varpi.is_finite() || varpi < 0.0 || varpi > self.varpi_max() {
            return Err(Error::VarpiOutOfRange(varpi, self.varpi_max()));
        }
        let sample = match *self {
            CurvedPath::Straight {
                origin,
                pi_h,
                pi_v,
                ..
            } => {
                let dir = path_frame_rotation(pi_h, pi_v) * Vector3::new(1.0, 0.0, 0.0);
                PathSample {
                    position: NedVector::from_vector(origin.to_vector() + varpi * dir),
                    pi_h,
                    pi_v,
                    speed: 1.0,
                    dpi_h: 0.0,
                    dpi_v: 0.0,
                }
            }
            CurvedPath::HorizontalCircle { center, radius, .. } => {
                let (s, c) = varpi.sin_cos();
                PathSample {
                    position: NedVector {
                        x: center.x + radius * c,
                        y: center.y + radius * s,
                        z: center.z,
                    },
                    pi_h: ssa(varpi + std::f64::consts::FRAC_PI_2),
                    pi_v: 0.0,
                    speed: radius,
                    dpi_h: 1.0,
                    dpi_v: 0.0,
                }
            }
            CurvedPath::VerticalArc {
                center,
                radius,
                azimuth,
                ..
            } => {
                // p(ϖ) = center + R·(sinϖ·cosA, sinϖ·sinA, 1 − cosϖ)
                // tangent = R·(cosϖ·cosA, cosϖ·sinA, sinϖ): π_h = A, π_v = −ϖ
                let (s, c) = varpi.sin_cos();
                PathSample {
                    position: NedVector {
                        x: center.x + radius * s * azimuth.cos(),
                        y: center.y + radius * s * azimuth.sin(),
                        z: center.z + radius * (1.0 - c),
                    },
                    pi_h: azimuth,
                    pi_v: -varpi,
                    speed: radius,
                    dpi_h: 0.0,
                    dpi_v: -1.0,
                }
            }
            CurvedPath::Helix {
                center,
                radius,
                pitch_per_turn,
                ..
            } => {
                let climb = pitch_per_turn / (2.0 * std::f64::consts::PI);
                let (s, c) = varpi.sin_cos();
                PathSample {
                    position: NedVector {
                        x: center.x + radius * c,
                        y: center.y + radius * s,
                        z: center.z - climb * varpi,
                    },
                    pi_h: ssa(varpi + std::f64::consts::FRAC_PI_2),
                    pi_v: climb.atan2(radius),
                    speed: (radius * radius + climb * climb).sqrt(),
                    dpi_h: 1.0,
                    dpi_v: 0.0,
                }
            }
        };
        if sample.pi_v.abs() >= std::f64::consts::FRAC_PI_2 - ELEVATION_MARGIN {
            return Err(Error::VerticalSegment);
        }
        if sample.speed <= 0.0 {
            return Err(Error::DegenerateSegment);
        }
        Ok(sample)
    }
}

/// Track errors of a position relative to the frame at parameter ϖ, plus the
/// descriptor sample the frame was built from.
pub fn curved_errors(
    path: &CurvedPath,
    varpi: f64,
    p: &NedVector,
) -> Result<(TrackingError, PathSample), Error> {
    let sample = path.sample(varpi)?;
    let e = path_frame_rotation(sample.pi_h, sample.pi_v).transpose()
        * (p.to_vector() - sample.position.to_vector());
    Ok((
        TrackingError {
            x_e: e.x,
            y_e: e.y,
            z_e: e.z,
        },
        sample,
    ))
}

/// Frame rates at a descriptor sample, given the along-track component v_x of
/// the vehicle's NED velocity in {p}.
///
/// The path-parameter rate is solved from the along-track balance so that
/// ẋ_e = 0 when x_e = 0:
///
/// ```text
/// ϖ̇ = v_x / (‖p′‖ + (dπ_v/dϖ)·z_e − cos(π_v)·(dπ_h/dϖ)·y_e)
/// ```
///
/// The frame angular velocity follows from π̇_h = (dπ_h/dϖ)·ϖ̇ and
/// π̇_v = (dπ_v/dϖ)·ϖ̇ as ω = (−sin(π_v)·π̇_h, π̇_v, cos(π_v)·π̇_h).
pub fn frame_rates(
    sample: &PathSample,
    err: &TrackingError,
    v_p_x: f64,
) -> Result<PathFrameRates, Error> {
    let denominator =
        sample.speed + sample.dpi_v * err.z_e - sample.pi_v.cos() * sample.dpi_h * err.y_e;
    if denominator.abs() < 1e-9 {
        return Err(Error::PathFrameSingularity {
            varpi: f64::NAN,
            denominator,
        });
    }
    let varpi_dot = v_p_x / denominator;
    let pi_h_dot = sample.dpi_h * varpi_dot;
    let pi_v_dot = sample.dpi_v * varpi_dot;
    Ok(PathFrameRates {
        omega_x: -sample.pi_v.sin() * pi_h_dot,
        omega_y: pi_v_dot,
        omega_z: sample.pi_v.cos() * pi_h_dot,
        varpi_dot,
    })
}

/// Track errors and frame rates for a curved path at parameter ϖ.
pub fn curved_errors_and_rates(
    path: &CurvedPath,
    varpi: f64,
    p: &NedVector,
    vn: &NedVector,
) -> Result<(TrackingError, PathFrameRates), Error> {
    let (err, sample) = curved_errors(path, varpi, p)?;
    let v_p = path_frame_rotation(sample.pi_h, sample.pi_v).transpose() * vn.to_vector();
    let rates = frame_rates(&sample, &err, v_p.x).map_err(|e| match e {
        Error::PathFrameSingularity { denominator, .. } => Error::PathFrameSingularity {
            varpi,
            denominator,
        },
        other => other,
    })?;
    Ok((err, rates))
}

/// Cross- and vertical-track error rates for the moving frame with x_e = 0:
///
/// ```text
/// ẏ_e = v_y + ω_x·z_e
/// ż_e = v_z − ω_x·y_e
/// ```
///
/// `v_y`, `v_z` are the {p}-frame components of the vehicle NED velocity.
pub fn curved_error_rates(
    err: &TrackingError,
    rates: &PathFrameRates,
    v_p_y: f64,
    v_p_z: f64,
) -> (f64, f64) {
    (
        v_p_y + rates.omega_x * err.z_e,
        v_p_z - rates.omega_x * err.y_e,
    )
}

/// Solves for the path parameter that zeroes the along-track error at `p`,
/// starting from `varpi_guess`. Newton iteration with the exact derivative of
/// x_e(ϖ); fails if no root is found inside the domain.
pub fn solve_varpi_for_position(
    path: &CurvedPath,
    p: &NedVector,
    varpi_guess: f64,
) -> Result<f64, Error> {
    let mut varpi = varpi_guess.clamp(0.0, path.varpi_max());
    for _ in 0..50 {
        let sample = path.sample(varpi)?;
        let rot = path_frame_rotation(sample.pi_h, sample.pi_v);
        let e = rot.transpose() * (p.to_vector() - sample.position.to_vector());
        if e.x.abs() < 1e-12 {
            return Ok(varpi);
        }
        // d(x_e)/dϖ = −‖p′‖ − (dπ_v/dϖ)·z_e + cos(π_v)·(dπ_h/dϖ)·y_e
        let slope = -(sample.speed + sample.dpi_v * e.z - sample.pi_v.cos() * sample.dpi_h * e.y);
        if slope.abs() < 1e-12 {
            return Err(Error::NoPathProjection);
        }
        varpi = (varpi - e.x / slope).clamp(0.0, path.varpi_max());
    }
    Err(Error::NoPathProjection)
}
