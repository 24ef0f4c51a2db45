//! Rigid-body attitude kinematics: the zyx Euler rotation, angle
//! normalization, and azimuth/elevation extraction of velocity vectors.
//!
//! Conventions: NED inertial frame (x North, y East, z Down), BODY frame
//! attached to the vehicle (x surge, y sway, z heave). All angles in radians.

use nalgebra::{Matrix3, Vector3};

use crate::Error;

/// Margin below π/2 at which the pitch chart is rejected rather than clamped.
const CHART_MARGIN: f64 = 1e-6;

/// Smallest signed angle: maps any finite angle to [-π, π).
///
/// `ssa(x) = mod(x + π, 2π) − π`, with the non-negative remainder. Inputs
/// already in the principal interval pass through bit-exactly, which makes
/// the operation exactly idempotent.
pub fn ssa(angle: f64) -> f64 {
    if (-std::f64::consts::PI..std::f64::consts::PI).contains(&angle) {
        return angle;
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let m = (angle + std::f64::consts::PI) % two_pi;
    let m = (m + two_pi) % two_pi;
    m - std::f64::consts::PI
}

/// Fallible variant of [`ssa`] for boundary-validated inputs.
pub fn try_ssa(angle: f64) -> Result<f64, Error> {
    if !angle.is_finite() {
        return Err(Error::NonFinite("angle"));
    }
    Ok(ssa(angle))
}

/// Roll, pitch and yaw following the zyx Euler convention.
///
/// Roll and yaw are normalized to [-π, π) at construction; pitch must stay
/// strictly inside ±π/2 or the chart is unusable. Pitch within 1e-6 rad of
/// the limit is rejected, not clamped, so chart misuse surfaces immediately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    phi: f64,
    theta: f64,
    psi: f64,
}

impl EulerAngles {
    pub fn new(phi: f64, theta: f64, psi: f64) -> Result<Self, Error> {
        if !(phi.is_finite() && theta.is_finite() && psi.is_finite()) {
            return Err(Error::NonFinite("euler angle"));
        }
        let theta = ssa(theta);
        if theta.abs() >= std::f64::consts::FRAC_PI_2 - CHART_MARGIN {
            return Err(Error::ChartSingularity(theta));
        }
        Ok(Self {
            phi: ssa(phi),
            theta,
            psi: ssa(psi),
        })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }
}

/// Linear velocity in the BODY frame: surge, sway, heave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyVelocity {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl BodyVelocity {
    pub fn new(u: f64, v: f64, w: f64) -> Result<Self, Error> {
        if !(u.is_finite() && v.is_finite() && w.is_finite()) {
            return Err(Error::NonFinite("body velocity component"));
        }
        Ok(Self { u, v, w })
    }

    /// Total speed U = √(u² + v² + w²).
    pub fn speed(&self) -> f64 {
        (self.u * self.u + self.v * self.v + self.w * self.w).sqrt()
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.u, self.v, self.w)
    }

    pub fn from_vector(v: Vector3<f64>) -> Self {
        Self {
            u: v.x,
            v: v.y,
            w: v.z,
        }
    }
}

/// A vector in the NED frame; used for both positions (m) and velocities (m/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NedVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl NedVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, Error> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite("NED component"));
        }
        Ok(Self { x, y, z })
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn from_vector(v: Vector3<f64>) -> Self {
        Self {
            x: v.x,
            y: v.y,
            z: v.z,
        }
    }

    pub fn norm(&self) -> f64 {
        self.to_vector().norm()
    }
}

/// A NED velocity in spherical form: total and horizontal speed plus the
/// course (azimuth) and flight-path (elevation) angles of the velocity vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalVelocity {
    speed_total: f64,
    speed_horizontal: f64,
    course: f64,
    flight_path: f64,
}

impl SphericalVelocity {
    /// Validates the spherical invariants: U ≥ U_h ≥ 0, U_h = U·cos(γ)
    /// within tolerance, course in [-π, π), flight path inside ±π/2.
    pub fn new(
        speed_total: f64,
        speed_horizontal: f64,
        course: f64,
        flight_path: f64,
    ) -> Result<Self, Error> {
        if !(speed_total.is_finite()
            && speed_horizontal.is_finite()
            && course.is_finite()
            && flight_path.is_finite())
        {
            return Err(Error::NonFinite("spherical velocity component"));
        }
        if speed_total <= 0.0 {
            return Err(Error::ZeroSpeed);
        }
        if speed_horizontal <= 0.0 {
            return Err(Error::DegenerateCourse);
        }
        if flight_path.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::ChartSingularity(flight_path));
        }
        if (speed_horizontal - speed_total * flight_path.cos()).abs()
            > crate::DEFAULT_TOLERANCE * speed_total.max(1.0)
        {
            return Err(Error::NonFinite("inconsistent horizontal speed"));
        }
        Ok(Self {
            speed_total,
            speed_horizontal,
            course: ssa(course),
            flight_path,
        })
    }

    pub fn speed_total(&self) -> f64 {
        self.speed_total
    }

    pub fn speed_horizontal(&self) -> f64 {
        self.speed_horizontal
    }

    pub fn course(&self) -> f64 {
        self.course
    }

    pub fn flight_path(&self) -> f64 {
        self.flight_path
    }

    /// Reconstructs the NED velocity U·(cosγ cosχ, cosγ sinχ, −sinγ).
    pub fn to_ned(&self) -> NedVector {
        NedVector {
            x: self.speed_total * self.flight_path.cos() * self.course.cos(),
            y: self.speed_total * self.flight_path.cos() * self.course.sin(),
            z: -self.speed_total * self.flight_path.sin(),
        }
    }
}

/// The zyx rotation matrix from BODY to NED, valid for |θ| < π/2.
///
/// Equals R_z(ψ)·R_y(θ)·R_x(φ); the entries are written out so the matrix is
/// the single source of truth rather than a composition order.
pub fn rotation_body_to_ned(att: &EulerAngles) -> Matrix3<f64> {
    let (sphi, cphi) = att.phi.sin_cos();
    let (sth, cth) = att.theta.sin_cos();
    let (spsi, cpsi) = att.psi.sin_cos();
    Matrix3::new(
        cpsi * cth,
        -spsi * cphi + cpsi * sth * sphi,
        spsi * sphi + cpsi * cphi * sth,
        spsi * cth,
        cpsi * cphi + sphi * sth * spsi,
        -cpsi * sphi + sth * spsi * cphi,
        -sth,
        cth * sphi,
        cth * cphi,
    )
}

/// NED velocity of a body-frame velocity at the given attitude: R(att)·v_b.
pub fn ned_velocity(att: &EulerAngles, vb: &BodyVelocity) -> NedVector {
    NedVector::from_vector(rotation_body_to_ned(att) * vb.to_vector())
}

/// Spherical decomposition of a NED velocity.
///
/// χ = atan2(ẏ, ẋ) and γ = asin(−ż/U). Fails when the total speed is zero or
/// the horizontal projection vanishes (vertical flight, course undefined).
pub fn spherical_velocity(vn: &NedVector) -> Result<SphericalVelocity, Error> {
    let speed_total = vn.norm();
    if speed_total == 0.0 {
        return Err(Error::ZeroSpeed);
    }
    let speed_horizontal = (vn.x * vn.x + vn.y * vn.y).sqrt();
    if speed_horizontal == 0.0 {
        return Err(Error::DegenerateCourse);
    }
    let course = vn.y.atan2(vn.x);
    let flight_path = clamped_asin(-vn.z / speed_total)?;
    Ok(SphericalVelocity {
        speed_total,
        speed_horizontal,
        course,
        flight_path,
    })
}

/// asin with clamping of pure floating-point overshoot.
///
/// Arguments within 1e-12 outside [-1, 1] are clamped; anything further out
/// is a genuine domain violation and errors.
pub(crate) fn clamped_asin(arg: f64) -> Result<f64, Error> {
    const OVERSHOOT: f64 = 1e-12;
    if arg.abs() <= 1.0 {
        Ok(arg.asin())
    } else if arg.abs() <= 1.0 + OVERSHOOT {
        Ok(arg.clamp(-1.0, 1.0).asin())
    } else {
        Err(Error::AsinDomain(arg))
    }
}
