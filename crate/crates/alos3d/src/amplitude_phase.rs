//! Amplitude-phase decompositions of the NED kinematics.
//!
//! Both decompositions rewrite the NED velocity as speed amplitudes times
//! sinusoids of (vehicle angle + crab angle):
//!
//! ```text
//! body-velocity:  ẋ = U_h* cos(ψ + β_c*),  ẏ = U_h* sin(ψ + β_c*),  ż = −U_v* sin(θ − α_c*)
//! spherical:      ẋ = U_h  cos(ψ + β_c ),  ẏ = U_h  sin(ψ + β_c ),  ż = −U   sin(θ − α_c )
//! ```
//!
//! The horizontal pairs are identical (β_c* ≡ β_c and U_h* ≡ U_h), but the
//! vertical pairs differ. The body-velocity vertical crab angle α_c* lives in
//! the vertical plane of the body x-axis and loses definition when the
//! velocity projection into that plane vanishes (|β_c| → π/2). The spherical
//! vertical crab angle α_c = θ − γ is defined in the vertical plane of the
//! velocity vector and survives for any U > 0. The two agree only when
//! β_c = 0 or γ = 0; [`alpha_star_from_spherical`] is the exact relation
//! between them.

use crate::attitude::{
    clamped_asin, ssa, BodyVelocity, EulerAngles, NedVector, SphericalVelocity,
};
use crate::Error;

/// The spherical crab-angle pair with its speed amplitudes.
///
/// `beta_c = ssa(χ − ψ)` and `alpha_c = θ − γ`. Defined for U_h > 0 and
/// |θ| ≠ π/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrabAngles {
    pub alpha_c: f64,
    pub beta_c: f64,
    pub speed_total: f64,
    pub speed_horizontal: f64,
}

/// The body-velocity crab-angle pair with its speed amplitudes.
///
/// The single-quadrant arctangent in the α_c* definition restricts it to
/// (−π/2, π/2) and requires u > 0 in practice; α_c* is undefined outright
/// when the vertical-plane speed U_v* vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyCrabAngles {
    pub alpha_c_star: f64,
    pub beta_c_star: f64,
    pub speed_vertical_plane: f64,
    pub speed_horizontal_star: f64,
}

/// Spherical crab angles straight from their definition:
/// β_c = ssa(χ − ψ), α_c = θ − γ.
pub fn spherical_crab_from_angles(
    att: &EulerAngles,
    sv: &SphericalVelocity,
) -> Result<CrabAngles, Error> {
    if sv.speed_horizontal() <= 0.0 {
        return Err(Error::DegenerateCourse);
    }
    Ok(CrabAngles {
        alpha_c: att.theta() - sv.flight_path(),
        beta_c: ssa(sv.course() - att.psi()),
        speed_total: sv.speed_total(),
        speed_horizontal: sv.speed_horizontal(),
    })
}

/// Spherical crab angles expressed through body velocities and Euler angles:
///
/// ```text
/// α_c = θ − asin((u sinθ − [v sinφ + w cosφ] cosθ) / U)
/// β_c = atan2(v cosφ − w sinφ,  u cosθ + [v sinφ + w cosφ] sinθ)
/// ```
///
/// Agrees with [`spherical_crab_from_angles`] applied to the NED velocity of
/// the same state, up to floating point.
pub fn spherical_crab_from_body(
    att: &EulerAngles,
    vb: &BodyVelocity,
) -> Result<CrabAngles, Error> {
    let speed_total = vb.speed();
    if speed_total == 0.0 {
        return Err(Error::ZeroSpeed);
    }
    let (sphi, cphi) = att.phi().sin_cos();
    let (sth, cth) = att.theta().sin_cos();
    let lateral = vb.v * sphi + vb.w * cphi;

    let flight_path = clamped_asin((vb.u * sth - lateral * cth) / speed_total)?;
    let alpha_c = att.theta() - flight_path;
    let beta_c = (vb.v * cphi - vb.w * sphi).atan2(vb.u * cth + lateral * sth);
    let speed_horizontal = speed_total * flight_path.cos();
    if speed_horizontal <= 0.0 {
        return Err(Error::DegenerateCourse);
    }
    Ok(CrabAngles {
        alpha_c,
        beta_c,
        speed_total,
        speed_horizontal,
    })
}

/// Body-velocity crab angles and amplitudes:
///
/// ```text
/// α_c* = atan((v sinφ + w cosφ) / u)
/// U_v* = √(u² + (v sinφ + w cosφ)²)
/// β_c* = atan((v cosφ − w sinφ) / (U_v* cos(θ − α_c*)))
/// U_h* = √((U_v* cos(θ − α_c*))² + (v cosφ − w sinφ)²)
/// ```
pub fn body_crab_angles(att: &EulerAngles, vb: &BodyVelocity) -> Result<BodyCrabAngles, Error> {
    let (sphi, cphi) = att.phi().sin_cos();
    let lateral = vb.v * sphi + vb.w * cphi;
    let speed_vertical_plane = (vb.u * vb.u + lateral * lateral).sqrt();
    if speed_vertical_plane == 0.0 {
        return Err(Error::VerticalCrabUndefined);
    }
    if vb.u == 0.0 {
        return Err(Error::SurgeDomain);
    }
    let alpha_c_star = (lateral / vb.u).atan();
    let horizontal_inline = speed_vertical_plane * (att.theta() - alpha_c_star).cos();
    let horizontal_cross = vb.v * cphi - vb.w * sphi;
    if horizontal_inline == 0.0 {
        return Err(Error::VerticalCrabUndefined);
    }
    Ok(BodyCrabAngles {
        alpha_c_star,
        beta_c_star: (horizontal_cross / horizontal_inline).atan(),
        speed_vertical_plane,
        speed_horizontal_star: (horizontal_inline * horizontal_inline
            + horizontal_cross * horizontal_cross)
            .sqrt(),
    })
}

/// The exact relation between the two vertical crab angles:
///
/// ```text
/// α_c* = α_c + γ − atan(tan(γ) / cos(β_c))
/// ```
///
/// valid for cos(β_c) ≠ 0. The two angles coincide exactly when β_c = 0 or
/// γ = 0. The flight path γ is taken explicitly; the relation is a function
/// of (α_c, β_c, γ) only.
pub fn alpha_star_from_spherical(alpha_c: f64, beta_c: f64, gamma: f64) -> Result<f64, Error> {
    let cos_beta = beta_c.cos();
    if cos_beta.abs() < crate::DEFAULT_TOLERANCE {
        return Err(Error::CrabRelationSingular(cos_beta));
    }
    Ok(alpha_c + gamma - (gamma.tan() / cos_beta).atan())
}

/// NED velocity from the spherical amplitude-phase model.
pub fn spherical_ap_velocity(att: &EulerAngles, ca: &CrabAngles) -> NedVector {
    let horizontal_angle = att.psi() + ca.beta_c;
    NedVector {
        x: ca.speed_horizontal * horizontal_angle.cos(),
        y: ca.speed_horizontal * horizontal_angle.sin(),
        z: -ca.speed_total * (att.theta() - ca.alpha_c).sin(),
    }
}

/// NED velocity from the body-velocity amplitude-phase model.
pub fn body_ap_velocity(att: &EulerAngles, bca: &BodyCrabAngles) -> NedVector {
    let horizontal_angle = att.psi() + bca.beta_c_star;
    NedVector {
        x: bca.speed_horizontal_star * horizontal_angle.cos(),
        y: bca.speed_horizontal_star * horizontal_angle.sin(),
        z: -bca.speed_vertical_plane * (att.theta() - bca.alpha_c_star).sin(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attitude::{ned_velocity, rotation_body_to_ned, spherical_velocity};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    /// States where every operation in this module is defined: forward-
    /// dominated surge keeps u cosθ + (v sinφ + w cosφ) sinθ > 0, hence
    /// |β_c| < π/2, and the body formulation stays out of its singularity.
    fn random_valid_state(rng: &mut ChaCha8Rng) -> (EulerAngles, BodyVelocity) {
        let att = EulerAngles::new(
            rng.gen_range(-0.3..0.3),
            rng.gen_range(-0.4..0.4),
            rng.gen_range(-PI..PI),
        )
        .unwrap();
        let vb = BodyVelocity::new(
            rng.gen_range(1.0..3.0),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
        )
        .unwrap();
        (att, vb)
    }

    fn definition_route(att: &EulerAngles, vb: &BodyVelocity) -> CrabAngles {
        let sv = spherical_velocity(&ned_velocity(att, vb)).unwrap();
        spherical_crab_from_angles(att, &sv).unwrap()
    }

    #[test]
    fn spherical_crab_aligned_velocity_is_zero() {
        // χ = ψ and γ = θ: crab angles vanish.
        let att = EulerAngles::new(0.0, 0.2, 0.7).unwrap();
        let sv = SphericalVelocity::new(2.0, 2.0 * 0.2f64.cos(), 0.7, 0.2).unwrap();
        let ca = spherical_crab_from_angles(&att, &sv).unwrap();
        assert_eq!(ca.alpha_c, 0.0);
        assert_eq!(ca.beta_c, 0.0);
    }

    #[test]
    fn spherical_crab_wraps_course_difference() {
        // ψ = 3, χ = −3: β_c = ssa(−6) = 2π − 6
        let att = EulerAngles::new(0.0, 0.0, 3.0).unwrap();
        let sv = SphericalVelocity::new(1.0, 1.0, -3.0, 0.0).unwrap();
        let ca = spherical_crab_from_angles(&att, &sv).unwrap();
        assert!((ca.beta_c - (2.0 * PI - 6.0)).abs() < 1e-12);
    }

    #[test]
    fn spherical_crab_from_body_general_state() {
        let att = EulerAngles::new(0.1, 0.2, 0.5).unwrap();
        let vb = BodyVelocity::new(2.0, 0.5, 0.3).unwrap();
        let direct = spherical_crab_from_body(&att, &vb).unwrap();
        let via_definition = definition_route(&att, &vb);
        assert!((direct.alpha_c - via_definition.alpha_c).abs() < 1e-14);
        assert!((direct.beta_c - via_definition.beta_c).abs() < 1e-14);
        assert!((direct.speed_total - via_definition.speed_total).abs() < 1e-14);
        assert!((direct.speed_horizontal - via_definition.speed_horizontal).abs() < 1e-14);
        // frozen values from the definition route
        assert!((direct.alpha_c - 0.17318031111575044).abs() < 1e-12);
        assert!((direct.beta_c - 0.2264431571131751).abs() < 1e-12);
    }

    #[test]
    fn spherical_crab_pure_surge_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..100 {
            let att = EulerAngles::new(
                rng.gen_range(-PI..PI),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-PI..PI),
            )
            .unwrap();
            let vb = BodyVelocity::new(rng.gen_range(0.5..3.0), 0.0, 0.0).unwrap();
            let ca = spherical_crab_from_body(&att, &vb).unwrap();
            assert!(ca.alpha_c.abs() < 1e-12, "alpha_c = {}", ca.alpha_c);
            assert!(ca.beta_c.abs() < 1e-12, "beta_c = {}", ca.beta_c);
        }
    }

    #[test]
    fn spherical_crab_planar_45_degrees() {
        let att = EulerAngles::new(0.0, 0.0, 0.0).unwrap();
        let vb = BodyVelocity::new(1.0, 1.0, 0.0).unwrap();
        let ca = spherical_crab_from_body(&att, &vb).unwrap();
        assert!((ca.beta_c - FRAC_PI_4).abs() < 1e-15);
        assert!(ca.alpha_c.abs() < 1e-15);
    }

    #[test]
    fn spherical_routes_agree_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let (att, vb) = random_valid_state(&mut rng);
            let a = spherical_crab_from_body(&att, &vb).unwrap();
            let b = definition_route(&att, &vb);
            assert!((a.alpha_c - b.alpha_c).abs() < 1e-12);
            assert!(ssa(a.beta_c - b.beta_c).abs() < 1e-12);
            assert!((a.speed_horizontal - b.speed_horizontal).abs() < 1e-12);
        }
    }

    #[test]
    fn body_crab_zero_sway_heave() {
        let att = EulerAngles::new(0.3, 0.0, 1.0).unwrap();
        let vb = BodyVelocity::new(1.5, 0.0, 0.0).unwrap();
        let bca = body_crab_angles(&att, &vb).unwrap();
        assert_eq!(bca.alpha_c_star, 0.0);
        assert_eq!(bca.beta_c_star, 0.0);
        assert_eq!(bca.speed_vertical_plane, 1.5);
        assert_eq!(bca.speed_horizontal_star, 1.5);
        // straight-and-level pure surge: (u cos ψ, u sin ψ, 0)
        let v = body_ap_velocity(&att, &bca);
        assert!((v.x - 1.5 * 1.0f64.cos()).abs() < 1e-15);
        assert!((v.y - 1.5 * 1.0f64.sin()).abs() < 1e-15);
        assert_eq!(v.z, 0.0);
    }

    #[test]
    fn body_crab_direct_substitution() {
        // φ = 0, θ = 0, vb = (1, 0, 1): α_c* = atan(1) = π/4, U_v* = √2
        let att = EulerAngles::new(0.0, 0.0, 0.0).unwrap();
        let vb = BodyVelocity::new(1.0, 0.0, 1.0).unwrap();
        let bca = body_crab_angles(&att, &vb).unwrap();
        assert!((bca.alpha_c_star - FRAC_PI_4).abs() < 1e-15);
        assert!((bca.speed_vertical_plane - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn body_crab_general_state_matches_literal_formulas() {
        let att = EulerAngles::new(0.1, 0.2, 0.5).unwrap();
        let vb = BodyVelocity::new(2.0, 0.5, 0.3).unwrap();
        let bca = body_crab_angles(&att, &vb).unwrap();
        // literal evaluation, independent of the implementation
        let lateral = 0.5 * 0.1f64.sin() + 0.3 * 0.1f64.cos();
        let alpha = (lateral / 2.0).atan();
        let uv = (4.0 + lateral * lateral).sqrt();
        let inline = uv * (0.2 - alpha).cos();
        let cross = 0.5 * 0.1f64.cos() - 0.3 * 0.1f64.sin();
        assert!((bca.alpha_c_star - alpha).abs() < 1e-15);
        assert!((bca.speed_vertical_plane - uv).abs() < 1e-15);
        assert!((bca.beta_c_star - (cross / inline).atan()).abs() < 1e-15);
        assert!(
            (bca.speed_horizontal_star - (inline * inline + cross * cross).sqrt()).abs() < 1e-15
        );
        // frozen
        assert!((bca.alpha_c_star - 0.17247804762720015).abs() < 1e-12);
    }

    #[test]
    fn body_crab_error_paths() {
        let att = EulerAngles::new(0.0, 0.0, 0.0).unwrap();
        // pure sway at zero roll: the velocity leaves the body-x vertical
        // plane entirely (the |β_c| = π/2 singularity), U_v* = 0
        assert_eq!(
            body_crab_angles(&att, &BodyVelocity::new(0.0, 1.0, 0.0).unwrap()),
            Err(Error::VerticalCrabUndefined)
        );
        // zero surge with nonzero heave: U_v* > 0 but the single-quadrant
        // arctangent has no defined value
        assert_eq!(
            body_crab_angles(&att, &BodyVelocity::new(0.0, 0.0, 1.0).unwrap()),
            Err(Error::SurgeDomain)
        );
    }

    #[test]
    fn horizontal_pair_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100_000 {
            let (att, vb) = random_valid_state(&mut rng);
            let ca = spherical_crab_from_body(&att, &vb).unwrap();
            let bca = body_crab_angles(&att, &vb).unwrap();
            assert!(
                ssa(ca.beta_c - bca.beta_c_star).abs() < 1e-9,
                "beta mismatch: {} vs {}",
                ca.beta_c,
                bca.beta_c_star
            );
            assert!(
                (ca.speed_horizontal - bca.speed_horizontal_star).abs() < 1e-9,
                "U_h mismatch"
            );
        }
    }

    #[test]
    fn alpha_relation_collapses_when_beta_or_gamma_zero() {
        // β_c = 0: α_c + γ − atan(tan γ), equal up to rounding in tan/atan
        assert!((alpha_star_from_spherical(0.1, 0.0, 0.2).unwrap() - 0.1).abs() < 1e-15);
        // γ = 0: tan(0) = 0 exactly
        assert_eq!(alpha_star_from_spherical(0.1, 0.4, 0.0).unwrap(), 0.1);
    }

    #[test]
    fn alpha_relation_general_value() {
        // Construct a state realizing (α_c, β_c, γ) = (0.1, 0.4, 0.2) and
        // evaluate the single-quadrant arctangent definition of α_c* on it.
        let (alpha_c, beta_c, gamma) = (0.1f64, 0.4f64, 0.2f64);
        let theta = gamma + alpha_c;
        let att = EulerAngles::new(0.0, theta, 0.0).unwrap();
        let speed = 2.0;
        let vn = NedVector {
            x: speed * gamma.cos() * beta_c.cos(),
            y: speed * gamma.cos() * beta_c.sin(),
            z: -speed * gamma.sin(),
        };
        let vb = BodyVelocity::from_vector(
            rotation_body_to_ned(&att).transpose() * vn.to_vector(),
        );
        let oracle = body_crab_angles(&att, &vb).unwrap().alpha_c_star;
        let relation = alpha_star_from_spherical(alpha_c, beta_c, gamma).unwrap();
        assert!(
            (relation - oracle).abs() < 1e-12,
            "relation {relation} vs oracle {oracle}"
        );
        // frozen from the oracle
        assert!((relation - 0.08337035338203927).abs() < 1e-12);
    }

    #[test]
    fn alpha_relation_matches_body_formula_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10_000 {
            let (att, vb) = random_valid_state(&mut rng);
            let ca = spherical_crab_from_body(&att, &vb).unwrap();
            let gamma = att.theta() - ca.alpha_c;
            let predicted = alpha_star_from_spherical(ca.alpha_c, ca.beta_c, gamma).unwrap();
            let actual = body_crab_angles(&att, &vb).unwrap().alpha_c_star;
            assert!(
                (predicted - actual).abs() < 1e-9,
                "relation residual {}",
                predicted - actual
            );
        }
    }

    #[test]
    fn ap_velocity_trivial_cases() {
        let att = EulerAngles::new(0.0, 0.0, 0.0).unwrap();
        let ca = CrabAngles {
            alpha_c: 0.0,
            beta_c: 0.0,
            speed_total: 2.0,
            speed_horizontal: 2.0,
        };
        let v = spherical_ap_velocity(&att, &ca);
        assert_eq!((v.x, v.y, v.z), (2.0, 0.0, 0.0));

        // ψ + β_c = π/2
        let att = EulerAngles::new(0.0, 0.1, FRAC_PI_4).unwrap();
        let ca = CrabAngles {
            alpha_c: 0.05,
            beta_c: FRAC_PI_4,
            speed_total: 2.0,
            speed_horizontal: 2.0 * 0.05f64.cos(),
        };
        let v = spherical_ap_velocity(&att, &ca);
        assert!(v.x.abs() < 1e-15);
        assert!((v.y - ca.speed_horizontal).abs() < 1e-15);
        assert!((v.z + 2.0 * (0.1f64 - 0.05).sin()).abs() < 1e-15);
    }

    #[test]
    fn body_ap_velocity_substitution_case() {
        // φ = 0, θ = 0, ψ = 0, vb = (1, 0, 1): ẋ = 1, ẏ = 0, ż = 1
        let att = EulerAngles::new(0.0, 0.0, 0.0).unwrap();
        let vb = BodyVelocity::new(1.0, 0.0, 1.0).unwrap();
        let bca = body_crab_angles(&att, &vb).unwrap();
        let v = body_ap_velocity(&att, &bca);
        assert!((v.x - 1.0).abs() < 1e-15);
        assert!(v.y.abs() < 1e-15);
        assert!((v.z - 1.0).abs() < 1e-12);
    }

    #[test]
    fn both_models_reconstruct_rotation_velocity() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..100_000 {
            let (att, vb) = random_valid_state(&mut rng);
            let reference = ned_velocity(&att, &vb);
            let ca = spherical_crab_from_body(&att, &vb).unwrap();
            let bca = body_crab_angles(&att, &vb).unwrap();
            let vs = spherical_ap_velocity(&att, &ca);
            let vbm = body_ap_velocity(&att, &bca);
            for (got, want) in [
                (vs.x, reference.x),
                (vs.y, reference.y),
                (vs.z, reference.z),
                (vbm.x, reference.x),
                (vbm.y, reference.y),
                (vbm.z, reference.z),
            ] {
                assert!((got - want).abs() < 1e-9, "{got} vs {want}");
            }
        }
    }

    #[test]
    fn proof_identities_hold_on_random_states() {
        // u cosθ + (v sinφ + w cosφ) sinθ = U_h cos β_c
        // v cosφ − w sinφ               = U_h sin β_c
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..10_000 {
            let (att, vb) = random_valid_state(&mut rng);
            let ca = spherical_crab_from_body(&att, &vb).unwrap();
            let (sphi, cphi) = att.phi().sin_cos();
            let (sth, cth) = att.theta().sin_cos();
            let lateral = vb.v * sphi + vb.w * cphi;
            let lhs_cos = vb.u * cth + lateral * sth;
            let lhs_sin = vb.v * cphi - vb.w * sphi;
            assert!((lhs_cos - ca.speed_horizontal * ca.beta_c.cos()).abs() < 1e-12);
            assert!((lhs_sin - ca.speed_horizontal * ca.beta_c.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn error_dynamics_agree_across_formulations() {
        // On a straight segment the cross/vertical error rates are the
        // {p}-frame velocity components. Both amplitude-phase forms must
        // reproduce them; the body-velocity vertical rate carries an extra
        // 1/√(1 + tan²β_c*) correction that the spherical form does not need.
        use crate::path::path_frame_rotation;
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..10_000 {
            let (att, vb) = random_valid_state(&mut rng);
            let pi_h = rng.gen_range(-PI..PI);
            let pi_v = rng.gen_range(-1.0..1.0);
            let vn = ned_velocity(&att, &vb);
            let v_p = path_frame_rotation(pi_h, pi_v).transpose() * vn.to_vector();

            let ca = spherical_crab_from_body(&att, &vb).unwrap();
            let y_rate_spherical = ca.speed_horizontal * (att.psi() + ca.beta_c - pi_h).sin();
            let z_rate_spherical = -ca.speed_total
                * (att.theta() - ca.alpha_c - pi_v).sin()
                + ca.speed_horizontal
                    * pi_v.sin()
                    * ((att.psi() + ca.beta_c - pi_h).cos() - 1.0);
            assert!((y_rate_spherical - v_p.y).abs() < 1e-12);
            assert!((z_rate_spherical - v_p.z).abs() < 1e-12);

            let bca = body_crab_angles(&att, &vb).unwrap();
            let sec = (1.0 + bca.beta_c_star.tan().powi(2)).sqrt();
            let y_rate_body =
                bca.speed_horizontal_star * (att.psi() + bca.beta_c_star - pi_h).sin();
            let z_rate_body = -bca.speed_vertical_plane
                * (att.theta() - bca.alpha_c_star - pi_v).sin()
                + bca.speed_horizontal_star * pi_v.sin() / sec
                    * (sec * (att.psi() + bca.beta_c_star - pi_h).cos() - 1.0);
            assert!((y_rate_body - v_p.y).abs() < 1e-12);
            assert!(
                (z_rate_body - v_p.z).abs() < 1e-11,
                "body-form vertical rate {} vs {}",
                z_rate_body,
                v_p.z
            );
        }
    }

    #[test]
    fn spherical_survives_where_body_formulation_degenerates() {
        // Sweep β_c through π/2 at fixed γ ≠ 0. The spherical α_c stays
        // continuous; the body-velocity α_c* jumps by ~π across the crossing
        // and its deviation from α_c grows to O(π/2).
        let gamma = 0.2;
        let theta = 0.1;
        let alpha_c_expected = theta - gamma;
        let att = EulerAngles::new(0.0, theta, 0.0).unwrap();
        let speed = 2.0;

        let n = 400;
        let mut prev_alpha: Option<f64> = None;
        let mut prev_alpha_star: Option<f64> = None;
        let mut max_alpha_jump: f64 = 0.0;
        let mut max_alpha_star_jump: f64 = 0.0;
        let mut max_star_deviation: f64 = 0.0;
        for i in 0..=n {
            let beta_c = FRAC_PI_4 + (i as f64 / n as f64) * FRAC_PI_2; // π/4 .. 3π/4
            let vn = NedVector {
                x: speed * gamma.cos() * beta_c.cos(),
                y: speed * gamma.cos() * beta_c.sin(),
                z: -speed * gamma.sin(),
            };
            let vb = BodyVelocity::from_vector(
                rotation_body_to_ned(&att).transpose() * vn.to_vector(),
            );
            let alpha = spherical_crab_from_body(&att, &vb).unwrap().alpha_c;
            assert!((alpha - alpha_c_expected).abs() < 1e-12);
            if let Some(p) = prev_alpha {
                max_alpha_jump = max_alpha_jump.max((alpha - p).abs());
            }
            prev_alpha = Some(alpha);

            if let Ok(bca) = body_crab_angles(&att, &vb) {
                max_star_deviation =
                    max_star_deviation.max((bca.alpha_c_star - alpha_c_expected).abs());
                if let Some(p) = prev_alpha_star {
                    max_alpha_star_jump = max_alpha_star_jump.max((bca.alpha_c_star - p).abs());
                }
                prev_alpha_star = Some(bca.alpha_c_star);
            }
        }
        assert!(max_alpha_jump < 1e-9, "spherical jump {max_alpha_jump}");
        assert!(
            max_alpha_star_jump > 1.0,
            "body formulation should jump across the singularity, saw {max_alpha_star_jump}"
        );
        assert!(
            max_star_deviation > 1.0,
            "body vertical crab should diverge from the spherical one, saw {max_star_deviation}"
        );
    }
}
