//! The two amplitude-phase decompositions side by side.
//!
//! Both rewrite the NED velocity as amplitudes times sinusoids of
//! (vehicle angle + crab angle) and both reproduce it exactly. The
//! horizontal pairs are identical; the vertical pairs differ, and the
//! body-velocity one degenerates when the velocity projection into the
//! body-x vertical plane vanishes (|β_c| → π/2) while the spherical one
//! stays defined for any nonzero speed.
//!
//! ```bash
//! cargo run --example compare_formulations
//! ```

use alos3d::amplitude_phase::{
    alpha_star_from_spherical, body_ap_velocity, body_crab_angles, spherical_ap_velocity,
    spherical_crab_from_body,
};
use alos3d::attitude::{ned_velocity, rotation_body_to_ned, BodyVelocity, EulerAngles, NedVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    // equivalence of the horizontal pair and the vertical relation,
    // sampled over forward-dominated states
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst_beta: f64 = 0.0;
    let mut worst_uh: f64 = 0.0;
    let mut worst_relation: f64 = 0.0;
    let mut worst_velocity: f64 = 0.0;
    let samples = 100_000;
    for _ in 0..samples {
        let att = EulerAngles::new(
            rng.gen_range(-0.3..0.3),
            rng.gen_range(-0.4..0.4),
            rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
        )
        .unwrap();
        let vb = BodyVelocity::new(
            rng.gen_range(1.0..3.0),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
        )
        .unwrap();
        let spherical = spherical_crab_from_body(&att, &vb).unwrap();
        let body = body_crab_angles(&att, &vb).unwrap();
        worst_beta = worst_beta.max((spherical.beta_c - body.beta_c_star).abs());
        worst_uh =
            worst_uh.max((spherical.speed_horizontal - body.speed_horizontal_star).abs());
        let gamma = att.theta() - spherical.alpha_c;
        let predicted =
            alpha_star_from_spherical(spherical.alpha_c, spherical.beta_c, gamma).unwrap();
        worst_relation = worst_relation.max((body.alpha_c_star - predicted).abs());

        let reference = ned_velocity(&att, &vb);
        for v in [
            spherical_ap_velocity(&att, &spherical),
            body_ap_velocity(&att, &body),
        ] {
            worst_velocity = worst_velocity
                .max((v.x - reference.x).abs())
                .max((v.y - reference.y).abs())
                .max((v.z - reference.z).abs());
        }
    }
    println!("over {samples} random states:");
    println!("  max |beta_c - beta_c*|          = {worst_beta:.2e} rad");
    println!("  max |U_h - U_h*|                = {worst_uh:.2e} m/s");
    println!("  max vertical-relation residual  = {worst_relation:.2e} rad");
    println!("  max velocity reconstruction gap = {worst_velocity:.2e} m/s");

    // the singularity: sweep the horizontal crab angle through π/2 at a
    // fixed nonzero flight-path angle
    println!();
    println!("sweeping beta_c across pi/2 at gamma = 0.2:");
    println!("  beta_c   alpha_c   alpha_c*        U_v*");
    let gamma: f64 = 0.2;
    let theta = 0.1f64;
    let att = EulerAngles::new(0.0, theta, 0.0).unwrap();
    for i in 0..=8 {
        let beta_c = 1.2 + 0.1 * i as f64; // 1.2 .. 2.0 rad
        let vn = NedVector::new(
            2.0 * gamma.cos() * beta_c.cos(),
            2.0 * gamma.cos() * beta_c.sin(),
            -2.0 * gamma.sin(),
        )
        .unwrap();
        let vb = BodyVelocity::from_vector(
            rotation_body_to_ned(&att).transpose() * vn.to_vector(),
        );
        let spherical = spherical_crab_from_body(&att, &vb).unwrap();
        match body_crab_angles(&att, &vb) {
            Ok(body) => println!(
                "  {beta_c:5.2}  {:8.4}  {:8.4}  {:10.4}",
                spherical.alpha_c, body.alpha_c_star, body.speed_vertical_plane
            ),
            Err(e) => println!(
                "  {beta_c:5.2}  {:8.4}  undefined ({e})",
                spherical.alpha_c
            ),
        }
    }
    println!("alpha_c stays put; alpha_c* swings by O(pi) as the projection collapses");
}
