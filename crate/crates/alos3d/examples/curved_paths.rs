//! Curved-path following: circle, vertical arc, and helix.
//!
//! The PATH frame rides along the curve; its parameter rate is chosen so the
//! along-track error stays identically zero, which twists the frame at
//! ω_x = −sin(π_v)·π̇_h. Paths that are horizontal or confined to one
//! vertical plane have ω_x = 0 and behave like straight lines; a helix keeps
//! a small nonzero twist, and convergence becomes local: shrink the radius
//! far enough and a fixed initial error stops converging.
//!
//! ```bash
//! cargo run --example curved_paths
//! ```

use alos3d::attitude::NedVector;
use alos3d::cli::{run_sweep, SweepRow};
use alos3d::path::path_frame_rotation;
use alos3d::ratefit::{fit_log_rate, FitOptions, XiSelection};
use alos3d::scenario::{ScenarioConfig, SweepSection};
use alos3d::sim::{run_scenario, Scenario};
use std::str::FromStr;

/// Starts the vehicle at a cross/vertical offset in the path start frame.
fn offset_start(scenario: &mut Scenario, y_e0: f64, z_e0: f64) {
    let (pi_h, pi_v) = scenario.track.start_angles().unwrap();
    let start = scenario.track.start_position().unwrap();
    let offset = path_frame_rotation(pi_h, pi_v) * nalgebra::Vector3::new(0.0, y_e0, z_e0);
    scenario.initial_position = Some(NedVector::from_vector(start.to_vector() + offset));
}

fn run_one(name: &str, toml: &str, y_e0: f64, z_e0: f64) {
    let mut scenario = ScenarioConfig::from_str(toml)
        .expect("scenario parses")
        .build()
        .expect("scenario is valid");
    offset_start(&mut scenario, y_e0, z_e0);
    let log = run_scenario(&scenario).expect("run completes");
    let last = log.final_row();
    let fit = fit_log_rate(
        &log,
        XiSelection::Full,
        &FitOptions {
            start_level: None,
            decades: 1.5,
        },
    );
    let max_x_e = log.rows.iter().map(|r| r.x_e.abs()).fold(0.0f64, f64::max);
    print!(
        "{name:<18} final |y_e| = {:8.4} m, |z_e| = {:8.4} m, max |x_e| = {:.1e} m",
        last.y_e.abs(),
        last.z_e.abs(),
        max_x_e
    );
    match fit {
        Ok(f) => println!(", rate = {:.4} 1/s", f.rate),
        Err(e) => println!(", rate: {e}"),
    }
}

fn main() {
    run_one(
        "horizontal circle",
        r#"
[path]
curve = { kind = "horizontal_circle", center = [0.0, 0.0, 0.0], radius = 400.0, varpi_max = 9.4 }

[current]
velocity = [0.1, -0.1, 0.0]

[vehicle]
relative_velocity = [2.0, 0.0, 0.0]

[sim]
duration = 600.0
"#,
        30.0,
        15.0,
    );

    run_one(
        "vertical arc",
        r#"
[path]
curve = { kind = "vertical_arc", center = [0.0, 0.0, 0.0], radius = 400.0, azimuth = 0.5, varpi_max = 1.0 }

[current]
velocity = [0.1, 0.0, 0.0]

[vehicle]
relative_velocity = [2.0, 0.0, 0.0]

[sim]
duration = 185.0
"#,
        15.0,
        20.0,
    );

    run_one(
        "helix",
        r#"
[path]
curve = { kind = "helix", center = [0.0, 0.0, 0.0], radius = 300.0, pitch_per_turn = 40.0, varpi_max = 12.5 }

[current]
velocity = [0.15, -0.1, 0.0]

[vehicle]
relative_velocity = [2.0, 0.0, 0.0]

[sim]
duration = 600.0
"#,
        10.0,
        10.0,
    );

    // tightening the helix with the same 30 m initial cross-track error:
    // the stability radius is finite
    println!();
    println!("helix curvature sweep at a fixed 30 m initial error:");
    let mut base = ScenarioConfig::from_str(
        r#"
[path]
curve = { kind = "helix", center = [0.0, 0.0, 0.0], radius = 300.0, pitch_per_turn = 40.0, varpi_max = 12.5 }

[current]
velocity = [0.15, -0.1, 0.0]

[vehicle]
relative_velocity = [2.0, 0.0, 0.0]

[sim]
duration = 400.0
convergence_tolerance = 0.5
"#,
    )
    .unwrap()
    .build()
    .unwrap();
    offset_start(&mut base, 30.0, 0.0);
    let sweep = SweepSection {
        parameter: "curvature".to_string(),
        values: vec![1.0 / 400.0, 1.0 / 200.0, 1.0 / 100.0, 1.0 / 40.0, 1.0 / 25.0],
    };
    let rows: Vec<SweepRow> = run_sweep(&base, &sweep).expect("sweep runs");
    println!("  curvature [1/m]   radius [m]   converged");
    for row in rows {
        println!(
            "  {:>14.5}   {:>10.0}   {}{}",
            row.value,
            1.0 / row.value,
            row.converged,
            row.error
                .as_deref()
                .map(|e| format!("  ({e})"))
                .unwrap_or_default()
        );
    }
}
