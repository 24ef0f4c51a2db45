//! Basic closed-loop run: follow a dogleg route under a steady current.
//!
//! The vehicle starts off the path with no knowledge of the current; the
//! adaptive law estimates the crab angles online and the tracking errors
//! converge to zero. Telemetry goes to `straight_path.csv`.
//!
//! ```bash
//! cargo run --example straight_path
//! ```

use alos3d::ratefit::{fit_log_rate, FitOptions, XiSelection};
use alos3d::scenario::ScenarioConfig;
use alos3d::sim::run_scenario;
use std::str::FromStr;

const SCENARIO: &str = r#"
[path]
waypoints = [
    [0.0, 0.0, 0.0],
    [700.0, 200.0, 40.0],
    [1400.0, -100.0, 80.0],
]

[current]
velocity = [0.25, -0.35, 0.0]

[vehicle]
relative_velocity = [2.0, 0.0, 0.0]
initial_position = [0.0, 25.0, -10.0]

[sim]
duration = 900.0

[output]
csv = "straight_path.csv"
decimation = 10
"#;

fn main() {
    let config = ScenarioConfig::from_str(SCENARIO).expect("scenario parses");
    let scenario = config.build().expect("scenario is valid");
    let log = run_scenario(&scenario).expect("run completes");

    let first = &log.rows[0];
    let last = log.final_row();
    println!("route finished: {}", log.finished_path);
    println!(
        "tracking errors: ({:7.3}, {:7.3}) m -> ({:9.2e}, {:9.2e}) m",
        first.y_e, first.z_e, last.y_e, last.z_e
    );
    println!(
        "crab estimates:  beta_hat = {:.4} rad (true {:.4}),  alpha_hat = {:.4} rad (true {:.4})",
        last.beta_hat, last.beta_c, last.alpha_hat, last.alpha_c
    );
    match fit_log_rate(&log, XiSelection::Full, &FitOptions::default()) {
        Ok(fit) => println!(
            "convergence rate: {:.4} 1/s (r² = {:.4}) over {:.0}..{:.0} s",
            fit.rate, fit.r_squared, fit.window.0, fit.window.1
        ),
        Err(e) => println!("rate fit: {e}"),
    }

    let path = config.output.csv.as_ref().unwrap();
    let mut buf = Vec::new();
    log.write_csv(&mut buf, config.output.decimation).unwrap();
    std::fs::write(path, buf).unwrap();
    println!("telemetry written to {}", path.display());
}
