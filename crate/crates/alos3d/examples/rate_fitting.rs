//! Fitting empirical convergence rates from telemetry.
//!
//! The weighted error norm ‖ξ‖ mixes track errors (scaled by the look-ahead
//! distances) with the crab-angle estimation errors; exponential convergence
//! is a straight line of ln‖ξ‖ against time. The fit picks a decay window —
//! from the peak, or from a given level on the way down — and reports the
//! slope and its r².
//!
//! ```bash
//! cargo run --example rate_fitting
//! ```

use alos3d::ratefit::{
    fit_exponential_rate, local_maxima, xi_norm_series, FitOptions, NormWeights, XiSelection,
};
use alos3d::scenario::ScenarioConfig;
use alos3d::sim::run_scenario;
use std::str::FromStr;

fn main() {
    // a synthetic pure exponential recovers its rate exactly
    let series: Vec<(f64, f64)> = (0..4000)
        .map(|i| {
            let t = i as f64 * 0.1;
            (t, 3.0 * (-0.2 * t).exp())
        })
        .collect();
    let fit = fit_exponential_rate(&series, &FitOptions::default()).unwrap();
    println!(
        "synthetic exp(-0.2 t): rate = {:.6} 1/s, r² = {:.6}",
        fit.rate, fit.r_squared
    );

    // a real run: descending path under current
    let scenario = ScenarioConfig::from_str(
        r#"
[path]
waypoints = [[0.0, 0.0, 0.0], [6000.0, 2000.0, 1200.0]]

[current]
velocity = [0.3, -0.4, 0.0]

[vehicle]
relative_velocity = [2.0, 0.0, 0.0]
initial_position = [0.0, 180.0, -90.0]

[guidance]
delta_h = 15.0
delta_v = 15.0

[sim]
duration = 900.0
"#,
    )
    .unwrap()
    .build()
    .unwrap();
    let log = run_scenario(&scenario).expect("run completes");

    let weights = NormWeights::from_lookahead(log.delta_h, log.delta_v);
    let series = xi_norm_series(&log, XiSelection::Full, &weights);
    println!();
    println!("closed-loop run, initial weighted norm {:.2}:", series[0].1);
    for opts in [
        FitOptions::default(),
        FitOptions {
            start_level: Some(0.5),
            decades: 2.0,
        },
        FitOptions {
            start_level: Some(0.5),
            decades: 4.0,
        },
    ] {
        match fit_exponential_rate(&series, &opts) {
            Ok(fit) => println!(
                "  start {:?}, {} decades: rate = {:.4} 1/s, r² = {:.4}, window {:.0}..{:.0} s",
                opts.start_level, opts.decades, fit.rate, fit.r_squared, fit.window.0, fit.window.1
            ),
            Err(e) => println!(
                "  start {:?}, {} decades: {e}",
                opts.start_level, opts.decades
            ),
        }
    }

    // the decay envelope is monotone after the transient
    let maxima = local_maxima(&series);
    let decaying = maxima.windows(2).filter(|w| w[1].1 <= w[0].1).count();
    println!(
        "  envelope: {} local maxima, {} decaying transitions",
        maxima.len(),
        decaying
    );
}
