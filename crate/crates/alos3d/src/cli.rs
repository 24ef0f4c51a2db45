//! Scenario-driven command-line front end.
//!
//! Verbs: `run` (simulate and emit CSV), `compare` (both vertical crab-angle
//! formulations side by side), `sweep` (one run per grid value of a named
//! parameter), `rate-fit` (re-fit a convergence rate from an existing CSV).
//!
//! Exit codes: 0 success/convergence, 1 configuration or usage error,
//! 2 simulation abort or failed convergence.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::amplitude_phase::alpha_star_from_spherical;
use crate::attitude::NedVector;
use crate::path::{path_frame_rotation, CurvedPath};
use crate::ratefit::{fit_log_rate, FitOptions, RateFit, XiSelection};
use crate::scenario::{ConfigError, ScenarioConfig, SweepSection};
use crate::sim::{run_scenario, Scenario, Track};
use crate::simlog::SimLog;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_SIM: i32 = 2;

/// Parsed command line.
#[derive(Debug, Clone, Default)]
struct Options {
    config: Option<PathBuf>,
    out: Option<PathBuf>,
    dt: Option<f64>,
    duration: Option<f64>,
    seed: Option<u64>,
    positional: Vec<String>,
}

const USAGE: &str = "usage: alos3d <run|compare|sweep|rate-fit> [args]
  run       --config <file> [--out <csv>] [--dt <s>] [--duration <s>] [--seed <n>]
  compare   --config <file> [--out <csv>] [--dt <s>] [--duration <s>] [--seed <n>]
  sweep     --config <file> [--out <csv>] [--dt <s>] [--duration <s>] [--seed <n>]
  rate-fit  <csv> [--config <file>]";

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let mut args = args.into_iter();
    let verb = match args.next() {
        Some(v) => v,
        None => {
            eprintln!("{USAGE}");
            return EXIT_CONFIG;
        }
    };
    let opts = match parse_options(args) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("{msg}");
            return EXIT_CONFIG;
        }
    };
    match verb.as_str() {
        "run" => cmd_run(&opts),
        "compare" => cmd_compare(&opts),
        "sweep" => cmd_sweep(&opts),
        "rate-fit" => cmd_rate_fit(&opts),
        other => {
            eprintln!("unknown command '{other}'\n{USAGE}");
            EXIT_CONFIG
        }
    }
}

fn parse_options<I: Iterator<Item = String>>(mut args: I) -> Result<Options, String> {
    let mut opts = Options::default();
    while let Some(arg) = args.next() {
        let mut value_for = |name: &str| -> Result<String, String> {
            args.next().ok_or(format!("{name} needs a value"))
        };
        match arg.as_str() {
            "--config" => opts.config = Some(PathBuf::from(value_for("--config")?)),
            "--out" => opts.out = Some(PathBuf::from(value_for("--out")?)),
            "--dt" => {
                opts.dt = Some(
                    value_for("--dt")?
                        .parse()
                        .map_err(|e| format!("--dt: {e}"))?,
                )
            }
            "--duration" => {
                opts.duration = Some(
                    value_for("--duration")?
                        .parse()
                        .map_err(|e| format!("--duration: {e}"))?,
                )
            }
            "--seed" => {
                opts.seed = Some(
                    value_for("--seed")?
                        .parse()
                        .map_err(|e| format!("--seed: {e}"))?,
                )
            }
            flag if flag.starts_with("--") => return Err(format!("unknown flag '{flag}'")),
            positional => opts.positional.push(positional.to_string()),
        }
    }
    Ok(opts)
}

fn load_scenario(opts: &Options) -> Result<(ScenarioConfig, Scenario), ConfigError> {
    let path = opts
        .config
        .as_ref()
        .ok_or_else(|| ConfigError("--config is required".into()))?;
    let mut config = ScenarioConfig::from_file(path)?;
    if let Some(dt) = opts.dt {
        config.sim.dt = dt;
    }
    if let Some(duration) = opts.duration {
        config.sim.duration = duration;
    }
    if let Some(seed) = opts.seed {
        config.sim.seed = seed;
    }
    let scenario = config.build()?;
    Ok((config, scenario))
}

/// Runs a scenario and writes the telemetry CSV.
fn cmd_run(opts: &Options) -> i32 {
    let (config, scenario) = match load_scenario(opts) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_CONFIG;
        }
    };
    let log = match run_scenario(&scenario) {
        Ok(log) => log,
        Err(abort) => {
            eprintln!("{abort}");
            return EXIT_SIM;
        }
    };

    let csv_path = opts.out.clone().or(config.output.csv.clone());
    if let Some(path) = csv_path {
        if let Err(e) = write_log_csv(&log, &path, config.output.decimation) {
            eprintln!("cannot write {}: {e}", path.display());
            return EXIT_CONFIG;
        }
    }

    let last = log.final_row();
    let fit = fit_log_rate(&log, XiSelection::Full, &FitOptions::default());
    let bias = (last.alpha_c - last.alpha_hat).abs();
    println!("steps: {}  (t = {} s, seed {})", log.rows.len() - 1, last.t, scenario.seed);
    println!(
        "final errors: |y_e| = {:.6} m, |z_e| = {:.6} m",
        last.y_e.abs(),
        last.z_e.abs()
    );
    match &fit {
        Ok(f) => println!(
            "fitted rate: {:.6} 1/s (r² = {:.4}, window {:.1}..{:.1} s)",
            f.rate, f.r_squared, f.window.0, f.window.1
        ),
        Err(e) => println!("fitted rate: n/a ({e})"),
    }
    println!("final vertical-crab bias |alpha_c - alpha_hat|: {:.3e} rad", bias);

    let converged = last.y_e.abs() < scenario.convergence_tolerance
        && last.z_e.abs() < scenario.convergence_tolerance;
    if converged {
        println!("converged: yes");
        EXIT_OK
    } else {
        println!("converged: no (tolerance {} m)", scenario.convergence_tolerance);
        EXIT_SIM
    }
}

fn write_log_csv(log: &SimLog, path: &Path, decimation: usize) -> std::io::Result<()> {
    let mut buf = Vec::new();
    log.write_csv(&mut buf, decimation)?;
    fs::write(path, buf)
}

/// Per-step comparison of the two vertical crab-angle formulations.
pub fn compare_csv(log: &SimLog) -> (String, f64) {
    let mut out = String::from(
        "t,alpha_c,alpha_c_star,beta_c,gamma,alpha_hat,gap,gap_predicted,residual\n",
    );
    let mut max_residual: f64 = 0.0;
    for r in &log.rows {
        let gap = r.alpha_c_star - r.alpha_c;
        let predicted = alpha_star_from_spherical(r.alpha_c, r.beta_c, r.gamma)
            .map(|a| a - r.alpha_c)
            .unwrap_or(f64::NAN);
        let residual = gap - predicted;
        if residual.is_finite() {
            max_residual = max_residual.max(residual.abs());
        }
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.t, r.alpha_c, r.alpha_c_star, r.beta_c, r.gamma, r.alpha_hat, gap, predicted,
            residual
        );
    }
    (out, max_residual)
}

fn cmd_compare(opts: &Options) -> i32 {
    let (config, scenario) = match load_scenario(opts) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_CONFIG;
        }
    };
    let log = match run_scenario(&scenario) {
        Ok(log) => log,
        Err(abort) => {
            eprintln!("{abort}");
            return EXIT_SIM;
        }
    };
    let (csv, max_residual) = compare_csv(&log);
    let csv_path = opts.out.clone().or(config.output.csv.clone());
    if let Some(path) = csv_path {
        if let Err(e) = fs::write(&path, csv) {
            eprintln!("cannot write {}: {e}", path.display());
            return EXIT_CONFIG;
        }
    }
    println!("max |identity residual|: {max_residual:.3e} rad");
    let last = log.final_row();
    let converged = last.y_e.abs() < scenario.convergence_tolerance
        && last.z_e.abs() < scenario.convergence_tolerance;
    if converged {
        EXIT_OK
    } else {
        EXIT_SIM
    }
}

/// Result of one sweep grid point.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub index: usize,
    pub value: f64,
    pub converged: bool,
    pub rate: f64,
    pub r_squared: f64,
    pub final_bias: f64,
    pub error: Option<String>,
}

/// Runs every grid point of the sweep; failures are recorded per row and do
/// not abort the sweep. Rows come back in grid order.
pub fn run_sweep(scenario: &Scenario, sweep: &SweepSection) -> Result<Vec<SweepRow>, ConfigError> {
    let mut rows = Vec::with_capacity(sweep.values.len());
    for (index, &value) in sweep.values.iter().enumerate() {
        let derived = apply_sweep_value(scenario, &sweep.parameter, value)?;
        let row = match run_scenario(&derived) {
            Err(abort) => SweepRow {
                index,
                value,
                converged: false,
                rate: f64::NAN,
                r_squared: f64::NAN,
                final_bias: f64::NAN,
                error: Some(abort.to_string()),
            },
            Ok(log) => {
                let last = log.final_row();
                let converged = last.y_e.abs() < derived.convergence_tolerance
                    && last.z_e.abs() < derived.convergence_tolerance;
                let fit = fit_log_rate(&log, XiSelection::Full, &FitOptions::default());
                let (rate, r_squared) = match &fit {
                    Ok(f) => (f.rate, f.r_squared),
                    Err(_) => (f64::NAN, f64::NAN),
                };
                SweepRow {
                    index,
                    value,
                    converged,
                    rate,
                    r_squared,
                    final_bias: (last.alpha_c - last.alpha_hat).abs(),
                    error: fit.err().map(|e| e.to_string()),
                }
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Derives the scenario for one grid value of the named sweep parameter.
pub fn apply_sweep_value(
    scenario: &Scenario,
    parameter: &str,
    value: f64,
) -> Result<Scenario, ConfigError> {
    let mut derived = scenario.clone();
    match parameter {
        "initial_radius" => {
            if value < 0.0 {
                return Err(ConfigError("initial_radius must be >= 0".into()));
            }
            let (y_e0, z_e0, alpha_off, beta_off) =
                ball_offsets(value, scenario.guidance.delta_h, scenario.guidance.delta_v, scenario.seed);
            let (pi_h, pi_v) = scenario
                .track
                .start_angles()
                .map_err(|e| ConfigError(e.to_string()))?;
            let start = scenario
                .track
                .start_position()
                .map_err(|e| ConfigError(e.to_string()))?;
            let offset = path_frame_rotation(pi_h, pi_v)
                * nalgebra::Vector3::new(0.0, y_e0, z_e0);
            derived.initial_position = Some(
                NedVector::new(
                    start.x + offset.x,
                    start.y + offset.y,
                    start.z + offset.z,
                )
                .map_err(|e| ConfigError(e.to_string()))?,
            );
            derived.initial_estimates.alpha_hat = -alpha_off;
            derived.initial_estimates.beta_hat = -beta_off;
        }
        "gain" => {
            if value <= 0.0 {
                return Err(ConfigError("gain sweep values must be > 0".into()));
            }
            derived.guidance.k_h = value;
            derived.guidance.k_v = value;
        }
        "curvature" => {
            if value <= 0.0 {
                return Err(ConfigError("curvature sweep values must be > 0".into()));
            }
            let radius = 1.0 / value;
            // the initial tracking error is preserved relative to the path,
            // so each grid point starts from the same offset in its own frame
            let base_offset = initial_frame_offset(scenario)?;
            derived.track = match &scenario.track {
                Track::Curve(CurvedPath::HorizontalCircle {
                    center, varpi_max, ..
                }) => Track::Curve(CurvedPath::HorizontalCircle {
                    center: *center,
                    radius,
                    varpi_max: *varpi_max,
                }),
                Track::Curve(CurvedPath::VerticalArc {
                    center,
                    azimuth,
                    varpi_max,
                    ..
                }) => Track::Curve(CurvedPath::VerticalArc {
                    center: *center,
                    radius,
                    azimuth: *azimuth,
                    varpi_max: *varpi_max,
                }),
                Track::Curve(CurvedPath::Helix {
                    center,
                    radius: old_radius,
                    pitch_per_turn,
                    varpi_max,
                }) => Track::Curve(CurvedPath::Helix {
                    center: *center,
                    radius,
                    // keep the climb angle: scale pitch with radius
                    pitch_per_turn: pitch_per_turn * radius / old_radius,
                    varpi_max: *varpi_max,
                }),
                _ => {
                    return Err(ConfigError(
                        "curvature sweep requires a curved path".into(),
                    ))
                }
            };
            if let Some((y_off, z_off)) = base_offset {
                let (pi_h, pi_v) = derived
                    .track
                    .start_angles()
                    .map_err(|e| ConfigError(e.to_string()))?;
                let start = derived
                    .track
                    .start_position()
                    .map_err(|e| ConfigError(e.to_string()))?;
                let offset =
                    path_frame_rotation(pi_h, pi_v) * nalgebra::Vector3::new(0.0, y_off, z_off);
                derived.initial_position = Some(NedVector::from_vector(
                    start.to_vector() + offset,
                ));
            }
        }
        "current" => {
            if value < 0.0 {
                return Err(ConfigError("current sweep values must be >= 0".into()));
            }
            let base = scenario.current.base.to_vector();
            let magnitude = base.norm();
            if magnitude == 0.0 && value != 0.0 {
                return Err(ConfigError(
                    "current sweep needs a nonzero current direction in the config".into(),
                ));
            }
            let scaled = if magnitude == 0.0 {
                base
            } else {
                base * (value / magnitude)
            };
            derived.current.base = NedVector::from_vector(scaled);
        }
        other => {
            return Err(ConfigError(format!(
                "unknown sweep parameter '{other}' (initial_radius, gain, curvature, current)"
            )))
        }
    }
    Ok(derived)
}

/// Cross/vertical offset of the configured initial position in the path
/// start frame, if an initial position was configured.
fn initial_frame_offset(scenario: &Scenario) -> Result<Option<(f64, f64)>, ConfigError> {
    let position = match scenario.initial_position {
        None => return Ok(None),
        Some(p) => p,
    };
    let (pi_h, pi_v) = scenario
        .track
        .start_angles()
        .map_err(|e| ConfigError(e.to_string()))?;
    let start = scenario
        .track
        .start_position()
        .map_err(|e| ConfigError(e.to_string()))?;
    let e = path_frame_rotation(pi_h, pi_v).transpose()
        * (position.to_vector() - start.to_vector());
    Ok(Some((e.y, e.z)))
}

/// Splits a weighted-norm radius into error-state offsets. Angle offsets are
/// capped so huge balls land in the positional errors; the direction is
/// drawn deterministically from the scenario seed.
fn ball_offsets(radius: f64, delta_h: f64, delta_v: f64, seed: u64) -> (f64, f64, f64, f64) {
    if radius == 0.0 {
        return (0.0, 0.0, 0.0, 0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let angle_part = (0.1 * radius).min(0.25);
    let remaining = (radius * radius - 2.0 * angle_part * angle_part).max(0.0);
    let split: f64 = rng.gen_range(0.35..0.65);
    let y_w = (remaining * split).sqrt();
    let z_w = (remaining * (1.0 - split)).sqrt();
    (y_w * delta_h, z_w * delta_v, angle_part, angle_part)
}

fn cmd_sweep(opts: &Options) -> i32 {
    let (config, scenario) = match load_scenario(opts) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_CONFIG;
        }
    };
    let sweep = match &config.sweep {
        Some(s) => s,
        None => {
            eprintln!("config error: sweep requires a [sweep] section");
            return EXIT_CONFIG;
        }
    };
    let rows = match run_sweep(&scenario, sweep) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_CONFIG;
        }
    };

    let mut csv = String::from("index,value,converged,rate,r_squared,final_bias,error\n");
    for row in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            row.index,
            row.value,
            row.converged,
            row.rate,
            row.r_squared,
            row.final_bias,
            row.error
                .as_deref()
                .unwrap_or("")
                .replace(',', ";")
        );
    }
    print!("{csv}");
    let csv_path = opts.out.clone().or(config.output.csv.clone());
    if let Some(path) = csv_path {
        if let Err(e) = fs::write(&path, csv) {
            eprintln!("cannot write {}: {e}", path.display());
            return EXIT_CONFIG;
        }
    }
    EXIT_OK
}

/// Re-fits a convergence rate from a CSV produced by `run`.
pub fn rate_fit_from_csv(
    content: &str,
    delta_h: f64,
    delta_v: f64,
) -> Result<RateFit, String> {
    let rows = crate::simlog::read_csv(content)?;
    if rows.is_empty() {
        return Err("CSV contains no rows".into());
    }
    let log = SimLog {
        dt: if rows.len() > 1 { rows[1].t - rows[0].t } else { 1.0 },
        rows,
        delta_h,
        delta_v,
        finished_path: false,
    };
    fit_log_rate(&log, XiSelection::Full, &FitOptions::default()).map_err(|e| e.to_string())
}

fn cmd_rate_fit(opts: &Options) -> i32 {
    let csv_path = match opts.positional.first() {
        Some(p) => PathBuf::from(p),
        None => {
            eprintln!("rate-fit needs a CSV path\n{USAGE}");
            return EXIT_CONFIG;
        }
    };
    let content = match fs::read_to_string(&csv_path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("cannot read {}: {e}", csv_path.display());
            return EXIT_CONFIG;
        }
    };
    // look-ahead weights from the config when given, library defaults otherwise
    let (delta_h, delta_v) = match &opts.config {
        None => (20.0, 20.0),
        Some(path) => match ScenarioConfig::from_file(path) {
            Ok(cfg) => (cfg.guidance.delta_h, cfg.guidance.delta_v),
            Err(e) => {
                eprintln!("{e}");
                return EXIT_CONFIG;
            }
        },
    };
    match rate_fit_from_csv(&content, delta_h, delta_v) {
        Ok(fit) => {
            println!(
                "rate: {:.6} 1/s  r²: {:.4}  window: {:.2}..{:.2} s  samples: {}",
                fit.rate, fit.r_squared, fit.window.0, fit.window.1, fit.samples
            );
            EXIT_OK
        }
        Err(e) => {
            eprintln!("rate fit failed: {e}");
            EXIT_SIM
        }
    }
}
