//! Empirical exponential convergence rates.
//!
//! Exponential stability shows up in a log as a straight line of ln‖ξ(t)‖
//! against time. The fit selects a decay window, runs a least-squares line
//! through the log-norm there, and reports the slope magnitude together with
//! the r² of the fit.
//!
//! The error norm mixes meters and radians, so positional errors are scaled
//! by the look-ahead distances by default (y_e/Δ_h, z_e/Δ_v); the weights
//! are configurable.

use crate::attitude::ssa;
use crate::simlog::{LogRow, SimLog};
use thiserror::Error;

/// Diagonal weighting of the error state ξ = (z_e, α̃_c, y_e, β̃_c).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormWeights {
    pub z_scale: f64,
    pub alpha_scale: f64,
    pub y_scale: f64,
    pub beta_scale: f64,
}

impl NormWeights {
    /// Scale-free default: positional errors divided by their look-ahead
    /// distance, angles unweighted.
    pub fn from_lookahead(delta_h: f64, delta_v: f64) -> Self {
        Self {
            z_scale: 1.0 / delta_v,
            alpha_scale: 1.0,
            y_scale: 1.0 / delta_h,
            beta_scale: 1.0,
        }
    }
}

/// Which components of ξ enter the norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiSelection {
    Full,
    HorizontalOnly,
    VerticalOnly,
}

/// Decay-window policy.
///
/// The window starts where the norm first drops to `start_level` (or at the
/// global maximum when `None`) and ends where the norm has decayed `decades`
/// below the window start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub start_level: Option<f64>,
    pub decades: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            start_level: None,
            decades: 2.0,
        }
    }
}

/// A successful fit: rate (1/s, positive = decay), r², the fitted window,
/// and how many samples entered the regression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub rate: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub samples: usize,
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum FitError {
    #[error("fewer than {0} samples in the decay window")]
    TooFewSamples(usize),
    #[error("signal never reaches the requested start level {0}")]
    StartLevelNotReached(f64),
    #[error("signal does not decay {requested} decades below the window start (best: {achieved:.3})")]
    InsufficientDecay { requested: f64, achieved: f64 },
    #[error("signal is empty or not positive")]
    DegenerateSignal,
}

/// Fits `ln n(t)` over the decay window of a positive series `(t, n)`.
pub fn fit_exponential_rate(
    series: &[(f64, f64)],
    opts: &FitOptions,
) -> Result<RateFit, FitError> {
    // usable prefix: positive norms only (a norm that hits exact zero has
    // left the representable decay regime)
    let usable: Vec<(f64, f64)> = series
        .iter()
        .take_while(|(_, n)| *n > 0.0 && n.is_finite())
        .copied()
        .collect();
    if usable.len() < 4 {
        return Err(FitError::DegenerateSignal);
    }

    let argmax = {
        let mut idx = 0;
        for (i, (_, n)) in usable.iter().enumerate() {
            if *n > usable[idx].1 {
                idx = i;
            }
        }
        idx
    };
    // the window starts on the way down: at the peak, or where the signal
    // first drops to the requested level after the peak
    let start = match opts.start_level {
        None => argmax,
        Some(level) => {
            if usable[argmax].1 <= level {
                argmax
            } else {
                argmax
                    + usable[argmax..]
                        .iter()
                        .position(|(_, n)| *n <= level)
                        .ok_or(FitError::StartLevelNotReached(level))?
            }
        }
    };

    let target = usable[start].1 * 10f64.powf(-opts.decades);
    let end = match usable[start..].iter().position(|(_, n)| *n <= target) {
        Some(offset) => start + offset,
        None => {
            let min = usable[start..]
                .iter()
                .map(|(_, n)| *n)
                .fold(f64::INFINITY, f64::min);
            return Err(FitError::InsufficientDecay {
                requested: opts.decades,
                achieved: (usable[start].1 / min).log10(),
            });
        }
    };

    let window = &usable[start..=end];
    if window.len() < 4 {
        return Err(FitError::TooFewSamples(4));
    }

    // least squares of ln n against t
    let n = window.len() as f64;
    let mean_t = window.iter().map(|(t, _)| t).sum::<f64>() / n;
    let mean_ln = window.iter().map(|(_, v)| v.ln()).sum::<f64>() / n;
    let mut s_tt = 0.0;
    let mut s_tl = 0.0;
    let mut s_ll = 0.0;
    for (t, v) in window {
        let dt = t - mean_t;
        let dl = v.ln() - mean_ln;
        s_tt += dt * dt;
        s_tl += dt * dl;
        s_ll += dl * dl;
    }
    if s_tt == 0.0 {
        return Err(FitError::DegenerateSignal);
    }
    let slope = s_tl / s_tt;
    let ss_res = s_ll - slope * s_tl;
    let r_squared = if s_ll == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / s_ll).max(0.0)
    };

    Ok(RateFit {
        rate: -slope,
        r_squared,
        window: (window[0].0, window[window.len() - 1].0),
        samples: window.len(),
    })
}

/// The weighted error norm ‖ξ‖ of one log row.
pub fn xi_norm(row: &LogRow, sel: XiSelection, w: &NormWeights) -> f64 {
    let alpha_tilde = row.alpha_c - row.alpha_hat;
    let beta_tilde = ssa(row.beta_c - row.beta_hat);
    let vertical = (row.z_e * w.z_scale).powi(2) + (alpha_tilde * w.alpha_scale).powi(2);
    let horizontal = (row.y_e * w.y_scale).powi(2) + (beta_tilde * w.beta_scale).powi(2);
    match sel {
        XiSelection::Full => (vertical + horizontal).sqrt(),
        XiSelection::HorizontalOnly => horizontal.sqrt(),
        XiSelection::VerticalOnly => vertical.sqrt(),
    }
}

/// Extracts the weighted norm series from a log.
pub fn xi_norm_series(log: &SimLog, sel: XiSelection, w: &NormWeights) -> Vec<(f64, f64)> {
    log.rows.iter().map(|r| (r.t, xi_norm(r, sel, w))).collect()
}

/// Fits the convergence rate of a simulation log.
pub fn fit_log_rate(
    log: &SimLog,
    sel: XiSelection,
    opts: &FitOptions,
) -> Result<RateFit, FitError> {
    let w = NormWeights::from_lookahead(log.delta_h, log.delta_v);
    fit_exponential_rate(&xi_norm_series(log, sel, &w), opts)
}

/// Sequence of local maxima of a series: the decay envelope samples.
pub fn local_maxima(series: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 1..series.len().saturating_sub(1) {
        if series[i].1 >= series[i - 1].1 && series[i].1 > series[i + 1].1 {
            out.push(series[i]);
        }
    }
    out
}
