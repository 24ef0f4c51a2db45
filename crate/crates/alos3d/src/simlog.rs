//! Simulation time series and its CSV schema.
//!
//! Values are written with the shortest representation that round-trips
//! exactly, so downstream analysis (rate fitting in particular) loses no
//! precision. Columns never get reordered within a major version.
//!
//! The `flags` column is a bitmask:
//! - bit 0: pitch command hit the ±(π/2 − 5°) clip this step
//! - bit 1: vertical estimate outside the projection bound (layer active)
//! - bit 2: horizontal estimate outside the projection bound
//! - bit 3: the active segment switched at the end of this step

use std::io::{self, Write};

/// Fixed CSV column order.
pub const CSV_COLUMNS: [&str; 22] = [
    "t",
    "x_n",
    "y_n",
    "z_n",
    "x_e",
    "y_e",
    "z_e",
    "phi",
    "theta",
    "psi",
    "psi_d",
    "theta_d",
    "alpha_c",
    "alpha_c_star",
    "beta_c",
    "alpha_hat",
    "beta_hat",
    "gamma",
    "U",
    "U_h",
    "segment_index_or_varpi",
    "flags",
];

pub const FLAG_THETA_SATURATED: u32 = 1;
pub const FLAG_ALPHA_PROJECTION: u32 = 2;
pub const FLAG_BETA_PROJECTION: u32 = 4;
pub const FLAG_SEGMENT_SWITCHED: u32 = 8;

/// One simulation step. `alpha_c_star` is NaN where the body-velocity
/// vertical crab angle is undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRow {
    pub t: f64,
    pub x_n: f64,
    pub y_n: f64,
    pub z_n: f64,
    pub x_e: f64,
    pub y_e: f64,
    pub z_e: f64,
    pub phi: f64,
    pub theta: f64,
    pub psi: f64,
    pub psi_d: f64,
    pub theta_d: f64,
    pub alpha_c: f64,
    pub alpha_c_star: f64,
    pub beta_c: f64,
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub gamma: f64,
    pub speed_total: f64,
    pub speed_horizontal: f64,
    pub segment_or_varpi: f64,
    pub flags: u32,
}

/// A completed simulation run: fixed-step rows at strictly increasing times,
/// plus the look-ahead distances needed to weight the error norm.
#[derive(Debug, Clone, PartialEq)]
pub struct SimLog {
    pub rows: Vec<LogRow>,
    pub dt: f64,
    pub delta_h: f64,
    pub delta_v: f64,
    /// True when the run reached the final waypoint before the time horizon.
    pub finished_path: bool,
}

impl SimLog {
    pub fn final_row(&self) -> &LogRow {
        self.rows.last().expect("simulation log is never empty")
    }

    /// Writes the CSV, keeping every `decimation`-th row (the final row is
    /// always included).
    pub fn write_csv<W: Write>(&self, mut out: W, decimation: usize) -> io::Result<()> {
        let decimation = decimation.max(1);
        writeln!(out, "{}", CSV_COLUMNS.join(","))?;
        let last = self.rows.len().saturating_sub(1);
        for (i, row) in self.rows.iter().enumerate() {
            if i % decimation == 0 || i == last {
                write_row(&mut out, row)?;
            }
        }
        Ok(())
    }
}

fn write_row<W: Write>(out: &mut W, r: &LogRow) -> io::Result<()> {
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.t,
        r.x_n,
        r.y_n,
        r.z_n,
        r.x_e,
        r.y_e,
        r.z_e,
        r.phi,
        r.theta,
        r.psi,
        r.psi_d,
        r.theta_d,
        r.alpha_c,
        r.alpha_c_star,
        r.beta_c,
        r.alpha_hat,
        r.beta_hat,
        r.gamma,
        r.speed_total,
        r.speed_horizontal,
        r.segment_or_varpi,
        r.flags
    )
}

/// Reads rows back from a CSV produced by [`SimLog::write_csv`].
pub fn read_csv(content: &str) -> Result<Vec<LogRow>, String> {
    let mut lines = content.lines();
    let header = lines.next().ok_or("empty CSV")?;
    if header != CSV_COLUMNS.join(",") {
        return Err(format!("unexpected CSV header: {header}"));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != CSV_COLUMNS.len() {
            return Err(format!(
                "line {}: expected {} fields, found {}",
                lineno + 2,
                CSV_COLUMNS.len(),
                fields.len()
            ));
        }
        let f = |i: usize| -> Result<f64, String> {
            fields[i]
                .parse::<f64>()
                .map_err(|e| format!("line {}: field {}: {e}", lineno + 2, CSV_COLUMNS[i]))
        };
        rows.push(LogRow {
            t: f(0)?,
            x_n: f(1)?,
            y_n: f(2)?,
            z_n: f(3)?,
            x_e: f(4)?,
            y_e: f(5)?,
            z_e: f(6)?,
            phi: f(7)?,
            theta: f(8)?,
            psi: f(9)?,
            psi_d: f(10)?,
            theta_d: f(11)?,
            alpha_c: f(12)?,
            alpha_c_star: f(13)?,
            beta_c: f(14)?,
            alpha_hat: f(15)?,
            beta_hat: f(16)?,
            gamma: f(17)?,
            speed_total: f(18)?,
            speed_horizontal: f(19)?,
            segment_or_varpi: f(20)?,
            flags: fields[21]
                .parse::<u32>()
                .map_err(|e| format!("line {}: field flags: {e}", lineno + 2))?,
        });
    }
    Ok(rows)
}
