//! The `adjust`, `pattern` and `verify` commands.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use polyphase::{
    adjust_with, compose_h, degree_grid, power_response, sample_pattern, AdjustOptions,
    AdjustmentReport, WeightVector,
};

use crate::error::{CliError, Result};
use crate::files::{read_json, write_json, InputFile, ResultFile, ScenarioFile};

/// Degree grid for `pattern`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub from_deg: f64,
    pub to_deg: f64,
    pub step_deg: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            from_deg: -90.0,
            to_deg: 90.0,
            step_deg: 0.05,
        }
    }
}

fn report_to_result(scenario: &ScenarioFile, r: &AdjustmentReport<f64>) -> ResultFile {
    ResultFile {
        scenario: scenario.clone(),
        w_new: r.w_new.entries().to_vec(),
        psi_used: r.psi_used,
        residual: r.residual,
        achieved_level_db: (!r.achieved.is_null()).then(|| r.achieved.db()),
        distortion_db: r.distortion_db,
    }
}

/// Runs the adjustment described by a scenario.
pub fn run_adjustment(scenario: &ScenarioFile, opts: &AdjustOptions<f64>) -> Result<ResultFile> {
    let geom = scenario.geometry()?;
    let w_pre = scenario.w_pre()?;
    let spec = scenario.spec()?;
    let report = adjust_with(&geom, &w_pre, &spec, opts)?;
    Ok(report_to_result(scenario, &report))
}

pub fn cmd_adjust(scenario: &Path, output: &Path, opts: &AdjustOptions<f64>) -> Result<ResultFile> {
    let scenario = ScenarioFile::from_json(&read_json(scenario)?)?;
    let result = run_adjustment(&scenario, opts)?;
    write_json(output, &result.to_json())?;
    Ok(result)
}

/// Plain decimal with 15 significant digits.
pub fn format_decimal(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let magnitude = if v == 0.0 { 0 } else { v.abs().log10().floor() as i32 };
    let decimals = (14 - magnitude).clamp(0, 340) as usize;
    format!("{v:.decimals$}")
}

/// Weights a pattern is drawn for: `w_new` of a result, `w_pre` of a
/// scenario.
fn pattern_weights(input: &InputFile) -> Result<WeightVector<f64>> {
    match input {
        InputFile::Scenario(s) => s.w_pre(),
        InputFile::Result(r) => r.weights(),
    }
}

/// CSV text `theta_deg,power_db`, one row per grid angle, ascending.
pub fn pattern_csv(input: &InputFile, grid: GridSpec) -> Result<String> {
    for (name, v) in [("--from", grid.from_deg), ("--to", grid.to_deg)] {
        if !(-90.0..=90.0).contains(&v) {
            return Err(CliError::Input(format!("{name} {v} outside [-90, 90]")));
        }
    }
    let angles = degree_grid(grid.from_deg, grid.to_deg, grid.step_deg)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let scenario = input.scenario();
    let geom = scenario.geometry()?;
    let w = pattern_weights(input)?;
    let samples = sample_pattern(&w, &geom, scenario.theta0()?, &angles)?;
    let mut csv = String::from("theta_deg,power_db\n");
    for (k, (_, db)) in samples.iter().enumerate() {
        // Row label from the grid arithmetic, not the radian round-trip.
        let theta = grid.from_deg + k as f64 * grid.step_deg;
        writeln!(csv, "{},{}", format_decimal(theta), format_decimal(*db)).unwrap();
    }
    Ok(csv)
}

pub fn cmd_pattern(file: &Path, grid: GridSpec, output: &Path) -> Result<usize> {
    let input = InputFile::from_json(&read_json(file)?)?;
    let csv = pattern_csv(&input, grid)?;
    fs::write(output, &csv)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", output.display())))?;
    Ok(csv.lines().count() - 1)
}

/// One line of `verify` output.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

/// Re-checks a result against its scenario: phase-only magnitudes, the
/// linear constraint residual and the achieved level.
pub fn verify_result(result: &ResultFile) -> Result<Vec<Check>> {
    let scenario = &result.scenario;
    let geom = scenario.geometry()?;
    let w_pre = scenario.w_pre()?;
    let spec = scenario.spec()?;
    let w_new = result.weights()?;
    if w_new.len() != geom.len() {
        return Err(CliError::Input(format!(
            "field `w_new`: {} entries for {} elements",
            w_new.len(),
            geom.len()
        )));
    }

    let peak = w_pre.magnitudes().into_iter().fold(0.0, f64::max);
    let deviation = w_new
        .magnitudes()
        .iter()
        .zip(w_pre.magnitudes())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let mut checks = vec![Check {
        name: "magnitude-preservation",
        passed: deviation <= 1e-15 * peak,
        detail: format!("max ||w_new| - |w_pre|| = {deviation:.3e} (limit {:.3e})", 1e-15 * peak),
    }];

    let h = compose_h(&geom, &spec, result.psi_used);
    let h_norm = h.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let residual = w_new.inner(&h).norm();
    let limit = 1e-9 * w_new.norm() * h_norm;
    checks.push(Check {
        name: "residual",
        passed: residual <= limit,
        detail: format!("|w_new^H h| = {residual:.3e} (limit {limit:.3e})"),
    });

    let level = match power_response(&w_new, &geom, spec.theta_c, spec.theta0) {
        Ok(level) => level,
        Err(e) => {
            checks.push(Check {
                name: "level",
                passed: false,
                detail: e.to_string(),
            });
            return Ok(checks);
        }
    };
    checks.push(if spec.rho_c.is_null() {
        Check {
            name: "level",
            passed: level.linear() <= 1e-8,
            detail: format!("null depth {:.2} dB (limit -80 dB)", level.db()),
        }
    } else {
        let rel = (level.linear() / spec.rho_c.linear() - 1.0).abs();
        Check {
            name: "level",
            passed: rel <= 1e-6,
            detail: format!(
                "achieved {:.9} dB, requested {:.9} dB, relative error {rel:.3e} (limit 1e-6)",
                level.db(),
                spec.rho_c.db()
            ),
        }
    });
    Ok(checks)
}

/// Verifies a result file as is, or adjusts a scenario first.
pub fn cmd_verify(file: &Path, opts: &AdjustOptions<f64>) -> Result<Vec<Check>> {
    let result = match InputFile::from_json(&read_json(file)?)? {
        InputFile::Result(r) => r,
        InputFile::Scenario(s) => run_adjustment(&s, opts)?,
    };
    verify_result(&result)
}
