//! Command runners and file emission: CSV tables, JSON reports, SVG plots,
//! the resolved-config echo and the run manifest.
//!
//! Every run writes its data files first, then `resolved_config.json`, and
//! the manifest last — a present manifest therefore implies all listed
//! outputs are complete. On error, partially written files are removed.

pub mod csv;
pub mod svg;

use crate::analysis::{
    cutoff_frequency, extract_ndr, find_gap, AnalysisError, GapReport, NdrReport, GAP_THRESHOLD,
};
use crate::config::{derive, ConfigError, DeviceConfig};
use crate::landauer::{iv_sweep, IVCurve, IVPoint};
use crate::scattering::{solve_barrier, ScatterError};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

/// Built-in base configuration for the figure families (document version 1):
/// `alpha = 0.3`, `phi1 = 15°`, `D = 100 nm`, `V0 = 200 meV`, 300 K, with a
/// 201-point bias grid over 0–600 mV.
pub const FIGURE_BASE_CONFIG: &str = r#"{
  "alpha": 0.3,
  "D": 100,
  "V0": 200,
  "phi1": 15,
  "temperature": 300,
  "bias_sweep": {"start": 0, "stop": 600, "count": 201}
}"#;

/// Fermi-wavenumber fractions of the figure-2/3 family.
pub const FIGURE_ALPHAS: [f64; 3] = [0.25, 0.3, 0.35];
/// Incidence angles (degrees) of the figure-4 family.
pub const FIGURE_PHIS: [f64; 3] = [10.0, 15.0, 20.0];
/// Transmission sweeps use a 1 mV grid over the bias range.
pub const FIGURE_TRANSMISSION_POINTS: usize = 601;

#[derive(Debug, Error)]
pub enum CommandError {
    /// Configuration or usage problem (CLI exit code 2).
    #[error("{0}")]
    Config(#[from] ConfigError),
    /// Invalid sweep or command usage (CLI exit code 2).
    #[error("{0}")]
    Usage(String),
    /// Runtime failure: I/O, malformed input data, solver failure
    /// (CLI exit code 3).
    #[error("{0}")]
    Runtime(String),
}

impl CommandError {
    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Config(_) | CommandError::Usage(_) => 2,
            CommandError::Runtime(_) => 3,
        }
    }
}

impl From<std::io::Error> for CommandError {
    fn from(e: std::io::Error) -> Self {
        CommandError::Runtime(format!("I/O error: {e}"))
    }
}

/// What a run produced: command name, the fully-resolved configuration,
/// output files (relative to the output directory), wall time and any
/// warnings such as unconverged quadrature points.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub resolved_config: DeviceConfig,
    pub outputs: Vec<String>,
    pub wall_time_s: f64,
    pub warnings: Vec<String>,
}

/// Sweep variable of the `transmission` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    /// Bias (mV) at fixed `E = E_F`.
    Bias,
    /// Energy (meV) at zero bias.
    Energy,
    /// Incidence angle (degrees) at `E = E_F`, zero bias.
    Angle,
}

/// Parsed `--sweep <var>:<start>:<stop>:<count>` specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub var: SweepVar,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepSpec {
    /// Parse `V:300:400:1001`, `E:5:80:200` or `phi1:-80:80:161`.
    pub fn parse(text: &str) -> Result<SweepSpec, CommandError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 4 {
            return Err(CommandError::Usage(format!(
                "sweep `{text}`: expected <var>:<start>:<stop>:<count>"
            )));
        }
        let var = match parts[0] {
            "V" => SweepVar::Bias,
            "E" => SweepVar::Energy,
            "phi1" => SweepVar::Angle,
            other => {
                return Err(CommandError::Usage(format!(
                    "sweep variable `{other}`: expected one of V, E, phi1"
                )))
            }
        };
        let parse_f = |s: &str, what: &str| -> Result<f64, CommandError> {
            s.parse()
                .map_err(|e| CommandError::Usage(format!("sweep {what} `{s}`: {e}")))
        };
        let spec = SweepSpec {
            var,
            start: parse_f(parts[1], "start")?,
            stop: parse_f(parts[2], "stop")?,
            count: parts[3]
                .parse()
                .map_err(|e| CommandError::Usage(format!("sweep count `{}`: {e}", parts[3])))?,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), CommandError> {
        if self.count < 2 {
            return Err(CommandError::Usage(format!(
                "sweep count must be ≥ 2, got {}",
                self.count
            )));
        }
        if !self.start.is_finite() || !self.stop.is_finite() || self.start >= self.stop {
            return Err(CommandError::Usage(format!(
                "sweep bounds must be finite with start < stop, got {}:{}",
                self.start, self.stop
            )));
        }
        if self.var == SweepVar::Angle && (self.start <= -90.0 || self.stop >= 90.0) {
            return Err(CommandError::Usage(format!(
                "phi1 sweep bounds must lie inside (-90, 90), got {}:{}",
                self.start, self.stop
            )));
        }
        Ok(())
    }

    /// Uniform grid of the sweep.
    pub fn grid(&self) -> Vec<f64> {
        let h = (self.stop - self.start) / (self.count - 1) as f64;
        let mut g: Vec<f64> = (0..self.count)
            .map(|i| self.start + h * i as f64)
            .collect();
        g[self.count - 1] = self.stop;
        g
    }
}

/// JSON report of the `analyze` command.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub ndr_detected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ndr: Option<NdrReport>,
    pub gap_detected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapReport>,
    pub f_c_thz: f64,
}

/// Tracks files written under one output directory so they can be removed
/// if the command fails partway.
struct OutputTracker {
    dir: PathBuf,
    written: Vec<String>,
}

impl OutputTracker {
    fn new(dir: &Path) -> Result<OutputTracker, CommandError> {
        std::fs::create_dir_all(dir)?;
        Ok(OutputTracker {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<(), CommandError> {
        std::fs::write(self.dir.join(name), contents)?;
        self.written.push(name.to_string());
        Ok(())
    }

    fn cleanup(&self) {
        for name in &self.written {
            let _ = std::fs::remove_file(self.dir.join(name));
        }
    }
}

fn regime_label(result: &Result<crate::scattering::ScatteringSolution, ScatterError>) -> &'static str {
    match result {
        Ok(sol) => sol.regime.label(),
        Err(ScatterError::NoInputMode { .. }) => "NoInputMode",
        Err(ScatterError::DegenerateEnergy { .. }) => "DegenerateEnergy",
        Err(ScatterError::GrazingOutput { .. }) => "GrazingOutput",
        Err(ScatterError::SingularSystem { .. }) => "SingularSystem",
    }
}

/// Evaluate one transmission sample for a sweep variable value; error
/// regimes carry zero transmission and their regime label.
fn transmission_sample(x: f64, var: SweepVar, cfg: &DeviceConfig) -> (f64, f64, &'static str) {
    let dq = derive(cfg);
    let e_f = cfg.e_f_mev();
    let result = match var {
        SweepVar::Bias => solve_barrier(e_f, dq.k_y, x, cfg),
        SweepVar::Energy => solve_barrier(x, dq.k_y, 0.0, cfg),
        SweepVar::Angle => solve_barrier(e_f, dq.k_f * x.to_radians().sin(), 0.0, cfg),
    };
    let t = result.as_ref().map_or(0.0, |sol| sol.transmission);
    (x, t, regime_label(&result))
}

fn unconverged_warnings(label: &str, curve: &IVCurve) -> Vec<String> {
    curve
        .points
        .iter()
        .filter(|p| !p.converged)
        .map(|p| {
            format!(
                "{label}: quadrature budget exhausted at V = {} mV (est_error = {:.3e})",
                p.v_mv, p.est_error
            )
        })
        .collect()
}

fn finalize(
    tracker: &mut OutputTracker,
    command: &str,
    cfg: &DeviceConfig,
    warnings: Vec<String>,
    started: Instant,
) -> Result<RunManifest, CommandError> {
    let config_json = serde_json::to_string_pretty(cfg)
        .map_err(|e| CommandError::Runtime(format!("config serialization: {e}")))?;
    tracker.write("resolved_config.json", &(config_json + "\n"))?;
    let manifest = RunManifest {
        command: command.to_string(),
        resolved_config: cfg.clone(),
        outputs: tracker.written.clone(),
        wall_time_s: started.elapsed().as_secs_f64(),
        warnings,
    };
    let manifest_json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| CommandError::Runtime(format!("manifest serialization: {e}")))?;
    tracker.write("manifest.json", &(manifest_json + "\n"))?;
    Ok(manifest)
}

/// `transmission`: sweep T over bias, energy or angle and emit
/// `transmission.csv`.
pub fn run_transmission(
    cfg: &DeviceConfig,
    sweep: &SweepSpec,
    outdir: &Path,
) -> Result<RunManifest, CommandError> {
    let started = Instant::now();
    let mut tracker = OutputTracker::new(outdir)?;
    let run = |tracker: &mut OutputTracker| {
        let grid = sweep.grid();
        let var = sweep.var;
        let rows = crate::par::map_grid(&grid, |x| transmission_sample(x, var, cfg));
        tracker.write("transmission.csv", &csv::transmission_csv(&rows))?;
        finalize(tracker, "transmission", cfg, Vec::new(), started)
    };
    run(&mut tracker).inspect_err(|_| tracker.cleanup())
}

/// `iv`: run the configured bias sweep and emit `iv.csv`.
pub fn run_iv(cfg: &DeviceConfig, outdir: &Path) -> Result<RunManifest, CommandError> {
    let started = Instant::now();
    let mut tracker = OutputTracker::new(outdir)?;
    let run = |tracker: &mut OutputTracker| {
        let curve = iv_sweep(cfg);
        tracker.write("iv.csv", &csv::iv_csv(&curve.points))?;
        let warnings = unconverged_warnings("iv", &curve);
        finalize(tracker, "iv", cfg, warnings, started)
    };
    run(&mut tracker).inspect_err(|_| tracker.cleanup())
}

/// Build the analysis report for an I-V table: NDR metrics, the
/// transmission gap over the same bias grid, and the cutoff frequency.
pub fn analyze_curve(samples: &[(f64, f64)], cfg: &DeviceConfig) -> Result<AnalyzeReport, CommandError> {
    if samples.len() < 10 {
        return Err(CommandError::Runtime(format!(
            "analysis needs at least 10 I-V samples, got {}",
            samples.len()
        )));
    }
    if !samples.windows(2).all(|w| w[0].0 < w[1].0) {
        return Err(CommandError::Runtime(
            "I-V samples must be on a strictly increasing bias grid".into(),
        ));
    }
    let curve = IVCurve {
        points: samples
            .iter()
            .map(|&(v_mv, i_norm)| IVPoint {
                v_mv,
                i_norm,
                est_error: 0.0,
                n_evals: 0,
                converged: true,
            })
            .collect(),
        config_echo: cfg.clone(),
    };
    let ndr = match extract_ndr(&curve) {
        Ok(r) => Some(r),
        Err(AnalysisError::NoNdrDetected) => None,
        Err(e) => return Err(CommandError::Runtime(e.to_string())),
    };
    // transmission at the Fermi level over the same bias grid
    let dq = derive(cfg);
    let e_f = cfg.e_f_mev();
    let biases: Vec<f64> = samples.iter().map(|&(v, _)| v).collect();
    let t_samples: Vec<(f64, f64)> = crate::par::map_grid(&biases, |v| {
        (v, solve_barrier(e_f, dq.k_y, v, cfg).map_or(0.0, |s| s.transmission))
    });
    let gap = match find_gap(&t_samples, GAP_THRESHOLD, cfg) {
        Ok(g) => Some(g),
        Err(AnalysisError::NoGapFound | AnalysisError::ZeroWidthGap) => None,
        Err(e) => return Err(CommandError::Runtime(e.to_string())),
    };
    Ok(AnalyzeReport {
        ndr_detected: ndr.is_some(),
        ndr,
        gap_detected: gap.is_some(),
        gap,
        f_c_thz: cutoff_frequency(cfg),
    })
}

/// `analyze`: read an `iv.csv`, emit `report.json` and optionally an SVG
/// plot with peak/valley markers. Absence of an NDR region is a finding,
/// not a failure.
pub fn run_analyze(
    cfg: &DeviceConfig,
    iv_csv_path: &Path,
    outdir: &Path,
    with_svg: bool,
) -> Result<RunManifest, CommandError> {
    let started = Instant::now();
    let mut tracker = OutputTracker::new(outdir)?;
    let run = |tracker: &mut OutputTracker| {
        let text = std::fs::read_to_string(iv_csv_path).map_err(|e| {
            CommandError::Runtime(format!("cannot read {}: {e}", iv_csv_path.display()))
        })?;
        let samples = csv::parse_iv_csv(&text).map_err(|e| {
            CommandError::Runtime(format!("{}: {e}", iv_csv_path.display()))
        })?;
        let report = analyze_curve(&samples, cfg)?;
        let report_json = serde_json::to_string_pretty(&report)
            .map_err(|e| CommandError::Runtime(format!("report serialization: {e}")))?;
        tracker.write("report.json", &(report_json + "\n"))?;
        if with_svg {
            let markers = report
                .ndr
                .map(|n| ((n.v_peak, n.i_peak), (n.v_valley, n.i_valley)));
            let plot = svg::iv_plot(
                &samples,
                markers.map(|m| m.0),
                markers.map(|m| m.1),
                "I-V with NDR markers",
            );
            tracker.write("iv_plot.svg", &plot)?;
        }
        finalize(tracker, "analyze", cfg, Vec::new(), started)
    };
    run(&mut tracker).inspect_err(|_| tracker.cleanup())
}

/// A figure-family member: the base document with `alpha` and `phi1`
/// replaced.
pub fn figure_config(alpha: f64, phi1_deg: f64) -> DeviceConfig {
    let mut value: serde_json::Value =
        serde_json::from_str(FIGURE_BASE_CONFIG).expect("built-in config parses");
    value["alpha"] = serde_json::json!(alpha);
    value["phi1"] = serde_json::json!(phi1_deg);
    DeviceConfig::from_json_str(&value.to_string()).expect("built-in config validates")
}

fn alpha_label(alpha: f64) -> String {
    format!("alpha{alpha:.2}")
}

fn phi_label(phi: f64) -> String {
    format!("phi{phi:.0}")
}

/// `figures`: emit the three curve families as wide CSVs.
///
/// - `fig2.csv`: transmission vs bias (1 mV grid) for the three alphas at
///   `phi1 = 15°`;
/// - `fig3.csv`: I-V for the same alphas;
/// - `fig4.csv`: I-V for `phi1 ∈ {10°, 15°, 20°}` at `alpha = 0.3`.
///
/// The echoed `resolved_config.json` is the base (`alpha = 0.3`,
/// `phi1 = 15°`) document.
pub fn run_figures(outdir: &Path) -> Result<RunManifest, CommandError> {
    let started = Instant::now();
    let mut tracker = OutputTracker::new(outdir)?;
    let run = |tracker: &mut OutputTracker| {
        let base = figure_config(0.3, 15.0);
        let mut warnings = Vec::new();

        // fig2: transmission vs bias at 1 mV resolution
        let sweep = SweepSpec {
            var: SweepVar::Bias,
            start: base.bias_sweep.start,
            stop: base.bias_sweep.stop,
            count: FIGURE_TRANSMISSION_POINTS,
        };
        let grid = sweep.grid();
        let mut t_curves = Vec::new();
        for alpha in FIGURE_ALPHAS {
            let cfg = figure_config(alpha, 15.0);
            let rows = crate::par::map_grid(&grid, |x| transmission_sample(x, SweepVar::Bias, &cfg));
            t_curves.push((
                format!("T_{}", alpha_label(alpha)),
                rows.into_iter().map(|(_, t, _)| t).collect::<Vec<f64>>(),
            ));
        }
        tracker.write("fig2.csv", &csv::wide_csv("V_mV", &grid, &t_curves))?;

        // fig3: I-V family over alpha
        let bias_grid = base.bias_sweep.grid();
        let mut i_curves = Vec::new();
        for alpha in FIGURE_ALPHAS {
            let cfg = figure_config(alpha, 15.0);
            let curve = iv_sweep(&cfg);
            warnings.extend(unconverged_warnings(&format!("fig3 {}", alpha_label(alpha)), &curve));
            i_curves.push((
                format!("I_{}", alpha_label(alpha)),
                curve.points.iter().map(|p| p.i_norm).collect::<Vec<f64>>(),
            ));
        }
        tracker.write("fig3.csv", &csv::wide_csv("V_mV", &bias_grid, &i_curves))?;

        // fig4: I-V family over incidence angle
        let mut phi_curves = Vec::new();
        for phi in FIGURE_PHIS {
            let cfg = figure_config(0.3, phi);
            let curve = iv_sweep(&cfg);
            warnings.extend(unconverged_warnings(&format!("fig4 {}", phi_label(phi)), &curve));
            phi_curves.push((
                format!("I_{}", phi_label(phi)),
                curve.points.iter().map(|p| p.i_norm).collect::<Vec<f64>>(),
            ));
        }
        tracker.write("fig4.csv", &csv::wide_csv("V_mV", &bias_grid, &phi_curves))?;

        finalize(tracker, "figures", &base, warnings, started)
    };
    run(&mut tracker).inspect_err(|_| tracker.cleanup())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(json: &str) -> DeviceConfig {
        DeviceConfig::from_json_str(json).unwrap()
    }

    #[test]
    fn sweep_spec_parses_and_validates() {
        let s = SweepSpec::parse("V:300:400:1001").unwrap();
        assert_eq!(s.var, SweepVar::Bias);
        assert_eq!(s.grid().len(), 1001);
        assert_eq!(s.grid()[0], 300.0);
        assert_eq!(s.grid()[1000], 400.0);

        assert!(SweepSpec::parse("V:300:400").is_err());
        assert!(SweepSpec::parse("Q:0:1:10").is_err());
        assert!(SweepSpec::parse("V:400:300:10").is_err());
        assert!(SweepSpec::parse("V:0:600:1").is_err());
        assert!(SweepSpec::parse("phi1:-90:80:10").is_err());
        let err = SweepSpec::parse("V:x:400:10").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn transmission_sweep_angle_at_zero_barrier_is_unity() {
        let c = cfg(r#"{"alpha": 0.3, "D": 100, "V0": 0, "phi1": 15}"#);
        let sweep = SweepSpec::parse("phi1:-80:80:41").unwrap();
        let dir = tempfile::tempdir().unwrap();
        let manifest = run_transmission(&c, &sweep, dir.path()).unwrap();
        assert_eq!(manifest.command, "transmission");
        for name in &manifest.outputs {
            assert!(dir.path().join(name).exists(), "{name} missing");
        }
        let text = std::fs::read_to_string(dir.path().join("transmission.csv")).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "x,T,regime");
        let mut rows = 0;
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            let t: f64 = fields[1].parse().unwrap();
            assert!((t - 1.0).abs() < 1e-12, "{line}");
            assert_eq!(fields[2], "Propagating");
            rows += 1;
        }
        assert_eq!(rows, 41);
        assert!(dir.path().join("manifest.json").exists());
        assert!(dir.path().join("resolved_config.json").exists());
    }

    #[test]
    fn transmission_bias_sweep_crosses_the_gap() {
        let c = cfg(r#"{"alpha": 0.3, "D": 100, "V0": 200, "phi1": 15}"#);
        let sweep = SweepSpec::parse("V:300:400:101").unwrap();
        let dir = tempfile::tempdir().unwrap();
        run_transmission(&c, &sweep, dir.path()).unwrap();
        let text = std::fs::read_to_string(dir.path().join("transmission.csv")).unwrap();
        let gap_rows: Vec<&str> = text
            .lines()
            .filter(|l| l.ends_with(",BarrierGap"))
            .collect();
        assert!(!gap_rows.is_empty());
        for row in gap_rows {
            let t: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
            assert_eq!(t, 0.0);
        }
    }

    #[test]
    fn transmission_energy_sweep_labels_error_regimes() {
        // below the incident band edge ħv_F|k_y| there is no propagating
        // input mode; rows carry T = 0 with the error label
        let c = cfg(r#"{"E_F": 24.8, "D": 100, "V0": 200, "phi1": 30}"#);
        let dq = crate::config::derive(&c);
        let edge = dq.hbar_vf * dq.k_y.abs();
        assert!(edge > 5.0);
        let sweep = SweepSpec::parse("E:1:40:79").unwrap();
        let dir = tempfile::tempdir().unwrap();
        run_transmission(&c, &sweep, dir.path()).unwrap();
        let text = std::fs::read_to_string(dir.path().join("transmission.csv")).unwrap();
        let mut saw_no_input = false;
        for line in text.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            let e: f64 = fields[0].parse().unwrap();
            let t: f64 = fields[1].parse().unwrap();
            if fields[2] == "NoInputMode" {
                saw_no_input = true;
                assert_eq!(t, 0.0);
                assert!(e < edge + 1e-9, "NoInputMode above the band edge at E={e}");
            }
        }
        assert!(saw_no_input);
    }

    #[test]
    fn iv_run_writes_zero_bias_row_and_manifest() {
        let c = cfg(
            r#"{"alpha": 0.3, "D": 100, "V0": 200, "phi1": 15,
                "bias_sweep": {"start": 0, "stop": 600, "count": 13}}"#,
        );
        let dir = tempfile::tempdir().unwrap();
        let manifest = run_iv(&c, dir.path()).unwrap();
        assert!(manifest.warnings.is_empty());
        let text = std::fs::read_to_string(dir.path().join("iv.csv")).unwrap();
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(rows.len(), 13);
        let first: Vec<&str> = rows[0].split(',').collect();
        assert_eq!(first[0].parse::<f64>().unwrap(), 0.0);
        assert_eq!(first[1].parse::<f64>().unwrap(), 0.0);
        // byte determinism across runs
        let dir2 = tempfile::tempdir().unwrap();
        run_iv(&c, dir2.path()).unwrap();
        let text2 = std::fs::read_to_string(dir2.path().join("iv.csv")).unwrap();
        assert_eq!(text, text2);
    }

    #[test]
    fn analyze_reports_metrics_and_handles_monotone_input() {
        let c = cfg(r#"{"alpha": 0.3, "D": 100, "V0": 200, "phi1": 15}"#);
        // monotone synthetic table: NDR absent is a finding, not an error
        let mut table = String::from("V_mV,I_norm,est_error,n_evals\n");
        for k in 0..12 {
            table.push_str(&format!("{k}.0,{}.0,0,0\n", k + 1));
        }
        let dir = tempfile::tempdir().unwrap();
        let iv_path = dir.path().join("iv.csv");
        std::fs::write(&iv_path, &table).unwrap();
        let out = dir.path().join("out");
        let manifest = run_analyze(&c, &iv_path, &out, true).unwrap();
        assert_eq!(manifest.command, "analyze");
        let report: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap())
                .unwrap();
        assert_eq!(report["ndr_detected"], serde_json::json!(false));
        let f_c = report["f_c_thz"].as_f64().unwrap();
        assert!((f_c - 1.59).abs() < 0.01);
        assert!(out.join("iv_plot.svg").exists());
    }

    #[test]
    fn analyze_rejects_malformed_csv_with_line_number() {
        let c = cfg(r#"{"alpha": 0.3, "D": 100, "V0": 200, "phi1": 15}"#);
        let dir = tempfile::tempdir().unwrap();
        let iv_path = dir.path().join("iv.csv");
        std::fs::write(&iv_path, "V_mV,I_norm,est_error,n_evals\n1,2,3,4\nbroken line\n")
            .unwrap();
        let out = dir.path().join("out");
        let err = run_analyze(&c, &iv_path, &out, false).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("line 3"), "{err}");
        // partial outputs removed
        assert!(!out.join("report.json").exists());
        assert!(!out.join("manifest.json").exists());
    }

    #[test]
    fn figure_config_members_resolve() {
        for alpha in FIGURE_ALPHAS {
            let c = figure_config(alpha, 15.0);
            assert_eq!(c.v0_mev, 200.0);
            assert_eq!(c.bias_sweep.count, 201);
        }
        let c = figure_config(0.3, 20.0);
        assert_eq!(c.phi1_deg, 20.0);
    }
}
