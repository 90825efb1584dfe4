//! Device configuration: loading, validation, defaults, derived quantities.
//!
//! Configurations arrive as flat JSON documents. Unknown keys are rejected
//! (they are almost always typos) and every validation error names the
//! offending key and the violated constraint. The Fermi level may be given
//! either directly as `E_F` (meV) or as the dimensionless fraction `alpha`
//! of the reference Fermi wavenumber `2π/lambda_F0`; exactly one of the two
//! must be present.

use crate::constants::{hbar_vf_mev_nm, thermal_energy_mev, C_LIGHT};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

/// Default Fermi velocity (m/s): c/300.
pub const DEFAULT_V_F: f64 = C_LIGHT / 300.0;
/// Default barrier height (meV).
pub const DEFAULT_V0_MEV: f64 = 200.0;
/// Default temperature (K).
pub const DEFAULT_TEMPERATURE_K: f64 = 300.0;
/// Default reference Fermi wavelength (nm).
pub const DEFAULT_LAMBDA_F0_NM: f64 = 50.0;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("config I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("config key `{key}`: {constraint} (got {got})")]
    Validation {
        key: &'static str,
        constraint: &'static str,
        got: String,
    },
}

fn invalid(key: &'static str, constraint: &'static str, got: impl ToString) -> ConfigError {
    ConfigError::Validation {
        key,
        constraint,
        got: got.to_string(),
    }
}

/// Uniform bias grid specification (mV).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiasSweep {
    /// First bias (mV).
    pub start: f64,
    /// Last bias (mV).
    pub stop: f64,
    /// Number of grid points (≥ 2).
    pub count: usize,
}

impl Default for BiasSweep {
    fn default() -> Self {
        BiasSweep {
            start: 0.0,
            stop: 600.0,
            count: 201,
        }
    }
}

impl BiasSweep {
    /// The uniform grid, with one adjustment: if zero bias lies inside
    /// `[start, stop]` but not on the grid, the nearest grid point is
    /// snapped to exactly 0 so that the zero-bias identity `I(0) = 0`
    /// always appears in a sweep that spans it. Point count and strict
    /// ordering are preserved.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.count;
        let h = (self.stop - self.start) / (n - 1) as f64;
        let mut g: Vec<f64> = (0..n).map(|i| self.start + h * i as f64).collect();
        // exact endpoints regardless of rounding
        g[n - 1] = self.stop;
        if self.start <= 0.0 && 0.0 <= self.stop && !g.contains(&0.0) {
            let nearest = (0..n)
                .min_by(|&i, &j| g[i].abs().total_cmp(&g[j].abs()))
                .unwrap();
            g[nearest] = 0.0;
        }
        g
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.count < 2 {
            return Err(invalid("bias_sweep.count", "must be ≥ 2", self.count));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(invalid("bias_sweep", "bounds must be finite", "non-finite"));
        }
        if self.start >= self.stop {
            return Err(invalid(
                "bias_sweep",
                "start must be < stop",
                format!("start={}, stop={}", self.start, self.stop),
            ));
        }
        Ok(())
    }
}

/// Adaptive quadrature tolerances and budget for the Landauer integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureSpec {
    /// Relative tolerance on the current integral.
    pub rel_tol: f64,
    /// Absolute tolerance (same units as the current).
    pub abs_tol: f64,
    /// Maximum number of panel bisections per integral.
    pub max_subdivisions: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-6,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<(), ConfigError> {
        if !self.rel_tol.is_finite() || self.rel_tol <= 0.0 {
            return Err(invalid("quadrature.rel_tol", "must be > 0", self.rel_tol));
        }
        if !self.abs_tol.is_finite() || self.abs_tol < 0.0 {
            return Err(invalid("quadrature.abs_tol", "must be ≥ 0", self.abs_tol));
        }
        if self.max_subdivisions < 16 {
            return Err(invalid(
                "quadrature.max_subdivisions",
                "must be ≥ 16",
                self.max_subdivisions,
            ));
        }
        Ok(())
    }
}

/// How the Fermi level was specified in the source document.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FermiLevel {
    /// Directly, in meV.
    Energy(f64),
    /// As `k_F = alpha·2π/lambda_F0`.
    Alpha(f64),
}

/// One simulated device: geometry, energies, angle, temperature and the
/// sweep/quadrature settings shared by all commands.
///
/// Immutable after construction; values are validated on load.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceConfig {
    /// Fermi velocity (m/s).
    pub v_f: f64,
    /// Barrier width (nm).
    pub d_nm: f64,
    /// Barrier height (meV).
    pub v0_mev: f64,
    /// Fermi level as given (energy or alpha fraction).
    pub fermi: FermiLevel,
    /// Reference Fermi wavelength for `alpha` (nm).
    pub lambda_f0_nm: f64,
    /// Incidence angle at the Fermi level (degrees, |phi1| < 90).
    pub phi1_deg: f64,
    /// Temperature (K).
    pub temperature_k: f64,
    /// Bias grid for I-V sweeps.
    pub bias_sweep: BiasSweep,
    /// Quadrature settings for the current integral.
    pub quadrature: QuadratureSpec,
    /// Also integrate the hole branch `E ≤ -ħv_F|k_y|` of the leads.
    pub include_hole_branch: bool,
}

/// Raw JSON shape: every key optional so defaulting and the
/// exactly-one-of-`E_F`/`alpha` rule can be checked explicitly. Field
/// names mirror the document keys.
#[allow(non_snake_case)]
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    v_F: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    D: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    V0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    E_F: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_F0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    temperature: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bias_sweep: Option<BiasSweep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quadrature: Option<QuadratureSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    include_hole_branch: Option<bool>,
}

impl DeviceConfig {
    /// Parse and validate a JSON configuration document.
    pub fn from_json_str(text: &str) -> Result<DeviceConfig, ConfigError> {
        let raw: RawConfig = serde_json::from_str(text)?;
        Self::resolve(raw)
    }

    /// Load a configuration from a file path.
    pub fn from_path(path: impl AsRef<Path>) -> Result<DeviceConfig, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    fn resolve(raw: RawConfig) -> Result<DeviceConfig, ConfigError> {
        let fermi = match (raw.E_F, raw.alpha) {
            (Some(e), None) => FermiLevel::Energy(e),
            (None, Some(a)) => FermiLevel::Alpha(a),
            (Some(_), Some(_)) => {
                return Err(invalid("E_F/alpha", "exactly one of E_F/alpha", "both"))
            }
            (None, None) => {
                return Err(invalid("E_F/alpha", "exactly one of E_F/alpha", "neither"))
            }
        };
        let cfg = DeviceConfig {
            v_f: raw.v_F.unwrap_or(DEFAULT_V_F),
            d_nm: raw.D.ok_or_else(|| invalid("D", "required key missing", "nothing"))?,
            v0_mev: raw.V0.unwrap_or(DEFAULT_V0_MEV),
            fermi,
            lambda_f0_nm: raw.lambda_F0.unwrap_or(DEFAULT_LAMBDA_F0_NM),
            phi1_deg: raw
                .phi1
                .ok_or_else(|| invalid("phi1", "required key missing", "nothing"))?,
            temperature_k: raw.temperature.unwrap_or(DEFAULT_TEMPERATURE_K),
            bias_sweep: raw.bias_sweep.unwrap_or_default(),
            quadrature: raw.quadrature.unwrap_or_default(),
            include_hole_branch: raw.include_hole_branch.unwrap_or(false),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if !self.v_f.is_finite() || self.v_f <= 0.0 {
            return Err(invalid("v_F", "must be finite and > 0", self.v_f));
        }
        if !self.d_nm.is_finite() || self.d_nm <= 0.0 {
            return Err(invalid("D", "must be finite and > 0", self.d_nm));
        }
        if !self.v0_mev.is_finite() {
            return Err(invalid("V0", "must be finite", self.v0_mev));
        }
        if !self.lambda_f0_nm.is_finite() || self.lambda_f0_nm <= 0.0 {
            return Err(invalid("lambda_F0", "must be finite and > 0", self.lambda_f0_nm));
        }
        match self.fermi {
            FermiLevel::Energy(e) if !e.is_finite() || e <= 0.0 => {
                return Err(invalid("E_F", "must be finite and > 0", e));
            }
            FermiLevel::Alpha(a) if !a.is_finite() || a <= 0.0 => {
                return Err(invalid("alpha", "must be finite and > 0", a));
            }
            _ => {}
        }
        if !self.phi1_deg.is_finite() || self.phi1_deg.abs() >= 90.0 {
            return Err(invalid("phi1", "must satisfy |phi1| < 90°", self.phi1_deg));
        }
        if !self.temperature_k.is_finite() || self.temperature_k < 0.0 {
            return Err(invalid("temperature", "must be finite and ≥ 0", self.temperature_k));
        }
        self.bias_sweep.validate()?;
        self.quadrature.validate()?;
        Ok(())
    }

    /// Incidence angle in radians.
    pub fn phi1_rad(&self) -> f64 {
        self.phi1_deg.to_radians()
    }

    /// Fermi energy in meV, resolving `alpha` against the reference
    /// wavenumber `2π/lambda_F0` when needed.
    pub fn e_f_mev(&self) -> f64 {
        match self.fermi {
            FermiLevel::Energy(e) => e,
            FermiLevel::Alpha(a) => {
                hbar_vf_mev_nm(self.v_f) * a * (2.0 * std::f64::consts::PI / self.lambda_f0_nm)
            }
        }
    }

    /// Serialize the fully-resolved configuration (defaults included) back
    /// to the flat JSON document shape. Exactly one of `E_F`/`alpha` is
    /// emitted, matching how the Fermi level was specified, so the echo can
    /// be reloaded as-is.
    pub fn to_json_value(&self) -> serde_json::Value {
        let (e_f, alpha) = match self.fermi {
            FermiLevel::Energy(e) => (Some(e), None),
            FermiLevel::Alpha(a) => (None, Some(a)),
        };
        let raw = RawConfig {
            v_F: Some(self.v_f),
            D: Some(self.d_nm),
            V0: Some(self.v0_mev),
            E_F: e_f,
            alpha,
            lambda_F0: Some(self.lambda_f0_nm),
            phi1: Some(self.phi1_deg),
            temperature: Some(self.temperature_k),
            bias_sweep: Some(self.bias_sweep),
            quadrature: Some(self.quadrature),
            include_hole_branch: Some(self.include_hole_branch),
        };
        serde_json::to_value(raw).expect("config serialization cannot fail")
    }
}

impl Serialize for DeviceConfig {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json_value().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DeviceConfig {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawConfig::deserialize(deserializer)?;
        DeviceConfig::resolve(raw).map_err(serde::de::Error::custom)
    }
}

/// Quantities derived once from a validated configuration and shared by the
/// scattering and transport layers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    /// `ħ·v_F` (meV·nm).
    pub hbar_vf: f64,
    /// Fermi wavenumber `E_F/ħv_F` (1/nm).
    pub k_f: f64,
    /// Conserved transverse wavenumber `k_F·sin(phi1)` (1/nm).
    pub k_y: f64,
    /// `k_B·T` (meV).
    pub thermal_energy: f64,
}

/// Compute the derived quantities of a validated configuration.
pub fn derive(cfg: &DeviceConfig) -> DerivedQuantities {
    let hbar_vf = hbar_vf_mev_nm(cfg.v_f);
    let k_f = match cfg.fermi {
        // k_F directly from alpha avoids a multiply/divide round trip
        FermiLevel::Alpha(a) => a * (2.0 * std::f64::consts::PI / cfg.lambda_f0_nm),
        FermiLevel::Energy(e) => e / hbar_vf,
    };
    DerivedQuantities {
        hbar_vf,
        k_f,
        k_y: k_f * cfg.phi1_rad().sin(),
        thermal_energy: thermal_energy_mev(cfg.temperature_k),
    }
}
