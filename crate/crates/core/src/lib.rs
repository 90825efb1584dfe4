//! Ballistic electron transport through a single electrostatically gated,
//! biased graphene barrier.
//!
//! The carrier kinematics are those of massless Dirac fermions with a linear
//! dispersion `E = ±ħ|k|·v_F`. The crate solves the two-component spinor
//! scattering problem for a rectangular barrier under a step-approximated
//! bias drop, and builds on top of it:
//!
//! - transmission spectra with a regime classification (Klein tunneling at
//!   normal incidence, total-reflection transmission gap off normal),
//! - finite-temperature ballistic I-V curves via the Landauer energy
//!   integral at fixed transverse momentum,
//! - device metrics: gap edges, NDR peak/valley and peak-to-valley ratio,
//!   steepest negative differential conductance, and the ballistic cutoff
//!   frequency `v_F / 2πD`,
//! - CSV/SVG/JSON emission for reproducible figure-style sweeps.
//!
//! Internal units are meV and nm throughout the numeric core; SI values
//! appear only at configuration boundaries and in the cutoff frequency.
//! With the default `v_F = c/300`, `ħ·v_F ≈ 657.76 meV·nm`, which keeps
//! every intermediate quantity near unity.
//!
//! Sweeps evaluate grid points in parallel via rayon when the default
//! `parallel` feature is enabled; every `*_serial` entry point and the
//! sequential fallback produce bit-identical results.

pub mod analysis;
pub mod config;
pub mod constants;
pub mod io;
pub mod landauer;
pub mod par;
pub mod quad;
pub mod scattering;

pub use analysis::{
    analytic_gap, cutoff_frequency, extract_ndr, find_gap, trend_check, AnalysisError, GapReport,
    NdrReport, TrendVerdict,
};
pub use config::{
    derive, BiasSweep, ConfigError, DerivedQuantities, DeviceConfig, QuadratureSpec,
};
pub use constants::PhysicalConstants;
pub use landauer::{
    current, fermi_occupation, integration_breakpoints, iv_sweep, iv_sweep_serial, IVCurve,
    IVPoint,
};
pub use scattering::{
    closed_form_unbiased, region_kinematics, solve_barrier, solve_barrier_oracle, Regime,
    RegionState, ScatterError, ScatteringSolution,
};
