//! Finite-temperature ballistic current through the barrier.
//!
//! The current at bias V is the Landauer energy integral
//!
//! ```text
//! I(V) = ∫ T(E, k_y, V) · [f(E, E_F) - f(E, E_F - eV)] dE
//! ```
//!
//! held at fixed transverse momentum `k_y = k_F sin φ1` (transverse momentum
//! is conserved across the x-dependent potential; the configured angle sets
//! it at the Fermi level). The source contact stays at `μ_L = E_F` and the
//! drain follows the band shift, `μ_R = E_F - eV`. Currents are reported in
//! units of `(2e/h)·meV` per transverse mode: spin degeneracy is folded in,
//! valley degeneracy is not (multiply by [`VALLEY_DEGENERACY`] if wanted).
//!
//! The integrand is only piecewise smooth: band edges and Dirac points of
//! the three regions produce kinks, gaps and guarded singularities. Panel
//! boundaries are therefore placed at every such energy (nudged ±1e-9 meV so
//! no evaluation lands on one) before the adaptive quadrature runs.

use crate::config::{derive, DeviceConfig};
use crate::quad::{integrate_adaptive, QuadResult};
use crate::scattering::{region_potentials, solve_barrier, DEGENERACY_GUARD_MEV};

/// Valley degeneracy factor of graphene, not folded into reported currents.
pub const VALLEY_DEGENERACY: f64 = 2.0;

/// Thermal window half-width in units of k_B·T.
const WINDOW_KT: f64 = 20.0;

/// One point of an I-V curve.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct IVPoint {
    /// Bias (mV).
    pub v_mv: f64,
    /// Current in (2e/h)·meV per transverse mode.
    pub i_norm: f64,
    /// Quadrature error estimate, same units as `i_norm`.
    pub est_error: f64,
    /// Integrand evaluation count.
    pub n_evals: u64,
    /// False when the quadrature budget was exhausted before reaching
    /// tolerance; the value is the best available estimate.
    pub converged: bool,
}

/// An ordered I-V sweep with the configuration that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct IVCurve {
    /// Samples on a strictly increasing bias grid.
    pub points: Vec<IVPoint>,
    /// The configuration the sweep was computed from.
    pub config_echo: DeviceConfig,
}

/// Fermi-Dirac occupation `1/(1 + exp((E - mu)/kT))`, overflow-safe for
/// arbitrarily large `|E - mu|/kT`. At `kT = 0` this is the step function
/// with value 1/2 at `E = mu`.
pub fn fermi_occupation(e: f64, mu: f64, kt: f64) -> f64 {
    if kt == 0.0 {
        return match e.partial_cmp(&mu) {
            Some(std::cmp::Ordering::Less) => 1.0,
            Some(std::cmp::Ordering::Equal) => 0.5,
            _ => 0.0,
        };
    }
    let x = (e - mu) / kt;
    if x > 0.0 {
        let ex = (-x).exp();
        ex / (1.0 + ex)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// Integration window `[max(ħv_F|k_y|, 0) + guard, E_F + max(eV, 0) + 20·kT]`
/// for the electron branch.
fn electron_window(bias_mv: f64, k_y: f64, cfg: &DeviceConfig) -> (f64, f64) {
    let dq = derive(cfg);
    let lo = (dq.hbar_vf * k_y.abs()).max(0.0) + DEGENERACY_GUARD_MEV;
    let hi = cfg.e_f_mev() + bias_mv.max(0.0) + WINDOW_KT * dq.thermal_energy;
    (lo, hi)
}

fn breakpoints_in(lo: f64, hi: f64, bias_mv: f64, k_y: f64, cfg: &DeviceConfig) -> Vec<f64> {
    let dq = derive(cfg);
    let transverse = dq.hbar_vf * k_y.abs();
    let u = region_potentials(cfg.v0_mev, bias_mv);
    let mut points = Vec::new();
    // incident band edge plus band edges and Dirac points of regions 2 and 3
    let specials = [
        transverse,
        u[1] - transverse,
        u[1],
        u[1] + transverse,
        u[2] - transverse,
        u[2],
        u[2] + transverse,
    ];
    for e in specials {
        for nudged in [e - DEGENERACY_GUARD_MEV, e + DEGENERACY_GUARD_MEV] {
            if lo < nudged && nudged < hi {
                points.push(nudged);
            }
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

/// Energies inside the electron-branch integration window where the
/// Landauer integrand is non-smooth, each nudged by ±1e-9 meV so panels
/// never evaluate exactly on a band edge or Dirac point. Sorted,
/// deduplicated, strictly inside the open window.
pub fn integration_breakpoints(bias_mv: f64, k_y: f64, cfg: &DeviceConfig) -> Vec<f64> {
    let (lo, hi) = electron_window(bias_mv, k_y, cfg);
    breakpoints_in(lo, hi, bias_mv, k_y, cfg)
}

fn panels_from(lo: f64, hi: f64, interior: &[f64]) -> Vec<(f64, f64)> {
    let mut edges = Vec::with_capacity(interior.len() + 2);
    edges.push(lo);
    edges.extend_from_slice(interior);
    edges.push(hi);
    edges.windows(2).map(|w| (w[0], w[1])).collect()
}

fn integrate_branch(
    lo: f64,
    hi: f64,
    bias_mv: f64,
    k_y: f64,
    cfg: &DeviceConfig,
) -> QuadResult {
    let dq = derive(cfg);
    let e_f = cfg.e_f_mev();
    let kt = dq.thermal_energy;
    let q = cfg.quadrature;
    let interior = breakpoints_in(lo, hi, bias_mv, k_y, cfg);
    let integrand = |e: f64| {
        let occupancy = fermi_occupation(e, e_f, kt) - fermi_occupation(e, e_f - bias_mv, kt);
        match solve_barrier(e, k_y, bias_mv, cfg) {
            Ok(sol) => sol.transmission * occupancy,
            Err(_) => 0.0, // guarded degeneracies and no-input energies carry no current
        }
    };
    integrate_adaptive(
        integrand,
        &panels_from(lo, hi, &interior),
        q.rel_tol,
        q.abs_tol,
        q.max_subdivisions,
    )
}

/// The Landauer current at one bias point. Zero bias short-circuits to an
/// exact zero without running any quadrature.
pub fn current(bias_mv: f64, cfg: &DeviceConfig) -> IVPoint {
    if bias_mv == 0.0 {
        return IVPoint {
            v_mv: 0.0,
            i_norm: 0.0,
            est_error: 0.0,
            n_evals: 0,
            converged: true,
        };
    }
    let dq = derive(cfg);
    let k_y = dq.k_y;
    let (lo, hi) = electron_window(bias_mv, k_y, cfg);
    let mut total = integrate_branch(lo, hi, bias_mv, k_y, cfg);

    if cfg.include_hole_branch {
        // mirrored window on the hole side of the leads
        let hole_hi = -(dq.hbar_vf * k_y.abs()) - DEGENERACY_GUARD_MEV;
        let hole_lo = cfg.e_f_mev() - bias_mv.max(0.0) - WINDOW_KT * dq.thermal_energy;
        if hole_lo < hole_hi {
            let hole = integrate_branch(hole_lo, hole_hi, bias_mv, k_y, cfg);
            total = QuadResult {
                value: total.value + hole.value,
                est_error: total.est_error + hole.est_error,
                n_evals: total.n_evals + hole.n_evals,
                converged: total.converged && hole.converged,
            };
        }
    }

    IVPoint {
        v_mv: bias_mv,
        i_norm: total.value,
        est_error: total.est_error,
        n_evals: total.n_evals,
        converged: total.converged,
    }
}

/// Evaluate [`current`] on the configured bias grid, in parallel when the
/// `parallel` feature is enabled. Grid points are independent and the
/// result is identical regardless of scheduling.
pub fn iv_sweep(cfg: &DeviceConfig) -> IVCurve {
    IVCurve {
        points: crate::par::map_grid(&cfg.bias_sweep.grid(), |v| current(v, cfg)),
        config_echo: cfg.clone(),
    }
}

/// Sequential twin of [`iv_sweep`]; always single-threaded, bit-identical
/// output.
pub fn iv_sweep_serial(cfg: &DeviceConfig) -> IVCurve {
    IVCurve {
        points: crate::par::map_grid_serial(&cfg.bias_sweep.grid(), |v| current(v, cfg)),
        config_echo: cfg.clone(),
    }
}
