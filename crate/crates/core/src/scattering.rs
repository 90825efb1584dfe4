//! Two-component Dirac scattering through a biased rectangular barrier.
//!
//! The device has three regions along x with potential energies
//! `U1 = 0`, `U2 = V0 - eV/2` (the linear bias drop across the barrier is
//! approximated by a step of its average value) and `U3 = -eV`. In each
//! region the spinor basis columns are
//!
//! ```text
//! u+(x) = (1,  s·e^{+iφ})ᵀ e^{+ik x}      u-(x) = (1, -s·e^{-iφ})ᵀ e^{-ik x}
//! ```
//!
//! with `k` the non-negative longitudinal wavevector, `φ = atan(k_y/k)` in
//! (-π/2, π/2) and `s = sgn(E - U)` the band sign. Direction of propagation
//! lives entirely in the spinor structure: the x-flux of `u±` is `±s·cos φ`,
//! so in a hole-like region (`s = -1`) the right-moving state is `u-`. The
//! solver always injects and extracts the right-moving states, which for
//! electron-like outer regions reproduces the textbook transmission
//! `T = s3·cos φ3·|t|² / (s1·cos φ1)` exactly and keeps `T ∈ [0, 1]` for
//! mixed outer band signs (such solutions carry `sign_mismatch = true`).
//!
//! When the barrier discriminant `(E-U2)² - (ħv_F k_y)²` is negative the
//! wavefunction cannot penetrate the barrier at all (no evanescent
//! continuation exists for gapless Dirac carriers) and the solver reports
//! total reflection: regime `BarrierGap`, `T = 0`.
//!
//! All operations are pure functions of their arguments and safe for
//! unlimited concurrent use.

use crate::config::{derive, DerivedQuantities, DeviceConfig};
use num_complex::Complex64;
use thiserror::Error;

/// Degeneracy guard (meV): energies closer than this to a region's Dirac
/// point are rejected; quadrature callers split around these points.
pub const DEGENERACY_GUARD_MEV: f64 = 1e-9;
/// Flux-normalization guard on |cos φ3|.
pub const GRAZING_GUARD: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScatterError {
    #[error("energy degenerate with Dirac point of region {region}: |E - U| = {gap:.3e} meV")]
    DegenerateEnergy { region: u8, gap: f64 },
    #[error("no propagating mode in the incident region (E = {e} meV, ħv_F·k_y = {transverse} meV)")]
    NoInputMode { e: f64, transverse: f64 },
    #[error("output flux normalization singular: |cos φ3| = {cos_phi3:.3e}")]
    GrazingOutput { cos_phi3: f64 },
    #[error("singular 4x4 continuity system: pivot magnitude {pivot:.3e}")]
    SingularSystem { pivot: f64 },
}

/// Per-region kinematics at fixed total energy and transverse momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionState {
    /// Region index (1, 2 or 3).
    pub index: u8,
    /// Potential energy (meV).
    pub u: f64,
    /// Band sign `sgn(E - U)`: +1 electron-like, -1 hole-like.
    pub s: f64,
    /// Longitudinal wavevector (1/nm); only meaningful when `propagating`.
    pub k_x: f64,
    /// Propagation angle `atan(k_y/k_x)` ∈ (-π/2, π/2); only meaningful
    /// when `propagating`.
    pub phi: f64,
    /// Whether `(E - U)²/(ħv_F)² - k_y² > 0`.
    pub propagating: bool,
}

/// Scattering regime classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Regime {
    /// All regions propagating; amplitudes solved.
    Propagating,
    /// Barrier region cannot propagate: total reflection, `T = 0`.
    BarrierGap,
    /// Exit region cannot propagate: `T = 0`.
    NoOutputMode,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::Propagating => "Propagating",
            Regime::BarrierGap => "BarrierGap",
            Regime::NoOutputMode => "NoOutputMode",
        }
    }
}

/// Solved amplitudes and probabilities for one (E, k_y, V) point.
///
/// The complex amplitudes are only meaningful in the `Propagating` regime;
/// gap and no-output solutions report `T = 0`, `R = 1` with zeroed
/// amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringSolution {
    /// Reflected amplitude in region 1.
    pub r: Complex64,
    /// Right-moving barrier amplitude.
    pub a: Complex64,
    /// Left-moving barrier amplitude.
    pub b: Complex64,
    /// Transmitted amplitude in region 3.
    pub t: Complex64,
    /// Transmission probability ∈ [0, 1].
    pub transmission: f64,
    /// Reflection probability ∈ [0, 1].
    pub reflection: f64,
    pub regime: Regime,
    /// Band signs (s1, s2, s3).
    pub band_signs: [f64; 3],
    /// True when the outer regions have opposite band signs, where the
    /// literal `s3 cos φ3 |t|²/(s1 cos φ1)` expression would go negative.
    pub sign_mismatch: bool,
}

/// Region potentials `U1 = 0`, `U2 = V0 - eV/2`, `U3 = -eV` for a bias in
/// mV (numerically equal to the drop in meV).
pub fn region_potentials(v0_mev: f64, bias_mv: f64) -> [f64; 3] {
    [0.0, v0_mev - 0.5 * bias_mv, -bias_mv]
}

/// Kinematics of one region: band sign, longitudinal wavevector and
/// propagation angle at energy `e` (meV), transverse wavenumber `k_y`
/// (1/nm) and potential `u` (meV).
pub fn region_kinematics(
    index: u8,
    e: f64,
    k_y: f64,
    u: f64,
    dq: &DerivedQuantities,
) -> Result<RegionState, ScatterError> {
    let gap = (e - u).abs();
    if gap <= DEGENERACY_GUARD_MEV {
        return Err(ScatterError::DegenerateEnergy { region: index, gap });
    }
    let s = (e - u).signum();
    let disc = (e - u).powi(2) / dq.hbar_vf.powi(2) - k_y * k_y;
    if disc > 0.0 {
        let k_x = disc.sqrt();
        Ok(RegionState {
            index,
            u,
            s,
            k_x,
            phi: (k_y / k_x).atan(),
            propagating: true,
        })
    } else {
        Ok(RegionState {
            index,
            u,
            s,
            k_x: 0.0,
            phi: 0.0,
            propagating: false,
        })
    }
}

/// Basis-column matrix of a region evaluated at position `x` (nm):
/// columns are the `u+` and `u-` spinors.
fn basis_matrix(st: &RegionState, x: f64) -> [[Complex64; 2]; 2] {
    let zp = Complex64::new(0.0, st.k_x * x).exp();
    let zm = zp.conj(); // e^{-ik x}, |zp| = 1
    let ep = Complex64::new(0.0, st.phi).exp();
    [
        [zp, zm],
        [st.s * ep * zp, -st.s * ep.conj() * zm],
    ]
}

fn mat_inv(m: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ]
}

fn mat_mul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn kinematics_all(
    e: f64,
    k_y: f64,
    bias_mv: f64,
    cfg: &DeviceConfig,
) -> Result<(RegionState, RegionState, RegionState, DerivedQuantities), ScatterError> {
    let dq = derive(cfg);
    let u = region_potentials(cfg.v0_mev, bias_mv);
    let r1 = region_kinematics(1, e, k_y, u[0], &dq)?;
    let r2 = region_kinematics(2, e, k_y, u[1], &dq)?;
    let r3 = region_kinematics(3, e, k_y, u[2], &dq)?;
    if !r1.propagating {
        return Err(ScatterError::NoInputMode {
            e,
            transverse: dq.hbar_vf * k_y.abs(),
        });
    }
    Ok((r1, r2, r3, dq))
}

fn blocked_solution(regime: Regime, signs: [f64; 3]) -> ScatteringSolution {
    let zero = Complex64::new(0.0, 0.0);
    ScatteringSolution {
        r: zero,
        a: zero,
        b: zero,
        t: zero,
        transmission: 0.0,
        reflection: 1.0,
        regime,
        band_signs: signs,
        sign_mismatch: signs[0] != signs[2],
    }
}

/// Solve the three-region scattering problem by cascading the 2×2
/// interface matrices (one inversion per interface).
pub fn solve_barrier(
    e: f64,
    k_y: f64,
    bias_mv: f64,
    cfg: &DeviceConfig,
) -> Result<ScatteringSolution, ScatterError> {
    let (r1, r2, r3, _) = kinematics_all(e, k_y, bias_mv, cfg)?;
    let signs = [r1.s, r2.s, r3.s];
    if !r2.propagating {
        return Ok(blocked_solution(Regime::BarrierGap, signs));
    }
    if !r3.propagating {
        return Ok(blocked_solution(Regime::NoOutputMode, signs));
    }
    if r3.phi.cos().abs() < GRAZING_GUARD {
        return Err(ScatterError::GrazingOutput {
            cos_phi3: r3.phi.cos(),
        });
    }

    let d = cfg.d_nm;
    let m1 = basis_matrix(&r1, 0.0);
    let m2_at_0 = basis_matrix(&r2, 0.0);
    let m2_at_d = basis_matrix(&r2, d);
    let m3 = basis_matrix(&r3, d);
    // W maps region-1 basis coefficients to region-3 basis coefficients
    let w = mat_mul(&mat_inv(&m3), &mat_mul(&m2_at_d, &mat_mul(&mat_inv(&m2_at_0), &m1)));

    // The right-moving state is u+ in an electron-like region and u- in a
    // hole-like one; inject unit right-moving flux in region 1, demand a
    // purely right-moving (outgoing) wave in region 3.
    let (r, t) = match (r1.s > 0.0, r3.s > 0.0) {
        (true, true) => {
            let r = -w[1][0] / w[1][1];
            (r, w[0][0] + w[0][1] * r)
        }
        (true, false) => {
            let r = -w[0][0] / w[0][1];
            (r, w[1][0] + w[1][1] * r)
        }
        (false, true) => {
            let r = -w[1][1] / w[1][0];
            (r, w[0][0] * r + w[0][1])
        }
        (false, false) => {
            let r = -w[0][1] / w[0][0];
            (r, w[1][0] * r + w[1][1])
        }
    };
    // Barrier coefficients from the region-1/2 interface.
    let c1 = if r1.s > 0.0 { [Complex64::ONE, r] } else { [r, Complex64::ONE] };
    let i2 = mat_inv(&m2_at_0);
    let a = i2[0][0] * (m1[0][0] * c1[0] + m1[0][1] * c1[1])
        + i2[0][1] * (m1[1][0] * c1[0] + m1[1][1] * c1[1]);
    let b = i2[1][0] * (m1[0][0] * c1[0] + m1[0][1] * c1[1])
        + i2[1][1] * (m1[1][0] * c1[0] + m1[1][1] * c1[1]);

    let transmission = (r3.phi.cos() / r1.phi.cos()) * t.norm_sqr();
    Ok(ScatteringSolution {
        r,
        a,
        b,
        t,
        transmission,
        reflection: r.norm_sqr(),
        regime: Regime::Propagating,
        band_signs: signs,
        sign_mismatch: signs[0] != signs[2],
    })
}

/// Independent verification path: assemble the four continuity equations
/// (both spinor components at x = 0 and x = D) as a dense 4×4 complex
/// linear system in (r, a, b, t) and solve by Gaussian elimination with
/// partial pivoting. Identical contract to [`solve_barrier`].
pub fn solve_barrier_oracle(
    e: f64,
    k_y: f64,
    bias_mv: f64,
    cfg: &DeviceConfig,
) -> Result<ScatteringSolution, ScatterError> {
    let (r1, r2, r3, _) = kinematics_all(e, k_y, bias_mv, cfg)?;
    let signs = [r1.s, r2.s, r3.s];
    if !r2.propagating {
        return Ok(blocked_solution(Regime::BarrierGap, signs));
    }
    if !r3.propagating {
        return Ok(blocked_solution(Regime::NoOutputMode, signs));
    }
    if r3.phi.cos().abs() < GRAZING_GUARD {
        return Err(ScatterError::GrazingOutput {
            cos_phi3: r3.phi.cos(),
        });
    }

    let d = cfg.d_nm;
    let m1 = basis_matrix(&r1, 0.0);
    let m2_at_0 = basis_matrix(&r2, 0.0);
    let m2_at_d = basis_matrix(&r2, d);
    let m3 = basis_matrix(&r3, d);
    // Column selectors for the right-moving states of the outer regions.
    let (inc, refl) = if r1.s > 0.0 { (0, 1) } else { (1, 0) };
    let out = if r3.s > 0.0 { 0 } else { 1 };

    let zero = Complex64::new(0.0, 0.0);
    // Unknown order: (r, a, b, t).
    let mut sys = [[zero; 5]; 4];
    for comp in 0..2 {
        // x = 0: inc + r·refl = a·u+ + b·u-
        sys[comp][0] = -m1[comp][refl];
        sys[comp][1] = m2_at_0[comp][0];
        sys[comp][2] = m2_at_0[comp][1];
        sys[comp][4] = m1[comp][inc];
        // x = D: a·u+ + b·u- = t·out
        sys[2 + comp][1] = m2_at_d[comp][0];
        sys[2 + comp][2] = m2_at_d[comp][1];
        sys[2 + comp][3] = -m3[comp][out];
    }
    let x = gauss_solve_4(&mut sys)?;
    let (r, a, b, t) = (x[0], x[1], x[2], x[3]);

    let transmission = (r3.phi.cos() / r1.phi.cos()) * t.norm_sqr();
    Ok(ScatteringSolution {
        r,
        a,
        b,
        t,
        transmission,
        reflection: r.norm_sqr(),
        regime: Regime::Propagating,
        band_signs: signs,
        sign_mismatch: signs[0] != signs[2],
    })
}

/// Gaussian elimination with partial pivoting on a 4×5 augmented complex
/// system; errors if a pivot magnitude falls below 1e-13.
#[allow(clippy::needless_range_loop)]
fn gauss_solve_4(sys: &mut [[Complex64; 5]; 4]) -> Result<[Complex64; 4], ScatterError> {
    for col in 0..4 {
        let pivot_row = (col..4)
            .max_by(|&i, &j| sys[i][col].norm().total_cmp(&sys[j][col].norm()))
            .unwrap();
        let pivot = sys[pivot_row][col].norm();
        if pivot < 1e-13 {
            return Err(ScatterError::SingularSystem { pivot });
        }
        sys.swap(col, pivot_row);
        for row in (col + 1)..4 {
            let factor = sys[row][col] / sys[col][col];
            for k in col..5 {
                let sub = factor * sys[col][k];
                sys[row][k] -= sub;
            }
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 4];
    for row in (0..4).rev() {
        let mut acc = sys[row][4];
        for k in (row + 1)..4 {
            acc -= sys[row][k] * x[k];
        }
        x[row] = acc / sys[row][row];
    }
    Ok(x)
}

/// Closed-form unbiased transmission, obtained by eliminating the barrier
/// amplitudes from the V = 0 matching equations:
///
/// ```text
/// T = cos²φ1 cos²φ2 / [cos²φ1 cos²φ2 cos²(k2 D) + (σ - sin φ1 sin φ2)² sin²(k2 D)]
/// ```
///
/// with `σ = s1·s2`. Inputs inside the barrier gap return 0, matching the
/// numeric solver's total-reflection classification.
pub fn closed_form_unbiased(
    e: f64,
    k_y: f64,
    v0_mev: f64,
    d_nm: f64,
    dq: &DerivedQuantities,
) -> Result<f64, ScatterError> {
    let r1 = region_kinematics(1, e, k_y, 0.0, dq)?;
    let r2 = region_kinematics(2, e, k_y, v0_mev, dq)?;
    if !r1.propagating {
        return Err(ScatterError::NoInputMode {
            e,
            transverse: dq.hbar_vf * k_y.abs(),
        });
    }
    if !r2.propagating {
        return Ok(0.0);
    }
    let sigma = r1.s * r2.s;
    let (c1, s1) = (r1.phi.cos(), r1.phi.sin());
    let (c2, s2) = (r2.phi.cos(), r2.phi.sin());
    let (sk, ck) = (r2.k_x * d_nm).sin_cos();
    let num = c1 * c1 * c2 * c2;
    let den = num * ck * ck + (sigma - s1 * s2).powi(2) * sk * sk;
    Ok(num / den)
}
