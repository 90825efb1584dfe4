//! Physical constants (SI 2019 exact values) and unit conversions.
//!
//! The numeric core works in meV and nm; these constants are only touched
//! when resolving a configuration or converting to SI output units.

/// Fundamental constants in SI units.
///
/// `h_planck`, `e_charge`, `k_boltzmann` and `c_light` are the exact defined
/// values of the 2019 SI; `hbar` is derived as `h/2π` at compile time so the
/// two Planck constants stay consistent to the last bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J·s)
    pub hbar: f64,
    /// Elementary charge (C)
    pub e_charge: f64,
    /// Boltzmann constant (J/K)
    pub k_boltzmann: f64,
    /// Speed of light in vacuum (m/s)
    pub c_light: f64,
    /// Planck constant (J·s)
    pub h_planck: f64,
}

/// Planck constant (J·s), exact.
pub const H_PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant (J·s), `h/2π`.
pub const HBAR: f64 = H_PLANCK / (2.0 * std::f64::consts::PI);
/// Elementary charge (C), exact.
pub const E_CHARGE: f64 = 1.602_176_634e-19;
/// Boltzmann constant (J/K), exact.
pub const K_BOLTZMANN: f64 = 1.380_649e-23;
/// Speed of light (m/s), exact.
pub const C_LIGHT: f64 = 299_792_458.0;

impl PhysicalConstants {
    /// The SI constant set used everywhere in this crate.
    pub const SI: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        e_charge: E_CHARGE,
        k_boltzmann: K_BOLTZMANN,
        c_light: C_LIGHT,
        h_planck: H_PLANCK,
    };
}

/// `ħ·v_F` in meV·nm for a Fermi velocity in m/s.
///
/// This is the single scale factor connecting energies (meV) to
/// wavenumbers (1/nm) in the linear dispersion.
pub fn hbar_vf_mev_nm(v_f: f64) -> f64 {
    // J·m → eV·m is /e; eV·m → meV·nm is ×1e12.
    HBAR * v_f / E_CHARGE * 1e12
}

/// `k_B·T` in meV for a temperature in kelvin.
pub fn thermal_energy_mev(temperature_k: f64) -> f64 {
    K_BOLTZMANN * temperature_k / E_CHARGE * 1e3
}
