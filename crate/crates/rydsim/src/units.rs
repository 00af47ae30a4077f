//! Physical constants (SI unless noted) and unit conversions.
//!
//! Values follow CODATA 2018. Derived constants are computed from the
//! primary ones so that exact relations (h = 2πħ, e·a0) hold to the last
//! floating-point digit.

use std::f64::consts::PI;

/// Bohr radius a0 (m)
pub const BOHR_RADIUS: f64 = 5.29177210903e-11;

/// Elementary charge e (C)
pub const E_CHARGE: f64 = 1.602176634e-19;

/// Planck constant h (J·s)
pub const PLANCK: f64 = 6.62607015e-34;

/// Reduced Planck constant ħ = h/2π (J·s)
pub const HBAR: f64 = PLANCK / (2.0 * PI);

/// Vacuum permittivity ε0 (F/m)
pub const EPSILON_0: f64 = 8.8541878128e-12;

/// Speed of light c (m/s)
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Boltzmann constant kB (J/K)
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Rydberg frequency R∞·c (Hz)
pub const RYDBERG_FREQUENCY: f64 = 3.2898419602508e15;

/// Bohr magneton expressed as a Zeeman rate (MHz/Gauss)
pub const BOHR_MAGNETON_MHZ_PER_GAUSS: f64 = 1.3996244936;

/// Atomic dipole unit e·a0 (C·m)
pub const ATOMIC_DIPOLE: f64 = E_CHARGE * BOHR_RADIUS;

/// Atomic unit of electric field (V/m)
pub const ATOMIC_FIELD: f64 = 5.14220674763e11;

/// Atomic unit of energy, the Hartree (J)
pub const HARTREE: f64 = 2.0 * PLANCK * RYDBERG_FREQUENCY;

/// Atomic mass unit (kg)
pub const AMU: f64 = 1.66053906660e-27;

/// Grouped constants for callers that want one value object.
#[derive(Debug, Clone, Copy)]
pub struct PhysicalConstants {
    pub bohr_radius: f64,
    pub elementary_charge: f64,
    pub reduced_planck: f64,
    pub planck: f64,
    pub vacuum_permittivity: f64,
    pub speed_of_light: f64,
    pub rydberg_frequency: f64,
    pub bohr_magneton_mhz_per_gauss: f64,
    pub atomic_dipole_unit: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            bohr_radius: BOHR_RADIUS,
            elementary_charge: E_CHARGE,
            reduced_planck: HBAR,
            planck: PLANCK,
            vacuum_permittivity: EPSILON_0,
            speed_of_light: SPEED_OF_LIGHT,
            rydberg_frequency: RYDBERG_FREQUENCY,
            bohr_magneton_mhz_per_gauss: BOHR_MAGNETON_MHZ_PER_GAUSS,
            atomic_dipole_unit: ATOMIC_DIPOLE,
        }
    }
}

/// Convert a dipole in atomic units (e·a0) to C·m.
pub fn dipole_au_to_si(d_au: f64) -> f64 {
    d_au * ATOMIC_DIPOLE
}

/// Convert an energy in Hartree to a frequency in Hz.
pub fn hartree_to_hz(e_au: f64) -> f64 {
    e_au * HARTREE / PLANCK
}

/// Convert an electric field in V/cm to atomic units.
pub fn field_v_per_cm_to_au(f: f64) -> f64 {
    f * 100.0 / ATOMIC_FIELD
}
