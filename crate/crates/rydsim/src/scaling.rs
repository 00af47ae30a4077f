//! Closed-form scaling laws: orbit radius, collision-limited principal
//! quantum number, dipole estimate, field-ionization threshold, and Zeeman
//! splitting rates.

use crate::error::{Result, RydError};
use crate::species::Half;
use crate::state::RydbergState;
use crate::units::{BOHR_MAGNETON_MHZ_PER_GAUSS, BOHR_RADIUS};

/// Mean electron orbit radius r = ½(3n² − L(L+1)) in units of a0.
pub fn orbit_radius_a0(n: u32, l: u32) -> Result<f64> {
    if l >= n {
        return Err(RydError::Domain(format!(
            "orbit radius needs L < n, got n={n} L={l}"
        )));
    }
    let n = n as f64;
    let l = l as f64;
    Ok(0.5 * (3.0 * n * n - l * (l + 1.0)))
}

/// Collision-limited maximum principal quantum number for lattice spacing R:
/// n_max = sqrt(R/(15 a0) + L(L+1)/3).
pub fn max_principal_quantum_number(r_m: f64, l: u32) -> Result<f64> {
    if r_m <= 0.0 {
        return Err(RydError::Domain("spacing must be positive".into()));
    }
    let l = l as f64;
    Ok((r_m / (15.0 * BOHR_RADIUS) + l * (l + 1.0) / 3.0).sqrt())
}

/// Collision-limited n for circular states (L = n − 1), solved by fixed-point
/// iteration of the self-consistency n = n_max(R, n − 1).
pub fn max_circular_quantum_number(r_m: f64) -> Result<f64> {
    if r_m <= 0.0 {
        return Err(RydError::Domain("spacing must be positive".into()));
    }
    let c = r_m / (15.0 * BOHR_RADIUS);
    let mut n = c.sqrt();
    for _ in 0..200 {
        let next = (c + n * (n - 1.0) / 3.0).sqrt();
        if (next - n).abs() < 1e-6 {
            return Ok(next);
        }
        n = next;
    }
    Err(RydError::Numerical(
        "circular n_max fixed point did not converge".into(),
    ))
}

/// Rough dipole estimate d ≈ n² for transitions between neighboring Rydberg
/// states, in atomic units (e·a0).
pub fn estimate_dipole_au(n: u32) -> f64 {
    let n = n as f64;
    n * n
}

/// Critical field for selective field ionization, E_c = 3.2·10⁸ n_eff⁻⁴ V/cm.
pub fn sfi_critical_field_v_per_cm(state: &RydbergState) -> Result<f64> {
    let neff = state.effective_n()?;
    Ok(3.2e8 * neff.powi(-4))
}

/// Same threshold from a bare effective quantum number.
pub fn sfi_critical_field_for_neff(neff: f64) -> f64 {
    3.2e8 * neff.powi(-4)
}

/// Landé g-factor for S = 1/2 fine structure.
pub fn lande_g(l: u32, j: Half) -> f64 {
    let j = j.value();
    let l = l as f64;
    let s = 0.5;
    1.0 + (j * (j + 1.0) + s * (s + 1.0) - l * (l + 1.0)) / (2.0 * j * (j + 1.0))
}

/// Zeeman splitting rate between adjacent mJ sublevels, g_J·μB, in MHz/Gauss.
pub fn zeeman_splitting_rate_mhz_per_gauss(state: &RydbergState) -> f64 {
    lande_g(state.l, state.j) * BOHR_MAGNETON_MHZ_PER_GAUSS
}
