//! Single-atom microwave lineshapes for square pulses in the rotating-wave
//! approximation, drive-parameter bookkeeping, and the photon-density
//! estimate of the driving field.
//!
//! One-photon transfer:  ρ = Ω1²/(δ² + Ω1²) · sin²(τ/2 · √(δ² + Ω1²)).
//! Two-photon transfer:  ρ = Ω2²/((δ−δ0)² + Ω2²) · sin²(τ · √((δ−δ0)² + Ω2²)),
//! with the detuning δ measured at the radiation source, the effective Rabi
//! frequency Ω2 = d1·d2·E²/(4ħ²Δ) and the power shift
//! δ0 = (d1² − d2²)·E²/(8ħ²Δ).

use crate::error::{Result, RydError};
use crate::state::RydbergState;
use crate::units::{EPSILON_0, HBAR};
use serde::Serialize;

/// One-photon upper-state population after a square pulse of length τ.
/// Arguments are angular frequencies (rad/s).
pub fn one_photon_population(omega1: f64, delta: f64, tau: f64) -> f64 {
    if omega1 == 0.0 {
        return 0.0;
    }
    let w2 = delta * delta + omega1 * omega1;
    (omega1 * omega1 / w2) * (0.5 * tau * w2.sqrt()).sin().powi(2)
}

/// Two-photon upper-state population after a square pulse of length τ; the
/// line center sits at the power-shifted detuning δ = δ0.
pub fn two_photon_population(omega2: f64, delta: f64, delta0: f64, tau: f64) -> f64 {
    if omega2 == 0.0 {
        return 0.0;
    }
    let d = delta - delta0;
    let w2 = d * d + omega2 * omega2;
    (omega2 * omega2 / w2) * (tau * w2.sqrt()).sin().powi(2)
}

/// Drive parameters tied to one field amplitude. All frequencies in rad/s,
/// dipoles in C·m, field in V/m.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DriveParameters {
    pub omega1: f64,
    pub omega2: f64,
    pub power_shift: f64,
    pub intermediate_detuning: f64,
    pub tau_s: f64,
    pub field_v_per_m: f64,
    pub d1_cm: f64,
    pub d2_cm: f64,
}

/// Fill Ω1, Ω2 and the power shift from the field amplitude and the two
/// dipole matrix elements of the ladder. Δ is the detuning of the virtual
/// intermediate level from the real one (rad/s); it must be nonzero for the
/// two-photon quantities.
pub fn drive_from_field(
    field_v_per_m: f64,
    d1_cm: f64,
    d2_cm: f64,
    intermediate_detuning: f64,
    tau_s: f64,
) -> Result<DriveParameters> {
    if intermediate_detuning == 0.0 {
        return Err(RydError::Domain(
            "two-photon drive needs a nonzero intermediate detuning".into(),
        ));
    }
    let omega1 = d1_cm * field_v_per_m / HBAR;
    let e2 = field_v_per_m * field_v_per_m;
    let omega2 = d1_cm * d2_cm * e2 / (4.0 * HBAR * HBAR * intermediate_detuning);
    let power_shift =
        (d1_cm * d1_cm - d2_cm * d2_cm) * e2 / (8.0 * HBAR * HBAR * intermediate_detuning);
    Ok(DriveParameters {
        omega1,
        omega2,
        power_shift,
        intermediate_detuning,
        tau_s,
        field_v_per_m,
        d1_cm,
        d2_cm,
    })
}

/// Field amplitude that gives a one-photon pulse area Ω1·τ/2 = `area`
/// (so π/2 inverts the population).
pub fn field_for_one_photon_area(area_rad: f64, tau_s: f64, d1_cm: f64) -> Result<f64> {
    if tau_s <= 0.0 || d1_cm == 0.0 {
        return Err(RydError::Domain("need τ > 0 and d1 ≠ 0".into()));
    }
    let omega1 = 2.0 * area_rad / tau_s;
    Ok(omega1 * HBAR / d1_cm)
}

/// Field amplitude that gives a two-photon pulse area Ω2·τ = `area`
/// (so π/2 inverts the population).
pub fn field_for_two_photon_area(
    area_rad: f64,
    tau_s: f64,
    d1_cm: f64,
    d2_cm: f64,
    intermediate_detuning: f64,
) -> Result<f64> {
    if tau_s <= 0.0 || d1_cm == 0.0 || d2_cm == 0.0 {
        return Err(RydError::Domain("need τ > 0 and nonzero dipoles".into()));
    }
    if intermediate_detuning == 0.0 {
        return Err(RydError::Domain(
            "two-photon drive needs a nonzero intermediate detuning".into(),
        ));
    }
    let omega2 = area_rad / tau_s;
    let e2 = 4.0 * HBAR * HBAR * intermediate_detuning * omega2 / (d1_cm * d2_cm);
    if e2 < 0.0 {
        return Err(RydError::Domain(
            "requested area has the wrong sign for this detuning".into(),
        ));
    }
    Ok(e2.sqrt())
}

/// Detuning of the virtual two-photon intermediate level (at the photon
/// energy midpoint of lower → upper) from the real intermediate state, as an
/// angular frequency. Positive when the real level lies above the midpoint.
pub fn intermediate_detuning_rad_s(
    lower: &RydbergState,
    real_intermediate: &RydbergState,
    upper: &RydbergState,
) -> Result<f64> {
    let midpoint = 0.5 * (lower.energy_hz()? + upper.energy_hz()?);
    Ok(2.0 * std::f64::consts::PI * (real_intermediate.energy_hz()? - midpoint))
}

/// The square-pulse transfer formulas neglect spontaneous decay; warn when
/// the interaction time is no longer small against the shortest effective
/// lifetime involved.
pub fn interaction_time_warning(
    engine: &crate::radial::RadialEngine,
    states: &[&RydbergState],
    tau_s: f64,
    temperature_k: f64,
) -> Result<Option<String>> {
    let mut min_tau = f64::INFINITY;
    let mut which = String::new();
    for st in states {
        let res = crate::lifetime::lifetime(engine, st, temperature_k)?;
        if res.effective_lifetime_s < min_tau {
            min_tau = res.effective_lifetime_s;
            which = res.state;
        }
    }
    if tau_s > 0.1 * min_tau {
        return Ok(Some(format!(
            "interaction time {:.2} us is not small against the {:.2} us effective lifetime of {which}; decay-free lineshapes lose validity",
            tau_s * 1e6,
            min_tau * 1e6
        )));
    }
    Ok(None)
}

/// Photon volume density dN/dV = ε0E²/(2ħω) in m⁻³.
pub fn photon_density_per_m3(field_v_per_m: f64, omega_rad_s: f64) -> Result<f64> {
    if field_v_per_m <= 0.0 || omega_rad_s <= 0.0 {
        return Err(RydError::Domain(
            "field and frequency must be positive".into(),
        ));
    }
    Ok(EPSILON_0 * field_v_per_m * field_v_per_m / (2.0 * HBAR * omega_rad_s))
}

pub fn photon_density_per_cm3(field_v_per_m: f64, omega_rad_s: f64) -> Result<f64> {
    Ok(photon_density_per_m3(field_v_per_m, omega_rad_s)? / 1e6)
}
