//! Radiative lifetimes and their blackbody-radiation reduction.
//!
//! Spontaneous rates are Einstein A coefficients A = ω³d²/(3πε0ħc³) built
//! from the radial engine and fine-structure angular weights, summed over all
//! lower dipole-coupled levels. Thermal photons add stimulated rates
//! A·n̄(ω, T) with n̄ = 1/(e^{ħω/kT} − 1) for coupled levels above and below
//! the state within a configurable window of principal quantum numbers.

use crate::angular::line_strength_factor;
use crate::error::{Result, RydError};
use crate::radial::RadialEngine;
use crate::species::Half;
use crate::state::RydbergState;
use crate::units::{ATOMIC_DIPOLE, BOLTZMANN, EPSILON_0, HBAR, SPEED_OF_LIGHT};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub struct LifetimeOptions {
    /// Half-width in n of the window of coupled levels entering the
    /// stimulated (blackbody) sum.
    pub bbr_window: u32,
    /// Re-run the stimulated sum with a widened window and flag the result
    /// if the total rate moves by more than 1%.
    pub check_truncation: bool,
    /// How many channels to report.
    pub max_channels: usize,
    /// Channels below this effective quantum number are dropped from the
    /// sums: such deeply core-penetrating orbits are outside the validity of
    /// the single-channel model, and their computed dipole elements are not
    /// trustworthy in either direction.
    pub min_channel_neff: f64,
}

impl Default for LifetimeOptions {
    fn default() -> Self {
        Self {
            bbr_window: 15,
            check_truncation: true,
            max_channels: 8,
            min_channel_neff: 2.0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayChannel {
    pub to: String,
    pub rate_hz: f64,
    pub stimulated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LifetimeResult {
    pub state: String,
    pub temperature_k: f64,
    pub radiative_lifetime_s: f64,
    pub effective_lifetime_s: f64,
    pub radiative_rate_hz: f64,
    pub bbr_rate_hz: f64,
    pub dominant_decay_channels: Vec<DecayChannel>,
    /// Set when widening the stimulated window moved the total rate by > 1%.
    pub truncation_warning: bool,
}

/// Mean thermal photon occupation at angular frequency ω.
pub fn bbr_occupation(omega_rad_s: f64, temperature_k: f64) -> f64 {
    if temperature_k <= 0.0 || omega_rad_s <= 0.0 {
        return 0.0;
    }
    let x = HBAR * omega_rad_s / (BOLTZMANN * temperature_k);
    if x > 700.0 {
        return 0.0;
    }
    1.0 / x.exp_m1()
}

/// Einstein A coefficient for a transition with the given radial element
/// (a.u.) and per-sublevel angular weight.
fn einstein_a(omega_rad_s: f64, radial_au: f64, angular_weight: f64) -> f64 {
    let d2 = (radial_au * ATOMIC_DIPOLE).powi(2) * angular_weight;
    omega_rad_s.powi(3) * d2 / (3.0 * PI * EPSILON_0 * HBAR * SPEED_OF_LIGHT.powi(3))
}

struct RateSum {
    spontaneous: f64,
    stimulated: f64,
    channels: Vec<DecayChannel>,
}

fn sum_rates(
    engine: &RadialEngine,
    state: &RydbergState,
    temperature_k: f64,
    window: u32,
    min_channel_neff: f64,
) -> Result<RateSum> {
    let species = engine.species().clone();
    let e_state = state.energy_hz()?;
    let mut spontaneous = 0.0;
    let mut stimulated = 0.0;
    let mut channels = Vec::new();

    let partner_ls: Vec<u32> = match state.l {
        0 => vec![1],
        l => vec![l - 1, l + 1],
    };
    for l2 in partner_ls {
        for j2t in [2 * l2 as i32 - 1, 2 * l2 as i32 + 1] {
            if j2t <= 0 || (j2t - state.j.twice()).abs() > 2 {
                continue;
            }
            let j2 = Half(j2t);
            let weight = line_strength_factor(state.l, state.j, l2, j2);
            if weight == 0.0 {
                continue;
            }
            let n_lo = species.min_n(l2);
            let n_hi = (state.n + window).max(state.n + 2);
            for n2 in n_lo..=n_hi {
                if n2 <= l2 {
                    continue;
                }
                let other = RydbergState::stretched(species.clone(), n2, l2, j2)?;
                // hydrogenic channels (zero defect) are exact at any n
                if species.defect(l2, j2)? > 1e-6 && other.effective_n()? < min_channel_neff {
                    continue;
                }
                let e_other = other.energy_hz()?;
                let lower = e_other < e_state;
                let in_window = (n2 as i64 - state.n as i64).unsigned_abs() as u32 <= window;
                if !lower && !in_window {
                    continue;
                }
                let omega = 2.0 * PI * (e_state - e_other).abs();
                if omega < 1.0 {
                    continue; // degenerate partner; the ω³ factor kills the rate
                }
                let radial = engine.radial_matrix_element(state, &other)?;
                let a = einstein_a(omega, radial, weight);
                let nbar = bbr_occupation(omega, temperature_k);
                if lower {
                    spontaneous += a;
                    stimulated += a * nbar;
                    channels.push(DecayChannel {
                        to: other.label(),
                        rate_hz: a * (1.0 + nbar),
                        stimulated: false,
                    });
                } else {
                    let rate = a * nbar;
                    stimulated += rate;
                    if rate > 0.0 {
                        channels.push(DecayChannel {
                            to: other.label(),
                            rate_hz: rate,
                            stimulated: true,
                        });
                    }
                }
            }
        }
    }
    Ok(RateSum {
        spontaneous,
        stimulated,
        channels,
    })
}

pub fn lifetime_with_options(
    engine: &RadialEngine,
    state: &RydbergState,
    temperature_k: f64,
    options: LifetimeOptions,
) -> Result<LifetimeResult> {
    if temperature_k < 0.0 {
        return Err(RydError::Domain("temperature must be >= 0".into()));
    }
    let base = sum_rates(
        engine,
        state,
        temperature_k,
        options.bbr_window,
        options.min_channel_neff,
    )?;
    if base.spontaneous <= 0.0 {
        return Err(RydError::Numerical(format!(
            "no decay channels found for {state}"
        )));
    }
    let total = base.spontaneous + base.stimulated;

    let mut truncation_warning = false;
    if options.check_truncation && temperature_k > 0.0 {
        let widened = sum_rates(
            engine,
            state,
            temperature_k,
            options.bbr_window + 2,
            options.min_channel_neff,
        )?;
        let widened_total = widened.spontaneous + widened.stimulated;
        if ((widened_total - total) / total).abs() > 0.01 {
            truncation_warning = true;
        }
    }

    let mut channels = base.channels;
    channels.sort_by(|a, b| b.rate_hz.total_cmp(&a.rate_hz));
    channels.truncate(options.max_channels);

    Ok(LifetimeResult {
        state: format!("{state}"),
        temperature_k,
        radiative_lifetime_s: 1.0 / base.spontaneous,
        effective_lifetime_s: 1.0 / total,
        radiative_rate_hz: base.spontaneous,
        bbr_rate_hz: base.stimulated,
        dominant_decay_channels: channels,
        truncation_warning,
    })
}

/// Lifetime with the default summation window.
pub fn lifetime(
    engine: &RadialEngine,
    state: &RydbergState,
    temperature_k: f64,
) -> Result<LifetimeResult> {
    lifetime_with_options(engine, state, temperature_k, LifetimeOptions::default())
}
