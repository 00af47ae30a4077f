//! Thermal-beam Monte Carlo for microwave spectra.
//!
//! Each sample draws one atom: a beam-Maxwell speed, a starting position in
//! the excitation region, a Doppler channel, and a multiplicative field
//! fluctuation. The closed-form lineshape is then evaluated with the
//! perturbed drive parameters and averaged.
//!
//! One-photon drive in a standing wave: the atom's Rabi frequency follows
//! |cos(kx)| along its trajectory, so the effective pulse area is the path
//! average of |cos|; the absorbed photon comes from either traveling
//! component, Doppler-shifting the detuning by ±(v/c)·f.
//!
//! Two-photon drive: photon pairs from counter-propagating components are
//! Doppler-free and spatially uniform (the product of the two traveling
//! waves has constant amplitude), while co-propagating pairs are shifted by
//! ±(v/c)·f at the source and are also spatially uniform. The standing-wave
//! node structure therefore does not wash out the two-photon line; only the
//! co-propagating fraction broadens it.

use crate::error::{Result, RydError};
use crate::lineshape::{one_photon_population, two_photon_population, DriveParameters};
use crate::units::SPEED_OF_LIGHT;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TransitionKind {
    OnePhoton,
    TwoPhoton,
}

/// Beam and noise configuration.
#[derive(Debug, Clone, Serialize)]
pub struct BeamConfig {
    pub temperature_k: f64,
    pub mass_kg: f64,
    /// Mean beam speed; `None` derives it from the temperature.
    pub mean_speed_m_s: Option<f64>,
    /// Photon (source) frequency in Hz, used for Doppler shifts and the
    /// standing-wave period.
    pub photon_frequency_hz: f64,
    /// Interaction time (s).
    pub tau_s: f64,
    /// Standing-wave trajectory averaging for the one-photon drive.
    pub standing_wave: bool,
    /// rms of the multiplicative field-amplitude fluctuation.
    pub field_fluctuation_rms: f64,
    /// Length of the laser excitation region along the beam (m).
    pub excitation_length_m: f64,
    /// Fraction of two-photon events driven by the Doppler-free
    /// counter-propagating component.
    pub counter_propagating_fraction: f64,
    /// Extra amplitude calibration factor applied to the drive field.
    pub amplitude_scale: f64,
}

impl BeamConfig {
    /// Sodium-beam settings of the modeled apparatus: 450 K oven, 600 m/s
    /// mean speed, 0.2 mm excitation region, 2.8 μs interaction time.
    pub fn sodium_beam(photon_frequency_hz: f64, kind: TransitionKind) -> Self {
        Self {
            temperature_k: 450.0,
            mass_kg: crate::species::SpeciesData::sodium().mass_kg,
            mean_speed_m_s: Some(600.0),
            photon_frequency_hz,
            tau_s: 2.8e-6,
            standing_wave: true,
            // the leak-interference instability scales inversely with the
            // drive amplitude, so the strong two-photon drive sees less of it
            field_fluctuation_rms: match kind {
                TransitionKind::OnePhoton => 0.10,
                TransitionKind::TwoPhoton => 0.03,
            },
            excitation_length_m: 0.2e-3,
            counter_propagating_fraction: 0.9,
            amplitude_scale: 1.0,
        }
    }

    /// Turn every stochastic ingredient off (used for estimator checks).
    pub fn quiet(mut self) -> Self {
        self.mean_speed_m_s = Some(0.0);
        self.standing_wave = false;
        self.field_fluctuation_rms = 0.0;
        self.counter_propagating_fraction = 1.0;
        self
    }

    /// Beam-Maxwell speed scale α consistent with the configured mean speed,
    /// or from the temperature when unset. The flux-weighted beam
    /// distribution f(v) ∝ v³ exp(−v²/α²) has mean (3√π/4)·α.
    pub fn speed_scale(&self) -> f64 {
        match self.mean_speed_m_s {
            Some(v) => v / (3.0 * PI.sqrt() / 4.0),
            None => (2.0 * crate::units::BOLTZMANN * self.temperature_k / self.mass_kg).sqrt(),
        }
    }

    /// Warn when the configured mean speed disagrees with the temperature by
    /// more than 5%.
    pub fn consistency_warning(&self) -> Option<String> {
        let v_cfg = self.mean_speed_m_s?;
        if v_cfg == 0.0 {
            return None;
        }
        let alpha = (2.0 * crate::units::BOLTZMANN * self.temperature_k / self.mass_kg).sqrt();
        let v_thermal = 3.0 * PI.sqrt() / 4.0 * alpha;
        let rel = ((v_cfg - v_thermal) / v_thermal).abs();
        if rel > 0.05 {
            Some(format!(
                "configured mean speed {v_cfg} m/s differs from the {v_thermal:.0} m/s implied by {} K by {:.0}%",
                self.temperature_k,
                100.0 * rel
            ))
        } else {
            None
        }
    }
}

/// Monte-Carlo averaged spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct BeamSpectrum {
    pub detunings_rad_s: Vec<f64>,
    pub transfer: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub rejected: usize,
    pub kind: TransitionKind,
    pub config: BeamConfig,
}

/// First-order Doppler spread (v/c)·f of a transition at frequency f seen by
/// atoms moving at the mean beam speed.
pub fn doppler_width_hz(mean_speed_m_s: f64, frequency_hz: f64) -> Result<f64> {
    if mean_speed_m_s < 0.0 || frequency_hz <= 0.0 {
        return Err(RydError::Domain(
            "speed and frequency must be positive".into(),
        ));
    }
    Ok(mean_speed_m_s / SPEED_OF_LIGHT * frequency_hz)
}

/// ∫₀ᵘ |cos t| dt, closed form.
fn abs_cos_integral(u: f64) -> f64 {
    let m = (u / PI + 0.5).floor();
    2.0 * m
        + if (m as i64) % 2 == 0 {
            u.sin()
        } else {
            -u.sin()
        }
}

/// Path average of |cos(k x)| over x ∈ [x0, x0 + v τ].
fn standing_wave_area_factor(k: f64, x0: f64, v: f64, tau: f64) -> f64 {
    let a = k * x0;
    let b = k * (x0 + v * tau);
    if (b - a).abs() < 1e-9 {
        return a.cos().abs();
    }
    (abs_cos_integral(b) - abs_cos_integral(a)) / (b - a)
}

struct SampleDraw {
    speed: f64,
    direction: f64,
    x0: f64,
    field_factor: f64,
    compensated: bool,
}

fn draw_sample(rng: &mut ChaCha8Rng, cfg: &BeamConfig) -> (SampleDraw, usize) {
    let alpha = cfg.speed_scale();
    // v²/α² ~ Gamma(2,1) for the v³-weighted beam distribution
    let u: f64 = -(rng.gen_range(f64::MIN_POSITIVE..1.0f64).ln()
        + rng.gen_range(f64::MIN_POSITIVE..1.0f64).ln());
    let speed = alpha * u.sqrt();
    let direction = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let x0 = (rng.gen_range(0.0..1.0f64) - 0.5) * cfg.excitation_length_m;
    let mut rejected = 0;
    let mut field_factor = 0.0;
    for _ in 0..64 {
        let g: f64 = rng.sample(rand_distr::StandardNormal);
        field_factor = 1.0 + cfg.field_fluctuation_rms * g;
        if field_factor > 0.0 && field_factor.is_finite() {
            break;
        }
        rejected += 1;
    }
    if field_factor <= 0.0 {
        field_factor = 1.0;
    }
    let compensated = rng.gen_bool(cfg.counter_propagating_fraction.clamp(0.0, 1.0));
    (
        SampleDraw {
            speed,
            direction,
            x0,
            field_factor,
            compensated,
        },
        rejected,
    )
}

fn sample_transfer(
    draw: &SampleDraw,
    cfg: &BeamConfig,
    kind: TransitionKind,
    drive: &DriveParameters,
    delta: f64,
) -> f64 {
    let k_wave = 2.0 * PI * cfg.photon_frequency_hz / SPEED_OF_LIGHT;
    let doppler = 2.0 * PI * cfg.photon_frequency_hz * draw.speed / SPEED_OF_LIGHT;
    let amp = draw.field_factor * cfg.amplitude_scale;
    match kind {
        TransitionKind::OnePhoton => {
            let area = if cfg.standing_wave {
                standing_wave_area_factor(k_wave, draw.x0, draw.speed, cfg.tau_s)
            } else {
                1.0
            };
            let omega = drive.omega1 * amp * area;
            let delta_eff = delta - draw.direction * doppler;
            one_photon_population(omega, delta_eff, cfg.tau_s)
        }
        TransitionKind::TwoPhoton => {
            let omega = drive.omega2 * amp * amp;
            let shift = drive.power_shift * amp * amp;
            let delta_eff = if draw.compensated {
                delta
            } else {
                delta - draw.direction * doppler
            };
            two_photon_population(omega, delta_eff, shift, cfg.tau_s)
        }
    }
}

/// Average the lineshape over beam samples. Deterministic for a fixed seed:
/// sample i uses an independent substream, and block sums are reduced in
/// index order.
pub fn beam_monte_carlo(
    cfg: &BeamConfig,
    kind: TransitionKind,
    drive: &DriveParameters,
    detunings_rad_s: &[f64],
    samples: usize,
    seed: u64,
) -> Result<BeamSpectrum> {
    if samples < 1_000 {
        return Err(RydError::Config("need at least 1000 samples".into()));
    }
    if detunings_rad_s.is_empty() {
        return Err(RydError::Config("empty detuning grid".into()));
    }
    const BLOCK: usize = 2048;
    let blocks: Vec<usize> = (0..samples.div_ceil(BLOCK)).collect();
    let nd = detunings_rad_s.len();
    let partials: Vec<(Vec<f64>, usize)> = blocks
        .par_iter()
        .map(|&b| {
            let lo = b * BLOCK;
            let hi = ((b + 1) * BLOCK).min(samples);
            let mut acc = vec![0.0f64; nd];
            let mut comp = vec![0.0f64; nd]; // Neumaier compensation
            let mut rejected = 0;
            for i in lo..hi {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64 + 1);
                let (draw, rej) = draw_sample(&mut rng, cfg);
                rejected += rej;
                for (d, &delta) in detunings_rad_s.iter().enumerate() {
                    let value = sample_transfer(&draw, cfg, kind, drive, delta);
                    let t = acc[d] + value;
                    comp[d] += if acc[d].abs() >= value.abs() {
                        (acc[d] - t) + value
                    } else {
                        (value - t) + acc[d]
                    };
                    acc[d] = t;
                }
            }
            for d in 0..nd {
                acc[d] += comp[d];
            }
            (acc, rejected)
        })
        .collect();
    let mut transfer = vec![0.0f64; nd];
    let mut rejected = 0;
    for (acc, rej) in &partials {
        rejected += rej;
        for d in 0..nd {
            transfer[d] += acc[d];
        }
    }
    for t in transfer.iter_mut() {
        *t /= samples as f64;
    }
    Ok(BeamSpectrum {
        detunings_rad_s: detunings_rad_s.to_vec(),
        transfer,
        samples,
        seed,
        rejected,
        kind,
        config: cfg.clone(),
    })
}

/// Scan the drive amplitude for maximum transfer at the line center,
/// mimicking the experimental power adjustment. Returns the best scale.
pub fn calibrate_amplitude(
    cfg: &BeamConfig,
    kind: TransitionKind,
    drive: &DriveParameters,
    center_rad_s: f64,
    seed: u64,
) -> Result<f64> {
    let mut best = (1.0, f64::NEG_INFINITY);
    let mut scale = 0.6;
    while scale <= 2.5 + 1e-9 {
        let mut probe = cfg.clone();
        probe.amplitude_scale = scale;
        let s = beam_monte_carlo(&probe, kind, drive, &[center_rad_s], 4000, seed)?;
        if s.transfer[0] > best.1 {
            best = (scale, s.transfer[0]);
        }
        scale += 0.05;
    }
    Ok(best.0)
}
