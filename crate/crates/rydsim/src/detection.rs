//! Field-ionization detection model: channeltron pulse amplitudes, atom
//! counting, and post-selected multi-atom spectra.
//!
//! Each detected electron contributes a Gaussian-distributed amplitude
//! around the single-electron mean; k-electron events pile up at k times
//! that mean and are classified by the nearest multiple. Events are sorted
//! by inferred total atom number and by the split between the two
//! state-selective field-ionization gates.

use crate::error::{Result, RydError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Channeltron amplitude statistics and counting limits.
#[derive(Debug, Clone, Serialize)]
pub struct DetectionModel {
    /// Mean single-electron pulse amplitude (mV).
    pub single_electron_mean_mv: f64,
    /// Gaussian spread of one electron's amplitude (mV); the quoted
    /// 350–450 mV band is the ±2σ window.
    pub single_electron_sigma_mv: f64,
    /// Amplitude step per additional electron (mV).
    pub per_electron_increment_mv: f64,
    /// Probability that an ionized atom's electron reaches the detector.
    pub detection_probability: f64,
    /// Largest atom number the amplitude ladder resolves.
    pub max_resolvable: u32,
}

impl Default for DetectionModel {
    fn default() -> Self {
        Self {
            single_electron_mean_mv: 400.0,
            single_electron_sigma_mv: 25.0,
            per_electron_increment_mv: 400.0,
            detection_probability: 1.0,
            max_resolvable: 5,
        }
    }
}

impl DetectionModel {
    /// Settings with the measured 80% grid transparency.
    pub fn with_grid_losses() -> Self {
        Self {
            detection_probability: 0.8,
            ..Self::default()
        }
    }

    fn amplitude(&self, electrons: u32, rng: &mut ChaCha8Rng) -> f64 {
        let mut amp = 0.0;
        for _ in 0..electrons {
            let g: f64 = rng.sample(StandardNormal);
            amp += self.single_electron_mean_mv + self.single_electron_sigma_mv * g;
        }
        amp
    }

    fn detected(&self, atoms: u32, rng: &mut ChaCha8Rng) -> u32 {
        if self.detection_probability >= 1.0 {
            return atoms;
        }
        (0..atoms)
            .filter(|_| rng.gen_bool(self.detection_probability))
            .count() as u32
    }

    /// Classify a pulse amplitude as an electron count.
    pub fn classify(&self, amplitude_mv: f64) -> u32 {
        (amplitude_mv / self.per_electron_increment_mv)
            .round()
            .max(0.0) as u32
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SfiEvent {
    pub event_id: usize,
    pub true_count: u32,
    pub amplitude_mv: f64,
    pub inferred_count: u32,
    /// False when the inferred count exceeds the resolvable ladder.
    pub reliable: bool,
}

/// Simulate channeltron events for a sequence of true atom counts.
pub fn sfi_counting_sim(true_counts: &[u32], model: &DetectionModel, seed: u64) -> Vec<SfiEvent> {
    true_counts
        .iter()
        .enumerate()
        .map(|(event_id, &true_count)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(event_id as u64 + 1);
            let detected = model.detected(true_count, &mut rng);
            let amplitude_mv = model.amplitude(detected, &mut rng);
            let inferred_count = model.classify(amplitude_mv);
            SfiEvent {
                event_id,
                true_count,
                amplitude_mv,
                inferred_count,
                reliable: inferred_count <= model.max_resolvable,
            }
        })
        .collect()
}

/// Fraction of events classified correctly for a fixed true count.
pub fn classification_accuracy(
    model: &DetectionModel,
    count: u32,
    trials: usize,
    seed: u64,
) -> f64 {
    let counts = vec![count; trials];
    let events = sfi_counting_sim(&counts, model, seed);
    events
        .iter()
        .filter(|e| e.inferred_count == e.true_count)
        .count() as f64
        / trials as f64
}

/// Ensemble settings for pulsed multi-atom runs.
#[derive(Debug, Clone, Serialize)]
pub struct EnsembleConfig {
    /// Mean Rydberg atoms per laser pulse (Poisson).
    pub mean_atoms: f64,
    /// Laser pulses simulated per detuning point.
    pub pulses_per_detuning: usize,
    pub detector: DetectionModel,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        Self {
            mean_atoms: 2.5,
            pulses_per_detuning: 40_000,
            detector: DetectionModel::default(),
        }
    }
}

/// Post-selected spectra: per detuning, the probability of each
/// (k upper, N − k lower) split among events with inferred total = N.
#[derive(Debug, Clone, Serialize)]
pub struct SortedSpectra {
    pub detunings_rad_s: Vec<f64>,
    pub n_filter: u32,
    /// `pattern_probs[k][d]`: probability of k excited among the post-selected
    /// events at detuning d; `None` marks empty bins (missing data).
    pub pattern_probs: BTreeMap<u32, Vec<Option<f64>>>,
    /// Number of post-selected events per detuning.
    pub selected_events: Vec<usize>,
}

fn poisson_knuth(rng: &mut ChaCha8Rng, lambda: f64) -> u32 {
    let l = (-lambda).exp();
    let mut k = 0u32;
    let mut p = 1.0;
    loop {
        p *= rng.gen_range(0.0..1.0f64);
        if p <= l || k > 200 {
            return k;
        }
        k += 1;
    }
}

/// Generate pulsed-ensemble events against a single-atom excitation curve and
/// sort them by inferred atom number.
pub fn sorted_multi_atom_spectra(
    detunings_rad_s: &[f64],
    single_atom_curve: &[f64],
    cfg: &EnsembleConfig,
    n_filter: u32,
    seed: u64,
) -> Result<SortedSpectra> {
    if detunings_rad_s.len() != single_atom_curve.len() {
        return Err(RydError::Config("grid and curve lengths differ".into()));
    }
    if n_filter == 0 {
        return Err(RydError::Domain("post-selection needs N ≥ 1".into()));
    }
    let results: Vec<(Vec<usize>, usize)> = (0..detunings_rad_s.len())
        .into_par_iter()
        .map(|d| {
            let rho = single_atom_curve[d].clamp(0.0, 1.0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(d as u64 + 1);
            let mut bins = vec![0usize; n_filter as usize + 1];
            let mut selected = 0usize;
            for _ in 0..cfg.pulses_per_detuning {
                let atoms = poisson_knuth(&mut rng, cfg.mean_atoms);
                let mut upper = 0u32;
                for _ in 0..atoms {
                    if rng.gen_bool(rho) {
                        upper += 1;
                    }
                }
                let lower = atoms - upper;
                // the two SFI gates fire separately for each state
                let det_upper = cfg.detector.detected(upper, &mut rng);
                let det_lower = cfg.detector.detected(lower, &mut rng);
                let amp_upper = cfg.detector.amplitude(det_upper, &mut rng);
                let amp_lower = cfg.detector.amplitude(det_lower, &mut rng);
                let n_upper = cfg.detector.classify(amp_upper);
                let n_lower = cfg.detector.classify(amp_lower);
                if n_upper + n_lower == n_filter {
                    bins[n_upper as usize] += 1;
                    selected += 1;
                }
            }
            (bins, selected)
        })
        .collect();

    let mut pattern_probs: BTreeMap<u32, Vec<Option<f64>>> = BTreeMap::new();
    for k in 0..=n_filter {
        pattern_probs.insert(k, vec![None; detunings_rad_s.len()]);
    }
    let mut selected_events = vec![0usize; detunings_rad_s.len()];
    for (d, (bins, selected)) in results.into_iter().enumerate() {
        selected_events[d] = selected;
        if selected == 0 {
            continue;
        }
        for (k, &count) in bins.iter().enumerate() {
            pattern_probs.get_mut(&(k as u32)).unwrap()[d] = Some(count as f64 / selected as f64);
        }
    }
    Ok(SortedSpectra {
        detunings_rad_s: detunings_rad_s.to_vec(),
        n_filter,
        pattern_probs,
        selected_events,
    })
}

/// Full width at half maximum of a sampled curve by linear interpolation.
pub fn fwhm(x: &[f64], y: &[f64]) -> Option<f64> {
    let (mut imax, mut ymax) = (0, f64::NEG_INFINITY);
    for (i, &v) in y.iter().enumerate() {
        if v > ymax {
            ymax = v;
            imax = i;
        }
    }
    if !ymax.is_finite() || ymax <= 0.0 {
        return None;
    }
    let half = ymax / 2.0;
    let mut left = None;
    for i in (1..=imax).rev() {
        if y[i - 1] < half && y[i] >= half {
            let t = (half - y[i - 1]) / (y[i] - y[i - 1]);
            left = Some(x[i - 1] + t * (x[i] - x[i - 1]));
            break;
        }
    }
    let mut right = None;
    for i in imax..y.len() - 1 {
        if y[i] >= half && y[i + 1] < half {
            let t = (y[i] - half) / (y[i] - y[i + 1]);
            right = Some(x[i] + t * (x[i + 1] - x[i]));
            break;
        }
    }
    Some(right? - left?)
}
