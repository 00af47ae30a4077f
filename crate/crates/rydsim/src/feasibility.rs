//! Experiment feasibility budget for a proposed gate configuration.
//!
//! Evaluates, in order: optical access at the lattice spacing, the
//! collision-limited principal quantum number, the exchange strength and
//! gate time, the pulse/gate timing ratio, the per-atom laser power, the
//! Fourier-limited spectral resolution against the fine-structure interval,
//! the Zeeman field needed to isolate single sublevels, Stark sensitivity of
//! the chosen states, blackbody lifetime margin, and the field-ionization
//! detection threshold.

use crate::error::{Result, RydError};
use crate::lifetime::lifetime;
use crate::pair::{exchange_period_s, pair_eigenstates};
use crate::radial::RadialEngine;
use crate::scaling::{
    max_principal_quantum_number, sfi_critical_field_v_per_cm, zeeman_splitting_rate_mhz_per_gauss,
};
use crate::species::{Half, Species, SpeciesData};
use crate::state::RydbergState;
use crate::units::{EPSILON_0, HBAR, SPEED_OF_LIGHT};
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;

/// Proposed experimental configuration.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub species: String,
    /// Principal quantum number of the nS/nP gate pair.
    pub n: u32,
    /// Lattice spacing (m).
    pub lattice_spacing_m: f64,
    /// Rydberg excitation pulse duration (s).
    pub pulse_duration_s: f64,
    /// Laser spot diameter at the atom (m).
    pub spot_diameter_m: f64,
    pub magnetic_field_gauss: f64,
    pub ambient_temperature_k: f64,
    /// Target time for one conditional-phase operation (s).
    pub target_gate_time_s: f64,
}

impl ExperimentConfig {
    /// The recommended operating point: n = 30 sodium at 5 μm spacing,
    /// 50 ns pulses, a 500 ns gate, 10 G bias field, room temperature.
    pub fn recommended() -> Self {
        Self {
            species: "Na".into(),
            n: 30,
            lattice_spacing_m: 5e-6,
            pulse_duration_s: 50e-9,
            spot_diameter_m: 1e-6,
            magnetic_field_gauss: 10.0,
            ambient_temperature_k: 300.0,
            target_gate_time_s: 500e-9,
        }
    }

    /// The fast variant: n = 50 with 5 ns pulses and a 50 ns gate.
    pub fn fast_n50() -> Self {
        Self {
            n: 50,
            pulse_duration_s: 5e-9,
            target_gate_time_s: 50e-9,
            ..Self::recommended()
        }
    }

    /// Tight red-detuned lattice: 0.5 μm spacing with n = 70.
    pub fn tight_lattice_n70() -> Self {
        Self {
            n: 70,
            lattice_spacing_m: 0.5e-6,
            ..Self::recommended()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Warning,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionEntry {
    pub name: String,
    pub value: f64,
    pub units: String,
    pub threshold: String,
    pub status: Status,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityReport {
    pub config: ExperimentConfig,
    pub entries: Vec<CriterionEntry>,
}

impl FeasibilityReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn entry(&self, name: &str) -> Option<&CriterionEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "feasibility report: {} n={} R={:.2} um pulses={:.0} ns gate={:.0} ns B={:.1} G T={:.0} K",
            self.config.species,
            self.config.n,
            self.config.lattice_spacing_m * 1e6,
            self.config.pulse_duration_s * 1e9,
            self.config.target_gate_time_s * 1e9,
            self.config.magnetic_field_gauss,
            self.config.ambient_temperature_k
        )?;
        for e in &self.entries {
            writeln!(
                f,
                "  [{:^7}] {:<22} {:>12.4} {:<10} ({}) {}",
                match e.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Warning => "warning",
                },
                e.name,
                e.value,
                e.units,
                e.threshold,
                e.note
            )?;
        }
        Ok(())
    }
}

/// Laser intensity and per-atom power for a ground → Rydberg pulse.
///
/// `pulse_area` uses the sin²-argument convention of the lineshape formulas:
/// Ω·τ/2 = area, so π/2 inverts and 3π/2 fully de-excites.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PulsePower {
    pub intensity_w_per_cm2: f64,
    pub power_w: f64,
    pub field_v_per_m: f64,
    pub dipole_au: f64,
}

pub fn pulse_intensity(
    engine: &RadialEngine,
    ground: &RydbergState,
    excited: &RydbergState,
    pulse_area_rad: f64,
    duration_s: f64,
    spot_diameter_m: f64,
) -> Result<PulsePower> {
    if duration_s <= 0.0 || spot_diameter_m <= 0.0 {
        return Err(RydError::Domain(
            "duration and spot must be positive".into(),
        ));
    }
    let radial = engine.radial_matrix_element(ground, excited)?;
    // strongest σ+ component from the stretched ground sublevel
    let mut best: f64 = 0.0;
    for q in [-1i32, 0, 1] {
        for m2 in [-excited.j.twice(), -1, 1, excited.j.twice()] {
            let a = crate::angular::angular_factor_q(
                ground.l,
                ground.j,
                Half(1),
                excited.l,
                excited.j,
                Half(m2),
                q,
            );
            best = best.max(a.abs());
        }
    }
    if best == 0.0 || radial == 0.0 {
        return Err(RydError::Domain(format!(
            "dipole-forbidden transition {ground} -> {excited}"
        )));
    }
    let dipole_au = radial.abs() * best;
    let d = dipole_au * crate::units::ATOMIC_DIPOLE;
    let omega = 2.0 * pulse_area_rad / duration_s;
    let field = HBAR * omega / d;
    let intensity = 0.5 * EPSILON_0 * SPEED_OF_LIGHT * field * field; // W/m²
    let power = intensity * PI * (spot_diameter_m / 2.0).powi(2);
    Ok(PulsePower {
        intensity_w_per_cm2: intensity / 1e4,
        power_w: power,
        field_v_per_m: field,
        dipole_au,
    })
}

/// Magnetic field (G) required to split adjacent mJ sublevels of a state by
/// the target splitting.
pub fn zeeman_requirement_gauss(state: &RydbergState, target_mhz: f64) -> Result<f64> {
    if target_mhz < 0.0 {
        return Err(RydError::Domain("target splitting must be >= 0".into()));
    }
    Ok(target_mhz / zeeman_splitting_rate_mhz_per_gauss(state))
}

#[derive(Debug, Clone, Serialize)]
pub struct BbrVerdict {
    pub pass: bool,
    /// min effective lifetime × margin / gate time; > 1 passes.
    pub margin: f64,
    pub min_effective_lifetime_s: f64,
}

/// Blackbody verdict: the gate must finish well inside the shortest effective
/// lifetime (margin fraction 0.05 of the lifetime).
pub fn bbr_verdict(
    engine: &RadialEngine,
    states: &[&RydbergState],
    gate_time_s: f64,
    temperature_k: f64,
) -> Result<BbrVerdict> {
    const MARGIN_FRACTION: f64 = 0.05;
    let mut min_tau = f64::INFINITY;
    for s in states {
        let tau = lifetime(engine, s, temperature_k)?.effective_lifetime_s;
        min_tau = min_tau.min(tau);
    }
    let budget = MARGIN_FRACTION * min_tau;
    Ok(BbrVerdict {
        pass: gate_time_s <= budget,
        margin: budget / gate_time_s,
        min_effective_lifetime_s: min_tau,
    })
}

fn species_of(cfg: &ExperimentConfig) -> Result<Species> {
    SpeciesData::parse(&cfg.species)
}

fn ground_state(species: &Species) -> Result<RydbergState> {
    let n = species.min_n(0);
    RydbergState::stretched(species.clone(), n, 0, Half(1))
}

/// Per-atom laser power above this is treated as impractical for cw-derived
/// UV sources.
const POWER_LIMIT_W: f64 = 1e-3;
/// Spectral resolution needed to address single fine-structure sublevels.
const RESOLUTION_LIMIT_MHZ: f64 = 20.0;
/// Ionization ramp amplitude the detection electronics can supply.
const RAMP_LIMIT_V_PER_CM: f64 = 1000.0;

/// Evaluate the full budget. Infeasible inputs produce failed entries, never
/// errors.
pub fn feasibility_report(cfg: &ExperimentConfig) -> Result<FeasibilityReport> {
    let species = species_of(cfg)?;
    let engine = RadialEngine::new(species.clone());
    let ns = RydbergState::stretched(species.clone(), cfg.n, 0, Half(1))?;
    let np = RydbergState::stretched(species.clone(), cfg.n, 1, Half(1))?;
    let mut entries = Vec::new();

    // 1. optical access
    let r_um = cfg.lattice_spacing_m * 1e6;
    entries.push(CriterionEntry {
        name: "optical-access".into(),
        value: r_um,
        units: "um".into(),
        threshold: ">= 5 um".into(),
        status: if r_um >= 5.0 - 1e-12 {
            Status::Pass
        } else {
            Status::Fail
        },
        note: "free optical access to individual sites".into(),
    });

    // 2. collision bound
    let n_max = max_principal_quantum_number(cfg.lattice_spacing_m, 0)?;
    entries.push(CriterionEntry {
        name: "collision-bound".into(),
        value: n_max,
        units: "n_max".into(),
        threshold: format!("n = {} <= n_max", cfg.n),
        status: if (cfg.n as f64) <= n_max + 1e-9 {
            Status::Pass
        } else {
            Status::Fail
        },
        note: "orbit must stay an order of magnitude below the spacing".into(),
    });

    // 3. exchange strength and minimum gate time
    let pair = pair_eigenstates(&engine, &ns, &np, cfg.lattice_spacing_m)?;
    let t_exchange = exchange_period_s(pair.v_dd_hz);
    entries.push(CriterionEntry {
        name: "exchange-time".into(),
        value: t_exchange * 1e9,
        units: "ns".into(),
        threshold: format!("<= gate {} ns", cfg.target_gate_time_s * 1e9),
        status: if t_exchange <= cfg.target_gate_time_s {
            Status::Pass
        } else {
            Status::Fail
        },
        note: format!("V_dd/h = {:.3} MHz at this spacing", pair.v_dd_hz / 1e6),
    });

    // 4. pulse/gate timing ratio
    let ratio = cfg.target_gate_time_s / cfg.pulse_duration_s;
    entries.push(CriterionEntry {
        name: "pulse-ratio".into(),
        value: ratio,
        units: "gate/pulse".into(),
        threshold: ">= 10".into(),
        status: if ratio >= 10.0 - 1e-9 {
            Status::Pass
        } else {
            Status::Fail
        },
        note: "pulses must be short against the interaction window".into(),
    });

    // 5. per-atom laser power for the de-excitation pulse (area 3π/2)
    let ground = ground_state(&species)?;
    let np32 = RydbergState::stretched(species.clone(), cfg.n, 1, Half(3))?;
    let power = pulse_intensity(
        &engine,
        &ground,
        &np32,
        1.5 * PI,
        cfg.pulse_duration_s,
        cfg.spot_diameter_m,
    )?;
    entries.push(CriterionEntry {
        name: "laser-power".into(),
        value: power.power_w * 1e3,
        units: "mW/atom".into(),
        threshold: format!("<= {} mW", POWER_LIMIT_W * 1e3),
        status: if power.power_w <= POWER_LIMIT_W {
            Status::Pass
        } else {
            Status::Fail
        },
        note: format!("{:.3e} W/cm2 at the spot", power.intensity_w_per_cm2),
    });

    // 6. spectral resolution vs fine structure
    let fourier_mhz = 1.0 / cfg.pulse_duration_s / 1e6;
    let fs_50p = species.fs_interval_50p_mhz;
    let neff_p = np.effective_n()?;
    let neff_50p = 50.0 - species.defect(1, Half(1))?;
    let fs_interval = if fs_50p > 0.0 {
        fs_50p * (neff_50p / neff_p).powi(3)
    } else {
        0.0
    };
    let resolvable = fourier_mhz <= RESOLUTION_LIMIT_MHZ + 1e-9
        && (fs_interval == 0.0 || fourier_mhz <= fs_interval);
    entries.push(CriterionEntry {
        name: "spectral-resolution".into(),
        value: fourier_mhz,
        units: "MHz".into(),
        threshold: format!(
            "<= {RESOLUTION_LIMIT_MHZ} MHz and <= {fs_interval:.0} MHz fine structure"
        ),
        status: if resolvable {
            Status::Pass
        } else {
            Status::Fail
        },
        note: "Fourier-limited pulse width must resolve single sublevels".into(),
    });

    // 7. Zeeman isolation of sublevels
    let rate_p = zeeman_splitting_rate_mhz_per_gauss(&np);
    let splitting_mhz = rate_p * cfg.magnetic_field_gauss;
    let needed_mhz = pair.v_dd_hz / 1e6;
    entries.push(CriterionEntry {
        name: "zeeman-isolation".into(),
        value: splitting_mhz,
        units: "MHz".into(),
        threshold: format!("> V_dd/h = {needed_mhz:.3} MHz"),
        status: if splitting_mhz > needed_mhz {
            Status::Pass
        } else {
            Status::Fail
        },
        note: format!(
            "least-sensitive state splits at {rate_p:.3} MHz/G; {:.1} G would give 10 MHz",
            zeeman_requirement_gauss(&np, 10.0)?
        ),
    });

    // 8. Stark sensitivity advisory
    let low_l = ns.l <= 2 && np.l <= 2;
    entries.push(CriterionEntry {
        name: "stark-stability".into(),
        value: np.l as f64,
        units: "L".into(),
        threshold: "S/P/D states".into(),
        status: if low_l { Status::Pass } else { Status::Warning },
        note: "quadratic-Stark states resist stray-field mixing".into(),
    });

    // 9. blackbody margin
    let verdict = bbr_verdict(
        &engine,
        &[&ns, &np],
        cfg.target_gate_time_s,
        cfg.ambient_temperature_k,
    )?;
    entries.push(CriterionEntry {
        name: "bbr-margin".into(),
        value: verdict.margin,
        units: "x".into(),
        threshold: ">= 1 (gate <= 5% of lifetime)".into(),
        status: if verdict.pass {
            Status::Pass
        } else {
            Status::Fail
        },
        note: format!(
            "min effective lifetime {:.1} us at {} K",
            verdict.min_effective_lifetime_s * 1e6,
            cfg.ambient_temperature_k
        ),
    });

    // 10. field-ionization detection
    let e_c = sfi_critical_field_v_per_cm(&ns)?;
    entries.push(CriterionEntry {
        name: "sfi-detection".into(),
        value: e_c,
        units: "V/cm".into(),
        threshold: format!("<= {RAMP_LIMIT_V_PER_CM} V/cm ramp"),
        status: if e_c <= RAMP_LIMIT_V_PER_CM {
            Status::Pass
        } else {
            Status::Fail
        },
        note: "critical ionization field for the lower gate state".into(),
    });

    Ok(FeasibilityReport {
        config: cfg.clone(),
        entries,
    })
}
