//! Command-line interface: every engine behind one binary with reproducible,
//! file-based outputs.
//!
//! Each subcommand prints a human summary to stdout; with `--out <dir>` it
//! also writes CSV/JSON artifacts plus a `manifest.json` recording the
//! command, parameters, seed, and SHA-256 digest of every payload file.
//! Exit codes: 0 success, 2 input/configuration error, 3 numerical failure.

use crate::beam::{beam_monte_carlo, BeamConfig, TransitionKind};
use crate::detection::{
    sfi_counting_sim, sorted_multi_atom_spectra, DetectionModel, EnsembleConfig,
};
use crate::error::{Result, RydError};
use crate::feasibility::{feasibility_report, ExperimentConfig};
use crate::lifetime::lifetime;
use crate::lineshape::{
    drive_from_field, field_for_one_photon_area, field_for_two_photon_area,
    intermediate_detuning_rad_s, one_photon_population, two_photon_population,
};
use crate::multiatom::{multiset_probability, narrowing_ratio, narrowing_ratio_asymptotic};
use crate::pair::{
    exchange_amplitudes, exchange_period_s, pair_eigenstates, qpg_sequence, QpgConfig,
};
use crate::radial::RadialEngine;
use crate::scaling::{
    orbit_radius_a0, sfi_critical_field_v_per_cm, zeeman_splitting_rate_mhz_per_gauss,
};
use crate::species::{parse_half, Half, SpeciesData};
use crate::stark::{StarkBasis, StarkEngine};
use crate::state::{transition_frequency_hz, RydbergState};
use crate::units::ATOMIC_DIPOLE;
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sha2::{Digest, Sha256};
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "rydsim",
    version,
    about = "Rydberg-atom structure, pair dynamics, and microwave spectroscopy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Directory for CSV/JSON artifacts and the run manifest.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format for tabular artifacts.
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum numbers, energy, and scaling laws of one state.
    State {
        #[arg(long, default_value = "Na")]
        species: String,
        #[arg(long, default_value = "37S1/2")]
        state: String,
        /// Optional defect-table override file.
        #[arg(long)]
        defects: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Radial dipole matrix element, optionally a whole table.
    Dipole {
        #[arg(long, default_value = "Na")]
        species: String,
        #[arg(long, default_value = "50S1/2")]
        from: String,
        #[arg(long, default_value = "50P1/2")]
        to: String,
        /// Emit a table over n in [n-min, n-max] for the same L/J pair.
        #[arg(long)]
        table: bool,
        #[arg(long, default_value_t = 30)]
        n_min: u32,
        #[arg(long, default_value_t = 60)]
        n_max: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Stark map over a field sweep.
    StarkMap {
        #[arg(long, default_value = "Na")]
        species: String,
        #[arg(long, default_value = "1/2")]
        mj: String,
        #[arg(long, default_value_t = 33)]
        n_min: u32,
        #[arg(long, default_value_t = 39)]
        n_max: u32,
        #[arg(long, default_value_t = 10.0)]
        f_max: f64,
        #[arg(long, default_value_t = 21)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Radiative and blackbody-limited lifetime.
    Lifetime {
        #[arg(long, default_value = "Na")]
        species: String,
        #[arg(long, default_value = "30S1/2")]
        state: String,
        #[arg(long, default_value_t = 300.0)]
        temperature: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exchange oscillation of an nS-nP pair.
    Pair {
        #[arg(long, default_value = "Na")]
        species: String,
        #[arg(long, default_value_t = 50)]
        n: u32,
        #[arg(long, default_value_t = 5.0)]
        separation_um: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Conditional phase-gate truth table.
    Qpg {
        /// Use the recommended operating point (Na n=30, R=5 um).
        #[arg(long, value_parser = ["recommended", "fast-n50"])]
        preset: Option<String>,
        #[arg(long, default_value = "Na")]
        species: String,
        #[arg(long, default_value_t = 30)]
        n: u32,
        #[arg(long, default_value_t = 5.0)]
        separation_um: f64,
        /// Exchange-period / pulse-duration ratio.
        #[arg(long, default_value_t = 10.0)]
        pulse_ratio: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Single-atom analytic lineshape.
    Spectrum {
        #[arg(long, default_value = "two-photon", value_parser = ["one-photon", "two-photon"])]
        kind: String,
        #[arg(long, default_value_t = 500.0)]
        width_khz: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Independent-atom ensemble outcome spectra.
    MultiAtom {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "two-photon", value_parser = ["one-photon", "two-photon"])]
        kind: String,
        #[arg(long, default_value_t = 500.0)]
        width_khz: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Line-narrowing ratios of full multi-atom excitation.
    Narrowing {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Thermal-beam Monte Carlo spectrum.
    Beam {
        #[arg(long, default_value = "one-photon", value_parser = ["one-photon", "two-photon"])]
        kind: String,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 800.0)]
        width_khz: f64,
        #[arg(long, default_value_t = 81)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Channeltron counting simulation (JSON lines per event).
    SfiSim {
        /// Comma-separated true atom counts to cycle through.
        #[arg(long, default_value = "0,1,2,3,4,5")]
        counts: String,
        /// Number of detection events to simulate.
        #[arg(long, default_value_t = 600)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Detection probability per atom.
        #[arg(long, default_value_t = 1.0)]
        efficiency: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Post-selected multi-atom spectra from ensemble events.
    Sorted {
        #[arg(long, default_value_t = 5)]
        n_filter: u32,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 161)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Experimental-limitations budget.
    Feasibility {
        #[arg(long, value_parser = ["recommended", "fast-n50", "tight-lattice-n70"])]
        preset: Option<String>,
        /// JSON file with an ExperimentConfig.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Artifact writer collecting digests for the run manifest.
struct Workspace {
    dir: Option<PathBuf>,
    files: Vec<(String, String)>,
    json_tables: bool,
}

impl Workspace {
    fn new(output: &OutputArgs) -> Result<Self> {
        if let Some(d) = &output.out {
            std::fs::create_dir_all(d)?;
        }
        Ok(Self {
            dir: output.out.clone(),
            files: Vec::new(),
            json_tables: output.format == "json",
        })
    }

    /// Write a tabular artifact as CSV, or as a columns/rows JSON document
    /// when `--format json` was requested. `# key: value` prefix lines become
    /// metadata entries.
    fn write_table(&mut self, stem: &str, table: &str) -> Result<()> {
        if !self.json_tables {
            return self.write(&format!("{stem}.csv"), table);
        }
        let mut metadata = serde_json::Map::new();
        let mut lines = table.lines();
        let mut header: Vec<&str> = Vec::new();
        for line in lines.by_ref() {
            if let Some(rest) = line.strip_prefix('#') {
                if let Some((k, v)) = rest.split_once(':') {
                    metadata.insert(k.trim().into(), json!(v.trim()));
                }
            } else {
                header = line.split(',').collect();
                break;
            }
        }
        let rows: Vec<serde_json::Value> = lines
            .map(|line| {
                json!(line
                    .split(',')
                    .map(|f| match f.parse::<f64>() {
                        Ok(x) => json!(x),
                        Err(_) => json!(f),
                    })
                    .collect::<Vec<_>>())
            })
            .collect();
        let doc = json!({
            "metadata": metadata,
            "columns": header,
            "rows": rows,
        });
        self.write(
            &format!("{stem}.json"),
            &(serde_json::to_string_pretty(&doc)? + "\n"),
        )
    }

    fn write(&mut self, name: &str, payload: &str) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let path = dir.join(name);
        std::fs::write(&path, payload)?;
        let digest = Sha256::digest(payload.as_bytes());
        self.files.push((name.to_string(), format!("{digest:x}")));
        Ok(())
    }

    fn finish(&self, command: &str, params: serde_json::Value, seed: Option<u64>) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let manifest = json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
            "seed": seed,
            "params": params,
            "timestamp_unix_s": std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            "outputs": self.files.iter().map(|(f, h)| json!({"file": f, "sha256": h})).collect::<Vec<_>>(),
        });
        std::fs::write(
            dir.join("manifest.json"),
            serde_json::to_string_pretty(&manifest)? + "\n",
        )?;
        Ok(())
    }
}

impl From<serde_json::Error> for RydError {
    fn from(e: serde_json::Error) -> Self {
        RydError::Config(format!("json: {e}"))
    }
}

fn parse_state(species: &str, text: &str) -> Result<RydbergState> {
    let sp = SpeciesData::parse(species)?;
    RydbergState::parse(sp, text, Half(1))
}

fn sodium_two_photon_drive() -> Result<(crate::lineshape::DriveParameters, f64)> {
    let na = SpeciesData::sodium();
    let engine = RadialEngine::new(na.clone());
    let s37 = RydbergState::stretched(na.clone(), 37, 0, Half(1))?;
    let p37 = RydbergState::stretched(na.clone(), 37, 1, Half(1))?;
    let s38 = RydbergState::stretched(na, 38, 0, Half(1))?;
    let tau = 2.8e-6;
    let d1 = engine.radial_matrix_element(&s37, &p37)?.abs() / 3.0 * ATOMIC_DIPOLE;
    let d2 = engine.radial_matrix_element(&p37, &s38)?.abs() / 3.0 * ATOMIC_DIPOLE;
    let delta = intermediate_detuning_rad_s(&s37, &p37, &s38)?;
    let field = field_for_two_photon_area(PI / 2.0, tau, d1, d2, delta)?;
    let drive = drive_from_field(field, d1, d2, delta, tau)?;
    let photon_hz = transition_frequency_hz(&s37, &s38)? / 2.0;
    Ok((drive, photon_hz))
}

fn sodium_one_photon_drive() -> Result<(crate::lineshape::DriveParameters, f64)> {
    let na = SpeciesData::sodium();
    let engine = RadialEngine::new(na.clone());
    let s37 = RydbergState::stretched(na.clone(), 37, 0, Half(1))?;
    let p37 = RydbergState::stretched(na.clone(), 37, 1, Half(1))?;
    let s38 = RydbergState::stretched(na, 38, 0, Half(1))?;
    let tau = 2.8e-6;
    let d1 = engine.radial_matrix_element(&s37, &p37)?.abs() / 3.0 * ATOMIC_DIPOLE;
    let d2 = engine.radial_matrix_element(&p37, &s38)?.abs() / 3.0 * ATOMIC_DIPOLE;
    let delta = intermediate_detuning_rad_s(&s37, &p37, &s38)?;
    let field = field_for_one_photon_area(PI / 2.0, tau, d1)?;
    let drive = drive_from_field(field, d1, d2, delta, tau)?;
    let photon_hz = transition_frequency_hz(&s37, &p37)?;
    Ok((drive, photon_hz))
}

fn detuning_grid(width_khz: f64, points: usize) -> Vec<f64> {
    let n = points.max(3);
    (0..n)
        .map(|i| (i as f64 / (n - 1) as f64 - 0.5) * 2.0 * 2.0 * PI * width_khz * 1e3)
        .collect()
}

fn single_atom_curve(kind: &str, dets: &[f64]) -> Result<(Vec<f64>, f64)> {
    Ok(match kind {
        "one-photon" => {
            let (drive, _) = sodium_one_photon_drive()?;
            (
                dets.iter()
                    .map(|&d| one_photon_population(drive.omega1, d, drive.tau_s))
                    .collect(),
                0.0,
            )
        }
        _ => {
            let (drive, _) = sodium_two_photon_drive()?;
            (
                dets.iter()
                    .map(|&d| {
                        two_photon_population(drive.omega2, d, drive.power_shift, drive.tau_s)
                    })
                    .collect(),
                drive.power_shift,
            )
        }
    })
}

fn run_command(cmd: Command) -> Result<()> {
    match cmd {
        Command::State {
            species,
            state,
            defects,
            output,
        } => {
            let sp = match &defects {
                Some(path) => {
                    std::sync::Arc::new(SpeciesData::parse(&species)?.apply_defect_file(path)?)
                }
                None => SpeciesData::parse(&species)?,
            };
            let st = RydbergState::parse(sp, &state, Half(1))?;
            let neff = st.effective_n()?;
            let summary = json!({
                "state": format!("{st}"),
                "effective_n": neff,
                "energy_GHz": st.energy_ghz()?,
                "orbit_radius_a0": orbit_radius_a0(st.n, st.l)?,
                "sfi_critical_field_V_per_cm": sfi_critical_field_v_per_cm(&st)?,
                "zeeman_rate_MHz_per_G": zeeman_splitting_rate_mhz_per_gauss(&st),
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
            let mut ws = Workspace::new(&output)?;
            ws.write(
                "state.json",
                &(serde_json::to_string_pretty(&summary)? + "\n"),
            )?;
            ws.finish("state", json!({"species": species, "state": state}), None)?;
        }
        Command::Dipole {
            species,
            from,
            to,
            table,
            n_min,
            n_max,
            output,
        } => {
            let a = parse_state(&species, &from)?;
            let b = parse_state(&species, &to)?;
            let engine = RadialEngine::new(a.species.clone());
            let radial = engine.radial_matrix_element(&a, &b)?;
            let freq = transition_frequency_hz(&a, &b)?;
            println!(
                "{} -> {}: radial dipole {:.1} a.u., transition {:.4} GHz",
                a,
                b,
                radial,
                freq / 1e9
            );
            let mut ws = Workspace::new(&output)?;
            let mut csv = String::from("species,n1,L1,J1,n2,L2,J2,radial_au,frequency_GHz\n");
            let mut rows = vec![(a.clone(), b.clone(), radial, freq)];
            if table {
                for n in n_min..=n_max {
                    let s1 = RydbergState::new(a.species.clone(), n, a.l, a.j, a.mj)?;
                    let s2 = RydbergState::new(a.species.clone(), n + b.n - a.n, b.l, b.j, b.mj)?;
                    let r = engine.radial_matrix_element(&s1, &s2)?;
                    rows.push((
                        s1.clone(),
                        s2.clone(),
                        r,
                        transition_frequency_hz(&s1, &s2)?,
                    ));
                }
            }
            for (s1, s2, r, f) in rows {
                writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{},{}",
                    s1.species.name(),
                    s1.n,
                    s1.l,
                    s1.j,
                    s2.n,
                    s2.l,
                    s2.j,
                    r,
                    f / 1e9
                )
                .ok();
            }
            ws.write_table("dipole", &csv)?;
            ws.finish(
                "dipole",
                json!({"species": species, "from": from, "to": to, "table": table}),
                None,
            )?;
        }
        Command::StarkMap {
            species,
            mj,
            n_min,
            n_max,
            f_max,
            points,
            output,
        } => {
            let sp = SpeciesData::parse(&species)?;
            let mj = parse_half(&mj).ok_or_else(|| RydError::Config("bad mJ".into()))?;
            let basis = StarkBasis::new(sp, mj, n_min, n_max)?;
            let engine = StarkEngine::new(basis)?;
            let fields: Vec<f64> = (0..points.max(2))
                .map(|i| f_max * i as f64 / (points.max(2) - 1) as f64)
                .collect();
            let map = engine.stark_map(&fields)?;
            println!(
                "stark map: {} states, {} fields up to {} V/cm",
                map.labels.len(),
                fields.len(),
                f_max
            );
            let mut ws = Workspace::new(&output)?;
            let mut csv = String::from("field_V_per_cm,curve_index,zero_field_label,energy_GHz\n");
            for (k, f) in map.fields_v_per_cm.iter().enumerate() {
                for (c, curve) in map.curves.iter().enumerate() {
                    writeln!(csv, "{},{},{},{}", f, c, map.labels[c], curve[k]).ok();
                }
            }
            ws.write_table("stark_map", &csv)?;
            ws.finish(
                "stark-map",
                json!({"species": species, "mj": format!("{mj}"), "n_min": n_min, "n_max": n_max, "f_max": f_max, "points": points}),
                None,
            )?;
        }
        Command::Lifetime {
            species,
            state,
            temperature,
            output,
        } => {
            let st = parse_state(&species, &state)?;
            let engine = RadialEngine::new(st.species.clone());
            let res = lifetime(&engine, &st, temperature)?;
            println!(
                "{}: radiative {:.2} us, effective {:.2} us at {} K{}",
                res.state,
                res.radiative_lifetime_s * 1e6,
                res.effective_lifetime_s * 1e6,
                temperature,
                if res.truncation_warning {
                    " [window warning]"
                } else {
                    ""
                }
            );
            for ch in &res.dominant_decay_channels {
                println!(
                    "  -> {:<8} {:.3e} /s{}",
                    ch.to,
                    ch.rate_hz,
                    if ch.stimulated { " (thermal)" } else { "" }
                );
            }
            let mut ws = Workspace::new(&output)?;
            ws.write(
                "lifetime.json",
                &(serde_json::to_string_pretty(&res)? + "\n"),
            )?;
            ws.finish(
                "lifetime",
                json!({"species": species, "state": state, "temperature": temperature}),
                None,
            )?;
        }
        Command::Pair {
            species,
            n,
            separation_um,
            points,
            output,
        } => {
            let sp = SpeciesData::parse(&species)?;
            let ns = RydbergState::stretched(sp.clone(), n, 0, Half(1))?;
            let np = RydbergState::stretched(sp, n, 1, Half(1))?;
            let engine = RadialEngine::new(ns.species.clone());
            let r_m = separation_um * 1e-6;
            let pair = pair_eigenstates(&engine, &ns, &np, r_m)?;
            let t_half = exchange_period_s(pair.v_dd_hz);
            println!(
                "{} - {} at {} um: V_dd/h = {:.4} MHz, exchange return time {:.2} ns",
                ns,
                np,
                separation_um,
                pair.v_dd_hz / 1e6,
                t_half * 1e9
            );
            let mut ws = Workspace::new(&output)?;
            let mut csv = String::from("t_ns,p12,p21\n");
            for i in 0..points.max(2) {
                let t = 2.0 * t_half * i as f64 / (points.max(2) - 1) as f64;
                let (c12, c21) = exchange_amplitudes(pair.v_dd_hz, t);
                writeln!(csv, "{},{},{}", t * 1e9, c12.norm_sqr(), c21.norm_sqr()).ok();
            }
            ws.write_table("pair", &csv)?;
            ws.finish(
                "pair",
                json!({"species": species, "n": n, "separation_um": separation_um}),
                None,
            )?;
        }
        Command::Qpg {
            preset,
            species,
            n,
            separation_um,
            pulse_ratio,
            output,
        } => {
            let (species, n, separation_um) = match preset.as_deref() {
                Some("recommended") => ("Na".to_string(), 30, 5.0),
                Some("fast-n50") => ("Na".to_string(), 50, 5.0),
                _ => (species, n, separation_um),
            };
            let sp = SpeciesData::parse(&species)?;
            let ns = RydbergState::stretched(sp.clone(), n, 0, Half(1))?;
            let np = RydbergState::stretched(sp, n, 1, Half(1))?;
            let engine = RadialEngine::new(ns.species.clone());
            let r_m = separation_um * 1e-6;
            let pair = pair_eigenstates(&engine, &ns, &np, r_m)?;
            let t = exchange_period_s(pair.v_dd_hz);
            let cfg = QpgConfig::from_states(&engine, &ns, &np, r_m, t / pulse_ratio)?;
            let results = qpg_sequence(&cfg)?;
            let truth = json!({
                "species": species,
                "n": n,
                "separation_um": separation_um,
                "v_dd_MHz": pair.v_dd_hz / 1e6,
                "exchange_time_ns": t * 1e9,
                "pulse_time_ns": cfg.pulse_time_s * 1e9,
                "table": results.iter().map(|r| json!({
                    "input": r.input,
                    "phase_rad": r.acquired_phase_rad,
                    "leakage": r.leakage,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&truth)?);
            let mut ws = Workspace::new(&output)?;
            ws.write("qpg.json", &(serde_json::to_string_pretty(&truth)? + "\n"))?;
            ws.finish("qpg", json!({"species": species, "n": n, "separation_um": separation_um, "pulse_ratio": pulse_ratio}), None)?;
        }
        Command::Spectrum {
            kind,
            width_khz,
            points,
            output,
        } => {
            let dets = detuning_grid(width_khz, points);
            let (curve, center) = single_atom_curve(&kind, &dets)?;
            {
                // decay-free formulas need τ well inside the lifetimes
                let na = SpeciesData::sodium();
                let engine = RadialEngine::new(na.clone());
                let s37 = RydbergState::stretched(na.clone(), 37, 0, Half(1))?;
                let upper = if kind == "one-photon" {
                    RydbergState::stretched(na, 37, 1, Half(1))?
                } else {
                    RydbergState::stretched(na, 38, 0, Half(1))?
                };
                if let Some(w) = crate::lineshape::interaction_time_warning(
                    &engine,
                    &[&s37, &upper],
                    2.8e-6,
                    77.0,
                )? {
                    eprintln!("note: {w}");
                }
            }
            println!(
                "{kind} line: peak {:.4} at source detuning {:.1} kHz",
                curve.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
                center / (2.0 * PI * 1e3)
            );
            let mut ws = Workspace::new(&output)?;
            let mut csv = String::from("detuning_MHz,pattern_label,probability\n");
            for (i, &d) in dets.iter().enumerate() {
                writeln!(csv, "{},single,{}", d / (2.0 * PI * 1e6), curve[i]).ok();
            }
            ws.write_table("spectrum", &csv)?;
            ws.finish(
                "spectrum",
                json!({"kind": kind, "width_khz": width_khz, "points": points}),
                None,
            )?;
        }
        Command::MultiAtom {
            n,
            kind,
            width_khz,
            points,
            output,
        } => {
            let dets = detuning_grid(width_khz, points);
            let (curve, _) = single_atom_curve(&kind, &dets)?;
            println!("{n}-atom outcome spectra over {} points", dets.len());
            let mut ws = Workspace::new(&output)?;
            let mut csv = String::from("detuning_MHz,pattern_label,probability\n");
            for k in 0..=n {
                for (i, &d) in dets.iter().enumerate() {
                    let p = multiset_probability(curve[i], n, k)?;
                    writeln!(csv, "{},{}-of-{},{}", d / (2.0 * PI * 1e6), k, n, p).ok();
                }
            }
            ws.write_table("multi_atom", &csv)?;
            ws.finish(
                "multi-atom",
                json!({"n": n, "kind": kind, "width_khz": width_khz, "points": points}),
                None,
            )?;
        }
        Command::Narrowing { n, output } => {
            let mut csv = String::from("N,exact_ratio,asymptotic_ratio\n");
            for k in 1..=n.max(1) {
                writeln!(
                    csv,
                    "{},{},{}",
                    k,
                    narrowing_ratio(k)?,
                    narrowing_ratio_asymptotic(k)
                )
                .ok();
            }
            println!(
                "N = {}: exact narrowing {:.4}, asymptotic {:.4}",
                n,
                narrowing_ratio(n.max(1))?,
                narrowing_ratio_asymptotic(n.max(1))
            );
            let mut ws = Workspace::new(&output)?;
            ws.write_table("narrowing", &csv)?;
            ws.finish("narrowing", json!({"n": n}), None)?;
        }
        Command::Beam {
            kind,
            samples,
            seed,
            width_khz,
            points,
            output,
        } => {
            let tkind = if kind == "one-photon" {
                TransitionKind::OnePhoton
            } else {
                TransitionKind::TwoPhoton
            };
            let (drive, photon_hz) = match tkind {
                TransitionKind::OnePhoton => sodium_one_photon_drive()?,
                TransitionKind::TwoPhoton => sodium_two_photon_drive()?,
            };
            let cfg = BeamConfig::sodium_beam(photon_hz, tkind);
            if let Some(w) = cfg.consistency_warning() {
                eprintln!("note: {w}");
            }
            let center = if tkind == TransitionKind::TwoPhoton {
                drive.power_shift
            } else {
                0.0
            };
            let dets: Vec<f64> = detuning_grid(width_khz, points)
                .iter()
                .map(|d| d + center)
                .collect();
            let beam_spectrum = beam_monte_carlo(&cfg, tkind, &drive, &dets, samples, seed)?;
            println!(
                "{kind} beam spectrum: peak {:.4} over {} samples (seed {seed})",
                beam_spectrum
                    .transfer
                    .iter()
                    .cloned()
                    .fold(f64::NEG_INFINITY, f64::max),
                samples
            );
            let mut ws = Workspace::new(&output)?;
            let mut csv = String::new();
            writeln!(csv, "# seed: {seed}").ok();
            writeln!(csv, "# samples: {samples}").ok();
            writeln!(csv, "# kind: {kind}").ok();
            writeln!(
                csv,
                "# field_fluctuation_rms: {}",
                cfg.field_fluctuation_rms
            )
            .ok();
            writeln!(
                csv,
                "# counter_propagating_fraction: {}",
                cfg.counter_propagating_fraction
            )
            .ok();
            writeln!(csv, "# standing_wave: {}", cfg.standing_wave).ok();
            csv.push_str("detuning_MHz,transfer_probability\n");
            for (i, &d) in dets.iter().enumerate() {
                writeln!(
                    csv,
                    "{},{}",
                    (d - center) / (2.0 * PI * 1e6),
                    beam_spectrum.transfer[i]
                )
                .ok();
            }
            ws.write_table("beam", &csv)?;
            ws.finish(
                "beam",
                json!({"kind": kind, "samples": samples, "width_khz": width_khz, "points": points}),
                Some(seed),
            )?;
        }
        Command::SfiSim {
            counts,
            samples,
            seed,
            efficiency,
            output,
        } => {
            let cycle: Vec<u32> = counts
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| RydError::Config(format!("bad count '{t}'")))
                })
                .collect::<Result<_>>()?;
            if cycle.is_empty() {
                return Err(RydError::Config("no counts given".into()));
            }
            let true_counts: Vec<u32> = (0..samples).map(|i| cycle[i % cycle.len()]).collect();
            let model = DetectionModel {
                detection_probability: efficiency,
                ..Default::default()
            };
            let sim = sfi_counting_sim(&true_counts, &model, seed);
            let correct = sim
                .iter()
                .filter(|e| e.inferred_count == e.true_count)
                .count();
            println!(
                "sfi counting: {samples} events, {:.1}% classified at the true count",
                100.0 * correct as f64 / samples.max(1) as f64
            );
            let mut ws = Workspace::new(&output)?;
            let mut jsonl = String::new();
            for e in &sim {
                writeln!(
                    jsonl,
                    "{}",
                    json!({"event_id": e.event_id, "true_count": e.true_count, "amplitude_mV": e.amplitude_mv, "inferred_count": e.inferred_count})
                )
                .ok();
            }
            ws.write("sfi_events.jsonl", &jsonl)?;
            ws.finish(
                "sfi-sim",
                json!({"counts": counts, "samples": samples, "efficiency": efficiency}),
                Some(seed),
            )?;
        }
        Command::Sorted {
            n_filter,
            samples,
            seed,
            points,
            output,
        } => {
            let (drive, _) = sodium_two_photon_drive()?;
            let dets: Vec<f64> = detuning_grid(drive.omega2 / (2.0 * PI * 1e3) * 3.0, points)
                .iter()
                .map(|d| d + drive.power_shift)
                .collect();
            let curve: Vec<f64> = dets
                .iter()
                .map(|&d| two_photon_population(drive.omega2, d, drive.power_shift, drive.tau_s))
                .collect();
            let cfg = EnsembleConfig {
                pulses_per_detuning: samples,
                mean_atoms: 3.0,
                detector: DetectionModel::default(),
            };
            let sorted = sorted_multi_atom_spectra(&dets, &curve, &cfg, n_filter, seed)?;
            let full: Vec<f64> = sorted.pattern_probs[&n_filter]
                .iter()
                .map(|p| p.unwrap_or(0.0))
                .collect();
            println!(
                "post-selected N = {n_filter}: full-excitation peak {:.4}",
                full.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            );
            let mut ws = Workspace::new(&output)?;
            let mut csv = String::from("detuning_MHz,pattern_label,probability\n");
            for (k, probs) in &sorted.pattern_probs {
                for (i, p) in probs.iter().enumerate() {
                    if let Some(p) = p {
                        writeln!(
                            csv,
                            "{},{}-of-{},{}",
                            (dets[i] - drive.power_shift) / (2.0 * PI * 1e6),
                            k,
                            n_filter,
                            p
                        )
                        .ok();
                    }
                }
            }
            ws.write_table("sorted", &csv)?;
            ws.finish(
                "sorted",
                json!({"n_filter": n_filter, "samples": samples, "points": points}),
                Some(seed),
            )?;
        }
        Command::Feasibility {
            preset,
            config,
            output,
        } => {
            let cfg = if let Some(path) = config {
                let text = std::fs::read_to_string(path)?;
                serde_json::from_str::<ExperimentConfigFile>(&text)?.into()
            } else {
                match preset.as_deref() {
                    Some("fast-n50") => ExperimentConfig::fast_n50(),
                    Some("tight-lattice-n70") => ExperimentConfig::tight_lattice_n70(),
                    _ => ExperimentConfig::recommended(),
                }
            };
            let report = feasibility_report(&cfg)?;
            print!("{report}");
            let mut ws = Workspace::new(&output)?;
            ws.write(
                "feasibility.json",
                &(serde_json::to_string_pretty(&report)? + "\n"),
            )?;
            ws.write("feasibility.txt", &format!("{report}"))?;
            ws.finish("feasibility", serde_json::to_value(&cfg)?, None)?;
        }
    }
    Ok(())
}

/// On-disk form of [`ExperimentConfig`] with every field optional over the
/// recommended defaults.
#[derive(serde::Deserialize)]
struct ExperimentConfigFile {
    species: Option<String>,
    n: Option<u32>,
    lattice_spacing_um: Option<f64>,
    pulse_duration_ns: Option<f64>,
    spot_diameter_um: Option<f64>,
    magnetic_field_gauss: Option<f64>,
    ambient_temperature_k: Option<f64>,
    target_gate_time_ns: Option<f64>,
}

impl From<ExperimentConfigFile> for ExperimentConfig {
    fn from(f: ExperimentConfigFile) -> Self {
        let d = ExperimentConfig::recommended();
        ExperimentConfig {
            species: f.species.unwrap_or(d.species),
            n: f.n.unwrap_or(d.n),
            lattice_spacing_m: f
                .lattice_spacing_um
                .map_or(d.lattice_spacing_m, |v| v * 1e-6),
            pulse_duration_s: f.pulse_duration_ns.map_or(d.pulse_duration_s, |v| v * 1e-9),
            spot_diameter_m: f.spot_diameter_um.map_or(d.spot_diameter_m, |v| v * 1e-6),
            magnetic_field_gauss: f.magnetic_field_gauss.unwrap_or(d.magnetic_field_gauss),
            ambient_temperature_k: f.ambient_temperature_k.unwrap_or(d.ambient_temperature_k),
            target_gate_time_s: f
                .target_gate_time_ns
                .map_or(d.target_gate_time_s, |v| v * 1e-9),
        }
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own help/usage text
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_command(cli.command) {
        Ok(()) => 0,
        Err(e @ (RydError::Numerical(_) | RydError::FitQuality(_))) => {
            eprintln!("error: {e}");
            3
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
