//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).

mod common;

use common::{
    jacobi_eigenvalues, slope, three_level_ode_population, two_level_ode_population, Criterion,
};
use rydsim::beam::{beam_monte_carlo, doppler_width_hz, BeamConfig, TransitionKind};
use rydsim::detection::{
    classification_accuracy, fwhm, sfi_counting_sim, sorted_multi_atom_spectra, DetectionModel,
    EnsembleConfig,
};
use rydsim::feasibility::{feasibility_report, ExperimentConfig, Status};
use rydsim::lifetime::lifetime;
use rydsim::lineshape::{
    drive_from_field, field_for_one_photon_area, field_for_two_photon_area,
    intermediate_detuning_rad_s, one_photon_population, photon_density_per_cm3,
    two_photon_population,
};
use rydsim::multiatom::{dip_feature_check, narrowing_ratio, narrowing_ratio_asymptotic};
use rydsim::pair::{
    degenerate_exchange_structure, dipole_dipole_shift_hz, exchange_period_s, qpg_sequence,
    QpgConfig,
};
use rydsim::radial::RadialEngine;
use rydsim::scaling::sfi_critical_field_for_neff;
use rydsim::species::{Half, SpeciesData};
use rydsim::stark::{fit_linear, fit_quadratic, polarizability, StarkBasis, StarkEngine};
use rydsim::state::{transition_frequency_hz, RydbergState};
use rydsim::units::{ATOMIC_DIPOLE, HBAR, PLANCK};
use std::f64::consts::PI;
use std::time::Instant;

fn na_state(n: u32, l: u32, j2: i32) -> RydbergState {
    RydbergState::stretched(SpeciesData::sodium(), n, l, Half(j2)).unwrap()
}

fn rb_state(n: u32, l: u32, j2: i32) -> RydbergState {
    RydbergState::stretched(SpeciesData::rubidium(), n, l, Half(j2)).unwrap()
}

#[test]
fn criterion_01_transition_frequencies() {
    let c = Criterion {
        index: 1,
        name: "transition frequencies",
    };
    let t0 = Instant::now();
    let f_na50 = transition_frequency_hz(&na_state(50, 0, 1), &na_state(50, 1, 1)).unwrap();
    let f_rb50 = transition_frequency_hz(&rb_state(50, 0, 1), &rb_state(50, 1, 1)).unwrap();
    let f_na37 = transition_frequency_hz(&na_state(37, 0, 1), &na_state(37, 1, 1)).unwrap();
    let elapsed = t0.elapsed();
    let ok = (f_na50 - 27.7e9).abs() <= 0.02 * 27.7e9
        && (f_rb50 - 30.0e9).abs() <= 0.03 * 30.0e9
        && (f_na37 - 70.0e9).abs() <= 0.02 * 70.0e9
        && elapsed.as_secs_f64() < 1.0;
    c.report(
        ok,
        &format!(
            "Na50 {:.3} GHz, Rb50 {:.3} GHz, Na37 {:.3} GHz in {elapsed:?}",
            f_na50 / 1e9,
            f_rb50 / 1e9,
            f_na37 / 1e9
        ),
    );
}

#[test]
fn criterion_02_radial_matrix_elements() {
    let c = Criterion {
        index: 2,
        name: "radial dipole matrix elements",
    };
    let t0 = Instant::now();
    let na = RadialEngine::new(SpeciesData::sodium());
    let rb = RadialEngine::new(SpeciesData::rubidium());
    let m_na50 = na
        .radial_matrix_element(&na_state(50, 0, 1), &na_state(50, 1, 1))
        .unwrap();
    let m_rb50 = rb
        .radial_matrix_element(&rb_state(50, 0, 1), &rb_state(50, 1, 1))
        .unwrap();
    let m_na37 = na
        .radial_matrix_element(&na_state(37, 0, 1), &na_state(37, 1, 1))
        .unwrap();
    let m_na3738 = na
        .radial_matrix_element(&na_state(37, 1, 1), &na_state(38, 0, 1))
        .unwrap();
    let elapsed = t0.elapsed();
    let ok = (m_na50 - 2690.0).abs() <= 0.03 * 2690.0
        && (m_rb50 - 2550.0).abs() <= 0.05 * 2550.0
        && (m_na37 - 1460.0).abs() <= 0.03 * 1460.0
        && (m_na3738 - 1430.0).abs() <= 0.03 * 1430.0
        && elapsed.as_secs_f64() < 10.0;
    c.report(
        ok,
        &format!(
            "Na50 {m_na50:.0}, Rb50 {m_rb50:.0}, Na37 {m_na37:.0}, Na37-38 {m_na3738:.0} a.u. in {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_03_dipole_dipole_shift_and_timing() {
    let c = Criterion {
        index: 3,
        name: "dipole-dipole shift and exchange time",
    };
    let d_z = 2690.0 / 3.0 * ATOMIC_DIPOLE;
    let v_hz = dipole_dipole_shift_hz(d_z, 5e-6).unwrap();
    let t = exchange_period_s(v_hz);
    // T × V_dd = πħ
    let identity = (t * (PLANCK * v_hz) / (PI * HBAR) - 1.0).abs();
    let ok = (9e6..=14e6).contains(&v_hz) && (36e-9..=56e-9).contains(&t) && identity < 1e-12;
    c.report(
        ok,
        &format!(
            "V_dd/h = {:.2} MHz, T = {:.1} ns, |TV/πħ − 1| = {identity:.1e}",
            v_hz / 1e6,
            t * 1e9
        ),
    );
}

#[test]
fn criterion_04_phase_gate_truth_table() {
    let c = Criterion {
        index: 4,
        name: "conditional phase gate",
    };
    let v = 10e6;
    let t = exchange_period_s(v);
    let run = |ratio: f64| {
        let cfg = QpgConfig::new(v, t / ratio);
        qpg_sequence(&cfg).unwrap()
    };
    let at10 = run(10.0);
    let mut ok = true;
    for r in &at10[..3] {
        ok &= r.acquired_phase_rad.abs() < 0.05 && r.leakage < 1e-2;
    }
    let phase11 = at10[3].acquired_phase_rad;
    ok &= (phase11.abs() - PI).abs() < 0.05 && at10[3].leakage < 1e-2;

    // monotone convergence toward the ideal gate
    let err = |res: &[rydsim::pair::GateResult]| {
        (res[3].acquired_phase_rad.abs() - PI).abs() + res[3].leakage
    };
    let (e3, e10, e30) = (err(&run(3.0)), err(&at10), err(&run(30.0)));
    ok &= e3 > e10 && e10 > e30;
    c.report(
        ok,
        &format!(
            "phases (0,0,0,{phase11:.4}), leak11 {:.2e}; error 3/10/30 = {e3:.2e}/{e10:.2e}/{e30:.2e}",
            at10[3].leakage
        ),
    );
}

#[test]
fn criterion_05_degenerate_sublevels_break_the_gate() {
    let c = Criterion {
        index: 5,
        name: "degenerate-sublevel failure",
    };
    let engine = RadialEngine::new(SpeciesData::sodium());
    let s = na_state(37, 0, 1);
    let p = na_state(37, 1, 1);
    let deg = degenerate_exchange_structure(&engine, &s, &p, 5e-6).unwrap();
    let three_levels = deg.level_magnitudes_hz.len() == 3 && deg.m0_distinct_hz.len() == 3;
    let t = exchange_period_s(2.0 * deg.v0_hz);
    let scan = deg.scan(10.0 * t, 40_000);
    let ok = three_levels && !scan.condition_met;
    c.report(
        ok,
        &format!(
            "levels {:?} v0; best simultaneous return {:.3} with phase error {:.3} rad over 10T",
            deg.level_magnitudes_hz
                .iter()
                .map(|m| (m / deg.v0_hz * 10.0).round() / 10.0)
                .collect::<Vec<_>>(),
            scan.best_min_return,
            scan.best_phase_error_rad
        ),
    );
}

#[test]
fn criterion_06_lineshapes_match_ode_oracles() {
    let c = Criterion {
        index: 6,
        name: "lineshapes vs ODE oracles",
    };
    let t0 = Instant::now();
    // two-level closed form to 1e-6
    let omega1 = 2.0 * PI * 178.6e3;
    let tau = PI / omega1;
    let mut worst2 = 0.0f64;
    for i in 0..41 {
        let delta = (i as f64 - 20.0) / 20.0 * 3.0 * omega1;
        let ode = two_level_ode_population(omega1, delta, tau, 40_000);
        let formula = one_photon_population(omega1, delta, tau);
        worst2 = worst2.max((ode - formula).abs());
    }
    // three-level adiabatic elimination to 5% at Δ = 20 Ω1
    let big_delta = 20.0 * omega1;
    let omega2 = omega1 * omega1 / (4.0 * big_delta);
    let delta0 = 0.0; // equal couplings
    let tau2 = PI / (2.0 * omega2);
    let mut worst3 = 0.0f64;
    for i in 0..21 {
        let delta_s = (i as f64 - 10.0) / 10.0 * 2.5 * omega2;
        let steps = (tau2 * big_delta * 8.0).ceil() as usize;
        let ode = three_level_ode_population(omega1, omega1, big_delta, delta_s, tau2, steps);
        let formula = two_photon_population(omega2, delta_s, delta0, tau2);
        worst3 = worst3.max((ode - formula).abs());
    }
    let elapsed = t0.elapsed();
    let ok = worst2 < 1e-6 && worst3 < 0.05 && elapsed.as_secs_f64() < 30.0;
    c.report(
        ok,
        &format!("two-level dev {worst2:.2e}, three-level dev {worst3:.3} in {elapsed:?}"),
    );
}

#[test]
fn criterion_07_multi_atom_narrowing() {
    let c = Criterion {
        index: 7,
        name: "multi-atom narrowing",
    };
    let exact = narrowing_ratio(5).unwrap();
    // frozen from the closed form 1/sqrt(2^(1/5) − 1)
    let exact_ok = (exact - 2.5932657).abs() < 1e-3;
    let asym = narrowing_ratio_asymptotic(5);
    let asym_ok = (asym - 2.69).abs() < 0.01;

    // Monte-Carlo post-selected five-atom width against the closed form
    let omega2 = 2.0 * PI * 90e3;
    let tau = PI / (2.0 * omega2);
    let dets: Vec<f64> = (0..161)
        .map(|i| (i as f64 / 160.0 - 0.5) * 6.0 * omega2)
        .collect();
    let curve: Vec<f64> = dets
        .iter()
        .map(|&d| two_photon_population(omega2, d, 0.0, tau))
        .collect();
    let cfg = EnsembleConfig {
        mean_atoms: 3.0,
        pulses_per_detuning: 40_000,
        detector: DetectionModel::default(),
    };
    let sorted = sorted_multi_atom_spectra(&dets, &curve, &cfg, 5, 23).unwrap();
    let full: Vec<f64> = sorted.pattern_probs[&5]
        .iter()
        .map(|p| p.unwrap_or(0.0))
        .collect();
    let width = fwhm(&dets, &full).unwrap();
    let predicted = rydsim::multiatom::narrowed_width_rad_s(omega2, 5).unwrap();
    let mc_ok = ((width - predicted) / predicted).abs() < 0.15;
    c.report(
        exact_ok && asym_ok && mc_ok,
        &format!(
            "exact {exact:.4}, asymptotic {asym:.4}, MC width {:.3} vs {:.3} (x2πkHz)",
            width / (2.0 * PI * 1e3),
            predicted / (2.0 * PI * 1e3)
        ),
    );
}

#[test]
fn criterion_08_photon_densities() {
    let c = Criterion {
        index: 8,
        name: "microwave photon densities",
    };
    let engine = RadialEngine::new(SpeciesData::sodium());
    let s37 = na_state(37, 0, 1);
    let p37 = na_state(37, 1, 1);
    let s38 = na_state(38, 0, 1);
    let tau = 2.8e-6;
    let d1 = engine.radial_matrix_element(&s37, &p37).unwrap() / 3.0 * ATOMIC_DIPOLE;
    let d2 = engine.radial_matrix_element(&p37, &s38).unwrap() / 3.0 * ATOMIC_DIPOLE;

    let e1 = field_for_one_photon_area(PI / 2.0, tau, d1).unwrap();
    let omega1 = 2.0 * PI * transition_frequency_hz(&s37, &p37).unwrap();
    let n1 = photon_density_per_cm3(e1, omega1).unwrap();

    let delta = intermediate_detuning_rad_s(&s37, &p37, &s38).unwrap();
    let e2 = field_for_two_photon_area(PI / 2.0, tau, d1, d2, delta).unwrap();
    let omega_photon = PI * transition_frequency_hz(&s37, &s38).unwrap(); // 2π·(f/2)
    let n2 = photon_density_per_cm3(e2, omega_photon).unwrap();

    let ok = (25.0..=100.0).contains(&n1) && (2e4..=5e5).contains(&n2);
    c.report(
        ok,
        &format!(
            "one-photon {n1:.0} cm^-3 (target ~50 x2), two-photon {n2:.2e} cm^-3 (target ~1e5 x5)"
        ),
    );
}

#[test]
fn criterion_09_stark_map_structure() {
    let c = Criterion {
        index: 9,
        name: "Stark map structure",
    };
    let na = SpeciesData::sodium();
    let radial = RadialEngine::new(na.clone());

    // quadratic S and P states up to 10 V/cm
    let basis = StarkBasis::new(na.clone(), Half(1), 33, 40).unwrap();
    let engine = StarkEngine::with_radial_engine(basis, &radial).unwrap();
    let fields: Vec<f64> = (0..21).map(|i| i as f64 * 0.5).collect();
    let map = engine.stark_map(&fields).unwrap();
    let residual_of = |n: u32, l: u32| {
        let idx = engine.basis.index_of(n, l, Half(1)).unwrap();
        let curve: Vec<f64> = (0..fields.len()).map(|k| map.curves[idx][k]).collect();
        let (_, _, rms) = fit_quadratic(&fields, &curve);
        rms / (curve[curve.len() - 1] - curve[0]).abs()
    };
    let quad_ok = residual_of(37, 0) < 0.02 && residual_of(37, 1) < 0.02;

    // hydrogen-like manifold states linear above 1 V/cm
    let idx = engine.basis.index_of(36, 5, Half(11)).unwrap();
    let xs: Vec<f64> = fields
        .iter()
        .cloned()
        .filter(|f| (1.0..=8.0).contains(f))
        .collect();
    let ys: Vec<f64> = fields
        .iter()
        .enumerate()
        .filter(|(_, f)| (1.0..=8.0).contains(*f))
        .map(|(k, _)| map.curves[idx][k])
        .collect();
    let (_, _, r2) = fit_linear(&xs, &ys);
    let linear_ok = r2 > 0.999;

    // D states quadratic below 0.1 V/cm
    let dfields: Vec<f64> = (0..9).map(|i| i as f64 * 0.0125).collect();
    let dmap = engine.stark_map(&dfields).unwrap();
    let didx = engine.basis.index_of(36, 2, Half(3)).unwrap();
    let dcurve: Vec<f64> = (0..dfields.len()).map(|k| dmap.curves[didx][k]).collect();
    let (_, _, drms) = fit_quadratic(&dfields, &dcurve);
    let d_ok = drms / (dcurve[8] - dcurve[0]).abs() < 0.02;

    // polarizability scaling over n in [30, 40]
    let mut pts = Vec::new();
    for n in [30u32, 32, 34, 36, 38, 40] {
        let b = StarkBasis::new(na.clone(), Half(1), n - 3, n + 3).unwrap();
        let e = StarkEngine::with_radial_engine(b, &radial).unwrap();
        let neff = n as f64 - 1.348;
        let window = 3.0 * (35.152 / neff).powi(5);
        let alpha = polarizability(&e, n, 0, Half(1), window, 7).unwrap();
        pts.push(((n as f64 - 1.348).ln(), alpha.ln()));
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let exponent = slope(&xs, &ys);
    let exponent_ok = (exponent - 7.0).abs() <= 0.7;

    // production eigensolver against the Jacobi oracle on a small basis
    let mut small_states = Vec::new();
    for l in 0..13u32 {
        for j2 in [2 * l as i32 - 1, 2 * l as i32 + 1] {
            if j2 > 0 {
                small_states.push(RydbergState::new(na.clone(), 36, l, Half(j2), Half(1)).unwrap());
            }
        }
    }
    let small = StarkBasis::from_states(na.clone(), Half(1), small_states).unwrap();
    assert!(small.len() <= 50);
    let small_engine = StarkEngine::with_radial_engine(small, &radial).unwrap();
    let h = small_engine.hamiltonian(4.0);
    let n = h.nrows();
    let dense: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| h[(i, j)]).collect())
        .collect();
    let oracle = jacobi_eigenvalues(&dense);
    let mut production: Vec<f64> = h.symmetric_eigen().eigenvalues.as_slice().to_vec();
    production.sort_by(f64::total_cmp);
    let mut eig_dev = 0.0f64;
    for (a, b) in production.iter().zip(&oracle) {
        eig_dev = eig_dev.max(((a - b) / b).abs());
    }
    let oracle_ok = eig_dev < 1e-9;

    // 200-point sweep runtime on the n ∈ [32, 40] window
    let big = StarkBasis::new(na.clone(), Half(1), 32, 40).unwrap();
    let big_engine = StarkEngine::with_radial_engine(big, &radial).unwrap();
    let sweep: Vec<f64> = (0..200).map(|i| i as f64 * 0.05).collect();
    let t0 = Instant::now();
    let _big_map = big_engine.stark_map(&sweep).unwrap();
    let elapsed = t0.elapsed();
    let runtime_ok = elapsed.as_secs_f64() < 120.0;

    c.report(
        quad_ok && linear_ok && d_ok && exponent_ok && oracle_ok && runtime_ok,
        &format!(
            "quad residuals ok {quad_ok}, manifold R2 {r2:.6}, D ok {d_ok}, exponent {exponent:.3}, eigen dev {eig_dev:.1e}, 200-pt sweep {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_10_field_ionization_and_counting() {
    let c = Criterion {
        index: 10,
        name: "field ionization and counting",
    };
    let e_c = sfi_critical_field_for_neff(30.0);
    let field_ok = (e_c - 395.0).abs() < 1.0;

    let model = DetectionModel::default();
    let events = sfi_counting_sim(&vec![1u32; 20_000], &model, 77);
    let in_band = events
        .iter()
        .filter(|e| (350.0..=450.0).contains(&e.amplitude_mv))
        .count() as f64
        / events.len() as f64;
    let band_ok = in_band >= 0.95;

    let mut count_ok = true;
    for k in 1..=5u32 {
        count_ok &= classification_accuracy(&model, k, 20_000, 100 + k as u64) > 0.99;
    }
    c.report(
        field_ok && band_ok && count_ok,
        &format!(
            "E_c(30) = {e_c:.1} V/cm, singles band {:.1}%, counts 1-5 resolved",
            100.0 * in_band
        ),
    );
}

#[test]
fn criterion_11_lifetimes() {
    let c = Criterion {
        index: 11,
        name: "lifetimes with blackbody reduction",
    };
    let engine = RadialEngine::new(SpeciesData::sodium());
    let s30 = na_state(30, 0, 1);
    let p30 = na_state(30, 1, 1);

    let rad_s = lifetime(&engine, &s30, 0.0).unwrap().radiative_lifetime_s;
    let rad_p = lifetime(&engine, &p30, 0.0).unwrap().radiative_lifetime_s;
    let eff_s = lifetime(&engine, &s30, 300.0).unwrap().effective_lifetime_s;
    let eff_p = lifetime(&engine, &p30, 300.0).unwrap().effective_lifetime_s;

    let mut pts = Vec::new();
    for n in (25..=45).step_by(5) {
        let s = na_state(n, 0, 1);
        let tau = lifetime(&engine, &s, 0.0).unwrap().radiative_lifetime_s;
        pts.push((s.effective_n().unwrap().ln(), tau.ln()));
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let exponent = slope(&xs, &ys);

    let rad_s_ok = (15e-6..=45e-6).contains(&rad_s);
    let rad_p_ok = (150e-6..=450e-6).contains(&rad_p);
    let eff_s_ok = (10e-6..=30e-6).contains(&eff_s);
    // Known model limitation: the channel-resolved stimulated sum gives
    // ~50 μs here; the band derives from a classical L-independent estimate.
    // See the decisions ledger for the full analysis.
    let eff_p_ok = (15e-6..=45e-6).contains(&eff_p);
    let exp_ok = (exponent - 3.0).abs() <= 0.3;
    c.report(
        rad_s_ok && rad_p_ok && eff_s_ok && eff_p_ok && exp_ok,
        &format!(
            "radiative 30S {:.1} us / 30P {:.1} us; 300 K effective 30S {:.1} us / 30P {:.1} us; exponent {exponent:.2}",
            rad_s * 1e6,
            rad_p * 1e6,
            eff_s * 1e6,
            eff_p * 1e6
        ),
    );
}

fn sodium_beam_drive(kind: TransitionKind) -> (BeamConfig, rydsim::lineshape::DriveParameters) {
    let engine = RadialEngine::new(SpeciesData::sodium());
    let s37 = na_state(37, 0, 1);
    let p37 = na_state(37, 1, 1);
    let s38 = na_state(38, 0, 1);
    let tau = 2.8e-6;
    let d1 = engine.radial_matrix_element(&s37, &p37).unwrap() / 3.0 * ATOMIC_DIPOLE;
    let d2 = engine.radial_matrix_element(&p37, &s38).unwrap() / 3.0 * ATOMIC_DIPOLE;
    let delta = intermediate_detuning_rad_s(&s37, &p37, &s38).unwrap();
    match kind {
        TransitionKind::OnePhoton => {
            let e = field_for_one_photon_area(PI / 2.0, tau, d1).unwrap();
            let photon = transition_frequency_hz(&s37, &p37).unwrap();
            (
                BeamConfig::sodium_beam(photon, kind),
                drive_from_field(e, d1, d2, delta, tau).unwrap(),
            )
        }
        TransitionKind::TwoPhoton => {
            let e = field_for_two_photon_area(PI / 2.0, tau, d1, d2, delta).unwrap();
            let photon = transition_frequency_hz(&s37, &s38).unwrap() / 2.0;
            (
                BeamConfig::sodium_beam(photon, kind),
                drive_from_field(e, d1, d2, delta, tau).unwrap(),
            )
        }
    }
}

#[test]
fn criterion_12_beam_spectra_reproduction() {
    let c = Criterion {
        index: 12,
        name: "beam spectra, dip, and peak ordering",
    };
    // one-photon: suppressed peak and side-lobes under default noise
    let (cfg1, drive1) = sodium_beam_drive(TransitionKind::OnePhoton);
    let dets: Vec<f64> = (0..81)
        .map(|i| (i as f64 / 80.0 - 0.5) * 2.0 * 2.0 * PI * 800e3)
        .collect();
    let s1 =
        beam_monte_carlo(&cfg1, TransitionKind::OnePhoton, &drive1, &dets, 30_000, 11).unwrap();
    let peak1 = s1
        .transfer
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let analytic: Vec<f64> = dets
        .iter()
        .map(|&d| one_photon_population(drive1.omega1, d, cfg1.tau_s))
        .collect();
    // first side-lobe of the analytic curve
    let mid = dets.len() / 2;
    let zero = (mid..dets.len()).find(|&i| analytic[i] < 0.01).unwrap();
    let (mut lobe_idx, mut lobe) = (zero, 0.0);
    for i in zero..dets.len() {
        if analytic[i] > lobe {
            lobe = analytic[i];
            lobe_idx = i;
        }
    }
    let one_photon_ok = peak1 <= 0.85 && s1.transfer[lobe_idx] < 0.6 * lobe;

    // two-photon: robust peak under identical perturbation settings
    let (cfg2, drive2) = sodium_beam_drive(TransitionKind::TwoPhoton);
    let s2 = beam_monte_carlo(
        &cfg2,
        TransitionKind::TwoPhoton,
        &drive2,
        &[drive2.power_shift],
        30_000,
        11,
    )
    .unwrap();
    let two_photon_ok = s2.transfer[0] >= 0.85;

    // two-atom single-excitation dip at the center
    let dets2: Vec<f64> = (0..81)
        .map(|i| (i as f64 / 80.0 - 0.5) * 2.0 * 2.0 * PI * 500e3 + drive2.power_shift)
        .collect();
    let sb =
        beam_monte_carlo(&cfg2, TransitionKind::TwoPhoton, &drive2, &dets2, 30_000, 5).unwrap();
    let single_exc: Vec<f64> = sb.transfer.iter().map(|&r| 2.0 * r * (1.0 - r)).collect();
    let dip = dip_feature_check(&single_exc).unwrap();

    // full-excitation peak decreases with N
    let peak2 = sb
        .transfer
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let peaks: Vec<f64> = [1, 3, 5].iter().map(|&n| peak2.powi(n)).collect();
    let decreasing = peaks[0] > peaks[1] && peaks[1] > peaks[2];

    c.report(
        one_photon_ok && two_photon_ok && dip.dip_present && decreasing,
        &format!(
            "one-photon peak {peak1:.3} (lobe {:.3} vs analytic {lobe:.3}), two-photon {:.3}, dip center {:.3} < max {:.3}, N peaks {:.2}/{:.2}/{:.2}",
            s1.transfer[lobe_idx], s2.transfer[0], dip.center_value, dip.max_value, peaks[0], peaks[1], peaks[2]
        ),
    );
}

#[test]
fn criterion_13_feasibility_presets() {
    let c = Criterion {
        index: 13,
        name: "feasibility presets",
    };
    let optimal = feasibility_report(&ExperimentConfig::recommended()).unwrap();
    let all_pass = optimal.all_pass();
    let fast = feasibility_report(&ExperimentConfig::fast_n50()).unwrap();
    let power_fails = fast.entry("laser-power").unwrap().status == Status::Fail;
    let tight = feasibility_report(&ExperimentConfig::tight_lattice_n70()).unwrap();
    let collision_fails = tight.entry("collision-bound").unwrap().status == Status::Fail;
    c.report(
        all_pass && power_fails && collision_fails,
        &format!(
            "optimal all-pass {all_pass}; n=50/5ns laser-power {:?}; 0.5um/n=70 collision {:?}",
            fast.entry("laser-power").unwrap().status,
            tight.entry("collision-bound").unwrap().status
        ),
    );
}

#[test]
fn doppler_width_anchor() {
    // supports criterion 12's beam model: 600 m/s at 70 GHz = 140 kHz
    let w = doppler_width_hz(600.0, 70e9).unwrap();
    assert!((130e3..=160e3).contains(&w));
}
