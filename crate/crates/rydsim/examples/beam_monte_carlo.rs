//! Thermal-beam Monte Carlo: Doppler shifts, standing-wave wash-out, and
//! field fluctuations distort the one-photon line while the two-photon line
//! stays close to theory.
//!
//! Run with: cargo run --release --example beam_monte_carlo

use rydsim::beam::*;
use rydsim::lineshape::*;
use rydsim::radial::RadialEngine;
use rydsim::species::{Half, SpeciesData};
use rydsim::state::{transition_frequency_hz, RydbergState};
use rydsim::units::ATOMIC_DIPOLE;
use std::f64::consts::PI;

fn main() -> rydsim::Result<()> {
    let na = SpeciesData::sodium();
    let engine = RadialEngine::new(na.clone());
    let s37 = RydbergState::stretched(na.clone(), 37, 0, Half(1))?;
    let p37 = RydbergState::stretched(na.clone(), 37, 1, Half(1))?;
    let s38 = RydbergState::stretched(na, 38, 0, Half(1))?;
    let tau = 2.8e-6;
    let d1 = engine.radial_matrix_element(&s37, &p37)? / 3.0 * ATOMIC_DIPOLE;
    let d2 = engine.radial_matrix_element(&p37, &s38)? / 3.0 * ATOMIC_DIPOLE;
    let delta = intermediate_detuning_rad_s(&s37, &p37, &s38)?;

    let f1 = transition_frequency_hz(&s37, &p37)?;
    println!(
        "beam at 600 m/s: one-photon Doppler spread {:.0} kHz at {:.1} GHz",
        doppler_width_hz(600.0, f1)? / 1e3,
        f1 / 1e9
    );

    // one-photon: tuned for inversion, then averaged over the beam
    let e1 = field_for_one_photon_area(PI / 2.0, tau, d1)?;
    let drive1 = drive_from_field(e1, d1, d2, delta, tau)?;
    let cfg1 = BeamConfig::sodium_beam(f1, TransitionKind::OnePhoton);
    let dets: Vec<f64> = (-20..=20).map(|i| i as f64 * 2.0 * PI * 30e3).collect();
    let s1 = beam_monte_carlo(&cfg1, TransitionKind::OnePhoton, &drive1, &dets, 20_000, 1)?;

    // two-photon under the same beam
    let e2 = field_for_two_photon_area(PI / 2.0, tau, d1, d2, delta)?;
    let drive2 = drive_from_field(e2, d1, d2, delta, tau)?;
    let f2 = transition_frequency_hz(&s37, &s38)? / 2.0;
    let cfg2 = BeamConfig::sodium_beam(f2, TransitionKind::TwoPhoton);
    let dets2: Vec<f64> = dets.iter().map(|d| d + drive2.power_shift).collect();
    let s2 = beam_monte_carlo(&cfg2, TransitionKind::TwoPhoton, &drive2, &dets2, 20_000, 1)?;

    println!(
        "\n{:>10} {:>11} {:>11} {:>11}",
        "det_kHz", "1ph theory", "1ph beam", "2ph beam"
    );
    for i in (0..dets.len()).step_by(4) {
        println!(
            "{:>10.0} {:>11.3} {:>11.3} {:>11.3}",
            dets[i] / (2.0 * PI * 1e3),
            one_photon_population(drive1.omega1, dets[i], tau),
            s1.transfer[i],
            s2.transfer[i]
        );
    }
    let peak1 = s1
        .transfer
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let peak2 = s2
        .transfer
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    println!("\npeak transfer: one-photon {peak1:.3} (washed out), two-photon {peak2:.3}");
    Ok(())
}
