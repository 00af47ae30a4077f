//! One- and two-photon microwave lineshapes for square pulses, the inversion
//! conditions, and the photon density needed to drive them.
//!
//! Run with: cargo run --release --example microwave_lineshapes

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
    println!(
        "ladder dipoles (with the 1/3 angular factor): d1 = {:.1} a.u., d2 = {:.1} a.u.",
        d1 / ATOMIC_DIPOLE,
        d2 / ATOMIC_DIPOLE
    );
    println!(
        "virtual level sits {:.0} MHz below the real 37P",
        delta / (2.0 * PI * 1e6)
    );

    // field amplitudes for inversion in τ = 2.8 μs
    let e1 = field_for_one_photon_area(PI / 2.0, tau, d1)?;
    let e2 = field_for_two_photon_area(PI / 2.0, tau, d1, d2, delta)?;
    println!("\ninversion fields for a {:.1} us pulse:", tau * 1e6);
    println!("  one-photon: E = {e1:.4} V/m");
    println!("  two-photon: E = {e2:.4} V/m");

    let f1 = transition_frequency_hz(&s37, &p37)?;
    let f2 = transition_frequency_hz(&s37, &s38)? / 2.0;
    let n1 = photon_density_per_cm3(e1, 2.0 * PI * f1)?;
    let n2 = photon_density_per_cm3(e2, 2.0 * PI * f2)?;
    println!("\nphoton densities at those drive strengths:");
    println!("  one-photon: {n1:.0} photons/cm³ (a nearly empty field!)");
    println!("  two-photon: {n2:.2e} photons/cm³");

    // lineshapes around resonance
    let drive = drive_from_field(e2, d1, d2, delta, tau)?;
    println!(
        "\ntwo-photon line is displaced by the power shift {:.2} kHz:",
        drive.power_shift / (2.0 * PI * 1e3)
    );
    println!(
        "{:>12} {:>12} {:>12}",
        "det_kHz", "one-photon", "two-photon"
    );
    let drive1 = drive_from_field(e1, d1, d2, delta, tau)?;
    for i in -5..=5 {
        let det = i as f64 * 2.0 * PI * 50e3;
        println!(
            "{:>12.0} {:>12.4} {:>12.4}",
            det / (2.0 * PI * 1e3),
            one_photon_population(drive1.omega1, det, tau),
            two_photon_population(drive.omega2, det, drive.power_shift, tau)
        );
    }
    Ok(())
}
