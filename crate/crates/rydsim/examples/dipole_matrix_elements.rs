//! Radial dipole matrix elements from Numerov integration on the sqrt(r)
//! grid, with the n² scaling of neighboring-state transitions.
//!
//! Run with: cargo run --release --example dipole_matrix_elements

use rydsim::radial::RadialEngine;
use rydsim::species::{Half, SpeciesData};
use rydsim::state::{transition_frequency_hz, RydbergState};

fn main() -> rydsim::Result<()> {
    let na = SpeciesData::sodium();
    let rb = SpeciesData::rubidium();
    let na_engine = RadialEngine::new(na.clone());
    let rb_engine = RadialEngine::new(rb.clone());

    println!("species,n1,L1,J1,n2,L2,J2,radial_au,frequency_GHz");
    let pairs = [
        (&na, &na_engine, 50u32, 0u32, 1i32, 50u32, 1u32, 1i32),
        (&rb, &rb_engine, 50, 0, 1, 50, 1, 1),
        (&na, &na_engine, 37, 0, 1, 37, 1, 1),
        (&na, &na_engine, 37, 1, 1, 38, 0, 1),
        (&na, &na_engine, 30, 0, 1, 30, 1, 1),
    ];
    for (sp, engine, n1, l1, j1, n2, l2, j2) in pairs {
        let a = RydbergState::stretched(sp.clone(), n1, l1, Half(j1))?;
        let b = RydbergState::stretched(sp.clone(), n2, l2, Half(j2))?;
        let radial = engine.radial_matrix_element(&a, &b)?;
        println!(
            "{},{},{},{},{},{},{},{:.1},{:.4}",
            sp.name(),
            n1,
            l1,
            Half(j1),
            n2,
            l2,
            Half(j2),
            radial,
            transition_frequency_hz(&a, &b)? / 1e9
        );
    }

    println!("\nd / n² for sodium nS -> nP (the n² law of neighboring states):");
    for n in (30..=60).step_by(10) {
        let s = RydbergState::stretched(na.clone(), n, 0, Half(1))?;
        let p = RydbergState::stretched(na.clone(), n, 1, Half(1))?;
        let d = na_engine.radial_matrix_element(&s, &p)?;
        println!(
            "  n={n}: {:.1} a.u., d/n² = {:.3}",
            d,
            d / (n as f64 * n as f64)
        );
    }
    Ok(())
}
