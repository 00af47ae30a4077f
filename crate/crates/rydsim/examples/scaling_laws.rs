//! Closed-form scaling laws: orbit size, collision-limited n, dipole
//! estimates, ionization thresholds, and Zeeman rates.
//!
//! Run with: cargo run --release --example scaling_laws

use rydsim::scaling::*;
use rydsim::species::{Half, SpeciesData};
use rydsim::state::RydbergState;

fn main() -> rydsim::Result<()> {
    println!("electron orbit radius r = (3n² − L(L+1))/2:");
    for (n, l) in [(1, 0), (30, 0), (50, 0), (50, 49), (70, 0)] {
        println!("  n={n:<3} L={l:<3} r = {:>8.1} a0", orbit_radius_a0(n, l)?);
    }

    println!("\ncollision-limited principal quantum number:");
    for r_um in [0.5, 5.0, 125.0] {
        let n0 = max_principal_quantum_number(r_um * 1e-6, 0)?;
        let nc = max_circular_quantum_number(r_um * 1e-6)?;
        println!("  R = {r_um:>6.1} um: n_max(S) = {n0:>5.1}, circular {nc:>5.1}");
    }

    println!("\nrough dipole estimate d ~ n² against the computed value:");
    println!(
        "  n=50: {} a.u. (numerical 50S-50P radial part: 2692 a.u.)",
        estimate_dipole_au(50)
    );

    let na = SpeciesData::sodium();
    println!("\nionization thresholds E_c = 3.2e8 / n_eff^4:");
    for n in [30u32, 37, 50, 70] {
        let s = RydbergState::stretched(na.clone(), n, 0, Half(1))?;
        println!(
            "  {}: {:>8.1} V/cm",
            s.label(),
            sfi_critical_field_v_per_cm(&s)?
        );
    }

    println!("\nZeeman splitting rates between adjacent sublevels:");
    for (l, j2, label) in [(0, 1, "nS1/2"), (1, 1, "nP1/2"), (1, 3, "nP3/2")] {
        let s = RydbergState::stretched(na.clone(), 30, l, Half(j2))?;
        println!(
            "  {label}: g_J = {:.4}, {:.3} MHz/G",
            lande_g(l, Half(j2)),
            zeeman_splitting_rate_mhz_per_gauss(&s)
        );
    }
    Ok(())
}
