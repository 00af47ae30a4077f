//! Why the gate needs a magnetic field: with both mJ = ±1/2 sublevels
//! degenerate, the quasi-molecule has three exchange levels and no
//! interaction time returns every sublevel configuration with a π phase.
//!
//! Run with: cargo run --release --example degenerate_sublevels

use rydsim::pair::{degenerate_exchange_structure, exchange_period_s};
use rydsim::radial::RadialEngine;
use rydsim::species::{Half, SpeciesData};
use rydsim::state::RydbergState;

fn main() -> rydsim::Result<()> {
    let na = SpeciesData::sodium();
    let engine = RadialEngine::new(na.clone());
    let s = RydbergState::stretched(na.clone(), 37, 0, Half(1))?;
    let p = RydbergState::stretched(na, 37, 1, Half(1))?;

    let deg = degenerate_exchange_structure(&engine, &s, &p, 5e-6)?;
    println!("exchange unit v0 = {:.4} MHz", deg.v0_hz / 1e6);
    println!(
        "distinct |level| magnitudes (units of v0): {:?}",
        deg.level_magnitudes_hz
            .iter()
            .map(|m| (m / deg.v0_hz * 100.0).round() / 100.0)
            .collect::<Vec<_>>()
    );
    println!(
        "m_total = 0 block eigenvalues (units of v0): {:?}",
        deg.m0_distinct_hz
            .iter()
            .map(|m| (m / deg.v0_hz * 100.0).round() / 100.0)
            .collect::<Vec<_>>()
    );

    // the stretched configuration still follows the two-level exchange
    let t = exchange_period_s(2.0 * deg.v0_hz);
    let amp = deg.return_amplitude(Half(1), Half(1), t);
    println!(
        "\nstretched |S+ P+> at one exchange period: amplitude {:.4} (clean π phase)",
        amp.re
    );
    let amp = deg.return_amplitude(Half(1), Half(-1), t);
    println!(
        "mixed |S+ P-> at the same time: amplitude {:.4} (no sign flip!)",
        amp.re
    );

    let scan = deg.scan(10.0 * t, 40_000);
    println!(
        "\nsearch over (0, 10T]: simultaneous return and π phase for all sublevels: {}",
        if scan.condition_met {
            "found (unexpected)"
        } else {
            "never achieved"
        }
    );
    println!(
        "closest attempt at t = {:.1} ns: min return {:.3}, worst phase error {:.2} rad",
        scan.best_time_s * 1e9,
        scan.best_min_return,
        scan.best_phase_error_rad
    );
    println!("an applied magnetic field must lift the degeneracy before gating.");
    Ok(())
}
