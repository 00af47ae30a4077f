//! Resonant dipole-dipole exchange of an nS-nP pair: the symmetric and
//! antisymmetric pair states, the oscillation period, and a time trace.
//!
//! Run with: cargo run --release --example exchange_oscillation

use rydsim::pair::{blockade_condition, exchange_amplitudes, exchange_period_s, pair_eigenstates};
use rydsim::radial::RadialEngine;
use rydsim::species::{Half, SpeciesData};
use rydsim::state::RydbergState;

fn main() -> rydsim::Result<()> {
    let na = SpeciesData::sodium();
    let engine = RadialEngine::new(na.clone());
    let s50 = RydbergState::stretched(na.clone(), 50, 0, Half(1))?;
    let p50 = RydbergState::stretched(na, 50, 1, Half(1))?;

    for r_um in [5.0, 10.0] {
        let pair = pair_eigenstates(&engine, &s50, &p50, r_um * 1e-6)?;
        let t = exchange_period_s(pair.v_dd_hz);
        println!(
            "R = {r_um} um: |d_z| = {:.1} a.u., V_dd/h = {:.3} MHz, |+>/|-> split {:.3} MHz, return time {:.1} ns",
            pair.d_z_au.abs(),
            pair.v_dd_hz / 1e6,
            2.0 * pair.v_dd_hz / 1e6,
            t * 1e9
        );
    }

    let pair = pair_eigenstates(&engine, &s50, &p50, 5e-6)?;
    let t_ret = exchange_period_s(pair.v_dd_hz);
    println!(
        "\npopulation exchange at R = 5 um (one full return takes {:.1} ns):",
        t_ret * 1e9
    );
    println!("{:>8} {:>8} {:>8}", "t_ns", "p12", "p21");
    for i in 0..=10 {
        let t = t_ret * i as f64 / 10.0;
        let (c12, c21) = exchange_amplitudes(pair.v_dd_hz, t);
        println!(
            "{:>8.1} {:>8.4} {:>8.4}",
            t * 1e9,
            c12.norm_sqr(),
            c21.norm_sqr()
        );
    }
    let (c12, _) = exchange_amplitudes(pair.v_dd_hz, t_ret);
    println!(
        "amplitude at the return time: {:.4} (sign flip = π phase)",
        c12.re
    );

    let block = blockade_condition(pair.v_dd_hz, 5e-6, 10.0)?;
    println!(
        "\nblockade figure of merit for a 5 us pulse: (V_dd/h)·τ = {:.0} (needs >> 1): {}",
        block.ratio,
        if block.satisfied {
            "satisfied"
        } else {
            "not satisfied"
        }
    );
    Ok(())
}
