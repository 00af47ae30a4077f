//! Conditional phase gate: π/2-excite both atoms, let the pair exchange for
//! half a period, de-excite with 3π/2 pulses. Only |11> picks up a π phase.
//!
//! Run with: cargo run --release --example phase_gate

use rydsim::pair::{exchange_period_s, pair_eigenstates, qpg_sequence, QpgConfig};
use rydsim::radial::RadialEngine;
use rydsim::species::{Half, SpeciesData};
use rydsim::state::RydbergState;

fn main() -> rydsim::Result<()> {
    let na = SpeciesData::sodium();
    let engine = RadialEngine::new(na.clone());
    let ns = RydbergState::stretched(na.clone(), 30, 0, Half(1))?;
    let np = RydbergState::stretched(na, 30, 1, Half(1))?;
    let r = 5e-6;

    let pair = pair_eigenstates(&engine, &ns, &np, r)?;
    let t = exchange_period_s(pair.v_dd_hz);
    println!(
        "{} + {} at 5 um: V_dd/h = {:.3} MHz, interaction window {:.0} ns",
        ns,
        np,
        pair.v_dd_hz / 1e6,
        t * 1e9
    );

    let cfg = QpgConfig::from_states(&engine, &ns, &np, r, t / 10.0)?;
    println!(
        "pulse duration {:.1} ns (one tenth of the window)\n",
        cfg.pulse_time_s * 1e9
    );
    println!("{:>6} {:>12} {:>12}", "input", "phase_rad", "leakage");
    for gate in qpg_sequence(&cfg)? {
        println!(
            "{:>6} {:>12.6} {:>12.3e}",
            gate.input, gate.acquired_phase_rad, gate.leakage
        );
    }

    println!("\ngate error against pulse sharpness:");
    for ratio in [3.0, 10.0, 30.0] {
        let cfg = QpgConfig::new(pair.v_dd_hz, t / ratio);
        let res = qpg_sequence(&cfg)?;
        let phase_err = (res[3].acquired_phase_rad.abs() - std::f64::consts::PI).abs();
        println!(
            "  window/pulse = {ratio:>4}: |phase - π| = {:.2e}, leakage = {:.2e}",
            phase_err, res[3].leakage
        );
    }
    Ok(())
}
