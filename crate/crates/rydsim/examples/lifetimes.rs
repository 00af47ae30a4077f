//! Radiative lifetimes and their blackbody reduction, with the dominant
//! decay channels.
//!
//! Run with: cargo run --release --example lifetimes

use rydsim::lifetime::lifetime;
use rydsim::radial::RadialEngine;
use rydsim::species::{Half, SpeciesData};
use rydsim::state::RydbergState;

fn main() -> rydsim::Result<()> {
    let na = SpeciesData::sodium();
    let engine = RadialEngine::new(na.clone());

    for (n, l, temp) in [(30, 0, 300.0), (30, 1, 300.0), (37, 0, 77.0), (37, 1, 77.0)] {
        let j = Half(2 * l as i32 - 1).max(Half(1));
        let s = RydbergState::stretched(na.clone(), n, l, j)?;
        let res = lifetime(&engine, &s, temp)?;
        println!(
            "{}: radiative {:.1} us, effective {:.1} us at {} K (thermal rate {:.2e}/s)",
            res.state,
            res.radiative_lifetime_s * 1e6,
            res.effective_lifetime_s * 1e6,
            temp,
            res.bbr_rate_hz
        );
        for ch in res.dominant_decay_channels.iter().take(4) {
            println!(
                "    -> {:<7} {:.3e}/s{}",
                ch.to,
                ch.rate_hz,
                if ch.stimulated {
                    "  (thermal photons)"
                } else {
                    ""
                }
            );
        }
    }

    println!("\nradiative lifetime scaling of sodium nS states:");
    for n in (25..=45).step_by(5) {
        let s = RydbergState::stretched(na.clone(), n, 0, Half(1))?;
        let tau = lifetime(&engine, &s, 0.0)?.radiative_lifetime_s;
        println!(
            "  {}: {:>7.1} us  (tau/n_eff³ = {:.3} ns)",
            s.label(),
            tau * 1e6,
            tau * 1e9 / s.effective_n()?.powi(3)
        );
    }
    Ok(())
}
