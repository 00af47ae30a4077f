//! Level energies and microwave transition frequencies from quantum defects.
//!
//! Run with: cargo run --release --example state_energies

use rydsim::species::{Half, SpeciesData};
use rydsim::state::{transition_frequency_hz, RydbergState};

fn main() -> rydsim::Result<()> {
    for species in [
        SpeciesData::hydrogen(),
        SpeciesData::sodium(),
        SpeciesData::rubidium(),
    ] {
        println!("== {} ==", species.name());
        for text in ["30S1/2", "37S1/2", "37P1/2", "50S1/2", "50P1/2"] {
            let s = RydbergState::parse(species.clone(), text, Half(1))?;
            println!(
                "  {:<8} n_eff = {:>7.3}   E = {:>10.3} GHz",
                s.label(),
                s.effective_n()?,
                s.energy_ghz()?
            );
        }
        let s50 = RydbergState::parse(species.clone(), "50S1/2", Half(1))?;
        let p50 = RydbergState::parse(species.clone(), "50P1/2", Half(1))?;
        println!(
            "  50S -> 50P microwave transition: {:.3} GHz",
            transition_frequency_hz(&s50, &p50)? / 1e9
        );
    }

    // two-photon ladder of the sodium beam experiment
    let na = SpeciesData::sodium();
    let s37 = RydbergState::parse(na.clone(), "37S1/2", Half(1))?;
    let p37 = RydbergState::parse(na.clone(), "37P1/2", Half(1))?;
    let s38 = RydbergState::parse(na, "38S1/2", Half(1))?;
    println!("\nsodium two-photon ladder:");
    println!(
        "  37S -> 37P: {:.4} GHz",
        transition_frequency_hz(&s37, &p37)? / 1e9
    );
    println!(
        "  37P -> 38S: {:.4} GHz",
        transition_frequency_hz(&p37, &s38)? / 1e9
    );
    println!(
        "  photon at half the 37S -> 38S splitting: {:.4} GHz",
        transition_frequency_hz(&s37, &s38)? / 2e9
    );
    Ok(())
}
