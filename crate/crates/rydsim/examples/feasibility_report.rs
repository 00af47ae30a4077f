//! Experimental-limitations budget for three lattice configurations.
//!
//! Run with: cargo run --release --example feasibility_report

use rydsim::feasibility::{feasibility_report, ExperimentConfig};

fn main() -> rydsim::Result<()> {
    for (name, cfg) in [
        (
            "recommended operating point",
            ExperimentConfig::recommended(),
        ),
        (
            "fast gate at n = 50 with 5 ns pulses",
            ExperimentConfig::fast_n50(),
        ),
        (
            "tight 0.5 um lattice pushed to n = 70",
            ExperimentConfig::tight_lattice_n70(),
        ),
    ] {
        println!("--- {name} ---");
        let report = feasibility_report(&cfg)?;
        print!("{report}");
        println!(
            "verdict: {}\n",
            if report.all_pass() {
                "workable"
            } else {
                "not workable as specified"
            }
        );
    }
    Ok(())
}
