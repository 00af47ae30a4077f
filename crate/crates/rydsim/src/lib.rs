//! Rydberg-atom toolkit for quantum-gate feasibility studies and microwave
//! spectroscopy of small atomic ensembles.
//!
//! The crate provides, as plain library calls:
//!
//! - quantum-defect structure: level energies, scaling laws, Zeeman rates
//!   ([`state`], [`scaling`]);
//! - Coulomb-approximation radial wavefunctions, dipole matrix elements, and
//!   radiative/blackbody lifetimes ([`radial`], [`lifetime`]);
//! - Stark-map diagonalization and polarizabilities ([`stark`]);
//! - dipole-dipole pair dynamics, exchange oscillations, and a conditional
//!   phase-gate simulation ([`pair`]);
//! - one- and two-photon lineshapes and multi-atom excitation statistics
//!   ([`lineshape`], [`multiatom`]);
//! - a thermal-beam Monte Carlo with Doppler, standing-wave, and
//!   field-fluctuation effects ([`beam`]);
//! - a field-ionization detection model with atom-number sorting
//!   ([`detection`]);
//! - an experiment feasibility analyzer ([`feasibility`]).
//!
//! Every capability has a runnable demo under `examples/`, and the `rydsim`
//! binary exposes the same engines as subcommands with CSV/JSON output.

pub mod angular;
pub mod beam;
pub mod cli;
pub mod detection;
pub mod error;
pub mod feasibility;
pub mod lifetime;
pub mod lineshape;
pub mod multiatom;
pub mod pair;
pub mod radial;
pub mod scaling;
pub mod species;
pub mod stark;
pub mod state;
pub mod units;

pub use error::{Result, RydError};
pub use species::{Element, Half, Species, SpeciesData};
pub use state::RydbergState;
