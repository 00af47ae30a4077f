//! Rydberg-state bookkeeping: quantum numbers, effective quantum number,
//! and level energies from the quantum-defect formula.

use crate::error::{Result, RydError};
use crate::species::{l_from_letter, l_letter, parse_half, Half, Species};
use crate::units::RYDBERG_FREQUENCY;
use std::fmt;

/// A fine-structure Rydberg state |n L J mJ⟩ of one species.
#[derive(Debug, Clone)]
pub struct RydbergState {
    pub species: Species,
    pub n: u32,
    pub l: u32,
    pub j: Half,
    pub mj: Half,
}

impl PartialEq for RydbergState {
    fn eq(&self, other: &Self) -> bool {
        self.species.element == other.species.element && self.key() == other.key()
    }
}

impl fmt::Display for RydbergState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}{}{}",
            self.species.name(),
            self.n,
            l_letter(self.l),
            self.j
        )
    }
}

/// Species-independent identity, usable as a cache key.
pub type StateKey = (u32, u32, i32, i32);

impl RydbergState {
    pub fn new(species: Species, n: u32, l: u32, j: Half, mj: Half) -> Result<Self> {
        if n == 0 || l >= n {
            return Err(RydError::Domain(format!(
                "require 0 <= L < n, got n={n} L={l}"
            )));
        }
        let dl = j.twice() - 2 * l as i32;
        if dl.abs() != 1 || j.twice() <= 0 {
            return Err(RydError::Domain(format!(
                "J must equal L ± 1/2, got L={l} J={j}"
            )));
        }
        if mj.twice().abs() > j.twice() || (mj.twice() - j.twice()) % 2 != 0 {
            return Err(RydError::Domain(format!(
                "|mJ| <= J violated: J={j} mJ={mj}"
            )));
        }
        let state = Self {
            species,
            n,
            l,
            j,
            mj,
        };
        // fail early if the defect table has no entry
        state.effective_n()?;
        Ok(state)
    }

    /// Convenience constructor with mJ defaulting to +1/2.
    pub fn stretched(species: Species, n: u32, l: u32, j: Half) -> Result<Self> {
        Self::new(species, n, l, j, Half(1))
    }

    pub fn key(&self) -> StateKey {
        (self.n, self.l, self.j.twice(), self.mj.twice())
    }

    /// Identity ignoring mJ, used for radial caches.
    pub fn level_key(&self) -> (u32, u32, i32) {
        (self.n, self.l, self.j.twice())
    }

    pub fn with_mj(&self, mj: Half) -> Result<Self> {
        Self::new(self.species.clone(), self.n, self.l, self.j, mj)
    }

    /// Effective quantum number n* = n − δ(L, J).
    pub fn effective_n(&self) -> Result<f64> {
        let delta = self.species.defect(self.l, self.j)?;
        let neff = self.n as f64 - delta;
        if neff <= 0.0 {
            return Err(RydError::Domain(format!("n_eff = {neff} <= 0 for {self}")));
        }
        Ok(neff)
    }

    /// Level energy as a frequency E/h in Hz, negative below the ionization limit.
    pub fn energy_hz(&self) -> Result<f64> {
        let neff = self.effective_n()?;
        Ok(-RYDBERG_FREQUENCY / (neff * neff))
    }

    /// Level energy in GHz relative to the ionization limit.
    pub fn energy_ghz(&self) -> Result<f64> {
        Ok(self.energy_hz()? / 1e9)
    }

    /// Binding energy in atomic units: E = −1/(2 n*²). Used by the radial solver.
    pub fn energy_au(&self) -> Result<f64> {
        let neff = self.effective_n()?;
        Ok(-0.5 / (neff * neff))
    }

    /// Parse `"37S1/2"` (J optional, defaults to L + 1/2; L letter case-insensitive).
    pub fn parse(species: Species, text: &str, mj: Half) -> Result<Self> {
        let text = text.trim();
        let digits_end = text
            .find(|c: char| !c.is_ascii_digit())
            .ok_or_else(|| RydError::Config(format!("missing L letter in state '{text}'")))?;
        let n: u32 = text[..digits_end]
            .parse()
            .map_err(|_| RydError::Config(format!("bad principal quantum number in '{text}'")))?;
        let rest = &text[digits_end..];
        let letter_len = if rest.to_ascii_uppercase().starts_with('L') {
            rest.find(|c: char| !c.is_ascii_alphanumeric())
                .unwrap_or(rest.len())
        } else {
            1
        };
        let (letter, jtext) = rest.split_at(letter_len.min(rest.len()));
        let l = l_from_letter(letter).ok_or_else(|| {
            RydError::Config(format!("bad orbital letter '{letter}' in '{text}'"))
        })?;
        let j = if jtext.is_empty() {
            Half(2 * l as i32 + 1)
        } else {
            parse_half(jtext)
                .ok_or_else(|| RydError::Config(format!("bad J '{jtext}' in '{text}'")))?
        };
        Self::new(species, n, l, j, mj)
    }

    /// Short label like `37S1/2` without the species prefix.
    pub fn label(&self) -> String {
        format!("{}{}{}", self.n, l_letter(self.l), self.j)
    }
}

/// Transition frequency |E1 − E2|/h in Hz.
pub fn transition_frequency_hz(a: &RydbergState, b: &RydbergState) -> Result<f64> {
    Ok((a.energy_hz()? - b.energy_hz()?).abs())
}
