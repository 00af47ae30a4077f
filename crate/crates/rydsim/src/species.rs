//! Atomic species data: quantum defects, masses, and per-species limits.
//!
//! Built-in tables ship for hydrogen, sodium, and rubidium. Additional or
//! overriding defect values can be loaded from a plain-text file (see
//! [`SpeciesData::apply_defect_file`]).

use crate::error::{Result, RydError};
use crate::units::AMU;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

/// Half-integer angular momentum stored as twice its value (J = 3/2 ↔ `Half(3)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Half(pub i32);

impl Half {
    pub fn from_twice(twice: i32) -> Self {
        Half(twice)
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn twice(self) -> i32 {
        self.0
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Orbital letter for small L, falling back to a number.
pub fn l_letter(l: u32) -> String {
    match l {
        0 => "S".into(),
        1 => "P".into(),
        2 => "D".into(),
        3 => "F".into(),
        4 => "G".into(),
        _ => format!("L{l}"),
    }
}

pub fn l_from_letter(s: &str) -> Option<u32> {
    match s.to_ascii_uppercase().as_str() {
        "S" => Some(0),
        "P" => Some(1),
        "D" => Some(2),
        "F" => Some(3),
        "G" => Some(4),
        other => other.strip_prefix('L').and_then(|n| n.parse().ok()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Element {
    H,
    Na,
    Rb,
}

impl Element {
    pub fn name(self) -> &'static str {
        match self {
            Element::H => "H",
            Element::Na => "Na",
            Element::Rb => "Rb",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "h" | "hydrogen" => Ok(Element::H),
            "na" | "sodium" => Ok(Element::Na),
            "rb" | "rubidium" => Ok(Element::Rb),
            other => Err(RydError::Config(format!("unknown species '{other}'"))),
        }
    }
}

/// Quantum-defect table keyed by (L, 2J). Lookups for L beyond the table are 0.
#[derive(Debug, Clone, Default)]
pub struct QuantumDefects {
    table: HashMap<(u32, i32), f64>,
    /// Highest L with a tabulated (nonzero) defect.
    max_l: u32,
}

impl QuantumDefects {
    pub fn insert(&mut self, l: u32, j: Half, delta: f64) {
        self.table.insert((l, j.twice()), delta);
        if delta != 0.0 {
            self.max_l = self.max_l.max(l);
        }
    }

    /// Defect δ(L, J). States with L above the tabulated range are treated as
    /// hydrogenic (δ = 0).
    pub fn get(&self, l: u32, j: Half) -> Result<f64> {
        if let Some(d) = self.table.get(&(l, j.twice())) {
            return Ok(*d);
        }
        if self.table.is_empty() || l > self.max_l {
            return Ok(0.0);
        }
        Err(RydError::Config(format!(
            "no quantum defect tabulated for L={l} J={j}"
        )))
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Everything the engines need to know about one atomic species.
#[derive(Debug, Clone)]
pub struct SpeciesData {
    pub element: Element,
    pub mass_kg: f64,
    pub defects: QuantumDefects,
    /// Fine-structure interval of the 50P state (MHz), used by the
    /// spectral-resolution budget entry.
    pub fs_interval_50p_mhz: f64,
    /// Lowest principal quantum number with a valid defect model, per L.
    /// Entries beyond the list fall back to n = L + 1.
    min_n_by_l: Vec<u32>,
}

pub type Species = Arc<SpeciesData>;

impl PartialEq for SpeciesData {
    fn eq(&self, other: &Self) -> bool {
        self.element == other.element
    }
}

impl SpeciesData {
    pub fn name(&self) -> &'static str {
        self.element.name()
    }

    pub fn defect(&self, l: u32, j: Half) -> Result<f64> {
        self.defects.get(l, j)
    }

    /// Lowest n for which the single-channel defect model is meaningful.
    pub fn min_n(&self, l: u32) -> u32 {
        self.min_n_by_l
            .get(l as usize)
            .copied()
            .unwrap_or(l + 1)
            .max(l + 1)
    }

    pub fn hydrogen() -> Species {
        Arc::new(SpeciesData {
            element: Element::H,
            mass_kg: 1.00782503207 * AMU,
            defects: QuantumDefects::default(),
            fs_interval_50p_mhz: 0.0,
            min_n_by_l: vec![],
        })
    }

    pub fn sodium() -> Species {
        let mut defects = QuantumDefects::default();
        defects.insert(0, Half(1), 1.348);
        defects.insert(1, Half(1), 0.855);
        defects.insert(1, Half(3), 0.855);
        defects.insert(2, Half(3), 0.015);
        defects.insert(2, Half(5), 0.015);
        Arc::new(SpeciesData {
            element: Element::Na,
            mass_kg: 22.98976928 * AMU,
            defects,
            fs_interval_50p_mhz: 45.0,
            min_n_by_l: vec![3, 3, 3],
        })
    }

    pub fn rubidium() -> Species {
        let mut defects = QuantumDefects::default();
        defects.insert(0, Half(1), 3.131);
        defects.insert(1, Half(1), 2.654);
        defects.insert(1, Half(3), 2.641);
        defects.insert(2, Half(3), 1.347);
        defects.insert(2, Half(5), 1.347);
        Arc::new(SpeciesData {
            element: Element::Rb,
            mass_kg: 86.909180527 * AMU,
            defects,
            fs_interval_50p_mhz: 819.0,
            min_n_by_l: vec![5, 5, 4],
        })
    }

    pub fn by_element(element: Element) -> Species {
        match element {
            Element::H => Self::hydrogen(),
            Element::Na => Self::sodium(),
            Element::Rb => Self::rubidium(),
        }
    }

    pub fn parse(name: &str) -> Result<Species> {
        Ok(Self::by_element(Element::parse(name)?))
    }

    /// Apply defect overrides from a plain-text file.
    ///
    /// Each data line reads `<element> <L letter or number> <J> <defect>`,
    /// e.g. `Na P 3/2 0.8546`. Lines starting with `#` are comments. A line
    /// `mass <element> <kg>` overrides the mass. Returns the updated species
    /// for `self.element`; entries for other elements are ignored.
    pub fn apply_defect_file(&self, path: &Path) -> Result<SpeciesData> {
        let text = std::fs::read_to_string(path)?;
        let mut out = self.clone();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| {
                RydError::Config(format!("defect file line {}: {msg}: '{raw}'", lineno + 1))
            };
            if fields[0].eq_ignore_ascii_case("mass") {
                if fields.len() != 3 {
                    return Err(bad("expected 'mass <element> <kg>'"));
                }
                if Element::parse(fields[1])? == self.element {
                    out.mass_kg = fields[2].parse().map_err(|_| bad("bad mass"))?;
                }
                continue;
            }
            if fields.len() != 4 {
                return Err(bad("expected '<element> <L> <J> <defect>'"));
            }
            if Element::parse(fields[0])? != self.element {
                continue;
            }
            let l = l_from_letter(fields[1]).ok_or_else(|| bad("bad L"))?;
            let j = parse_half(fields[2]).ok_or_else(|| bad("bad J"))?;
            let delta: f64 = fields[3].parse().map_err(|_| bad("bad defect"))?;
            if delta < 0.0 {
                return Err(bad("defect must be non-negative"));
            }
            out.defects.insert(l, j, delta);
        }
        Ok(out)
    }
}

/// Parse "1/2", "3/2", or an integer into a half-integer.
pub fn parse_half(s: &str) -> Option<Half> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: i32 = num.trim().parse().ok()?;
        let den: i32 = den.trim().parse().ok()?;
        if den == 2 {
            return Some(Half(num));
        }
        if den == 1 {
            return Some(Half(2 * num));
        }
        return None;
    }
    let whole: i32 = s.parse().ok()?;
    Some(Half(2 * whole))
}
