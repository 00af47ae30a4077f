//! Stark Hamiltonian assembly and diagonalization.
//!
//! The quantization axis lies along the electric field, so only π couplings
//! enter and mJ is conserved: a basis holds every (n, L, J) with a fixed mJ
//! inside an n window. Energies are carried in GHz relative to the ionization
//! limit; adiabatic curves are tracked through avoided crossings by maximum
//! eigenvector overlap between adjacent field steps.

use crate::angular::angular_factor_z;
use crate::error::{Result, RydError};
use crate::radial::RadialEngine;
use crate::species::{Half, Species};
use crate::state::RydbergState;
use crate::units::{ATOMIC_FIELD, HARTREE, PLANCK};
use nalgebra::DMatrix;
use rayon::prelude::*;

/// GHz energy shift per (V/cm of field × a.u. of dipole element).
fn ghz_per_vcm_au() -> f64 {
    100.0 / ATOMIC_FIELD * (HARTREE / PLANCK) / 1e9
}

/// Fixed-mJ basis of fine-structure states, sorted by zero-field energy.
#[derive(Debug, Clone)]
pub struct StarkBasis {
    pub species: Species,
    pub mj: Half,
    pub states: Vec<RydbergState>,
}

impl StarkBasis {
    /// All states with n ∈ [n_min, n_max], every L < n, every J ≥ |mJ|.
    pub fn new(species: Species, mj: Half, n_min: u32, n_max: u32) -> Result<Self> {
        if n_min == 0 || n_max < n_min {
            return Err(RydError::Config(format!(
                "bad basis window [{n_min}, {n_max}]"
            )));
        }
        let mut states = Vec::new();
        for n in n_min..=n_max {
            for l in 0..n {
                for j2 in [2 * l as i32 - 1, 2 * l as i32 + 1] {
                    if j2 <= 0 || j2 < mj.twice().abs() {
                        continue;
                    }
                    states.push(RydbergState::new(species.clone(), n, l, Half(j2), mj)?);
                }
            }
        }
        Self::from_states(species, mj, states)
    }

    /// Build from an explicit state list (sorted internally by energy).
    pub fn from_states(species: Species, mj: Half, mut states: Vec<RydbergState>) -> Result<Self> {
        if states.is_empty() {
            return Err(RydError::Config("empty Stark basis".into()));
        }
        for s in &states {
            if s.mj != mj {
                return Err(RydError::Config(format!("state {s} has mJ ≠ {mj}")));
            }
        }
        let mut keyed: Vec<(f64, RydbergState)> = states
            .drain(..)
            .map(|s| Ok((s.energy_ghz()?, s)))
            .collect::<Result<_>>()?;
        keyed.sort_by(|a, b| {
            a.0.total_cmp(&b.0)
                .then(a.1.l.cmp(&b.1.l))
                .then(a.1.j.twice().cmp(&b.1.j.twice()))
        });
        Ok(Self {
            species,
            mj,
            states: keyed.into_iter().map(|(_, s)| s).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, n: u32, l: u32, j: Half) -> Option<usize> {
        self.states
            .iter()
            .position(|s| s.n == n && s.l == l && s.j == j)
    }
}

/// Adiabatically ordered eigenvalue curves over a field sweep.
#[derive(Debug, Clone)]
pub struct StarkMap {
    pub fields_v_per_cm: Vec<f64>,
    /// `curves[c][k]`: energy (GHz) of adiabatic curve c at field k.
    pub curves: Vec<Vec<f64>>,
    /// Zero-field state label of each curve.
    pub labels: Vec<String>,
}

impl StarkMap {
    pub fn curve(&self, index: usize) -> &[f64] {
        &self.curves[index]
    }
}

/// Precomputed couplings of one basis, reusable across fields and sweeps.
pub struct StarkEngine {
    pub basis: StarkBasis,
    diagonal_ghz: Vec<f64>,
    /// (i, j, GHz per V/cm) for i < j with ΔL = ±1.
    couplings: Vec<(usize, usize, f64)>,
}

impl StarkEngine {
    pub fn new(basis: StarkBasis) -> Result<Self> {
        let engine = RadialEngine::new(basis.species.clone());
        Self::with_radial_engine(basis, &engine)
    }

    pub fn with_radial_engine(basis: StarkBasis, radial: &RadialEngine) -> Result<Self> {
        let n = basis.len();
        let mut diagonal_ghz = Vec::with_capacity(n);
        for s in &basis.states {
            diagonal_ghz.push(s.energy_ghz()?);
        }
        let scale = ghz_per_vcm_au();
        let mut couplings = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (&basis.states[i], &basis.states[j]);
                if (a.l as i32 - b.l as i32).abs() != 1 {
                    continue;
                }
                let ang = angular_factor_z(a, b);
                if ang == 0.0 {
                    continue;
                }
                let radial = radial.radial_matrix_element(a, b)?;
                couplings.push((i, j, radial * ang * scale));
            }
        }
        Ok(Self {
            basis,
            diagonal_ghz,
            couplings,
        })
    }

    /// Symmetric Hamiltonian in GHz at the given field.
    pub fn hamiltonian(&self, field_v_per_cm: f64) -> DMatrix<f64> {
        let n = self.basis.len();
        let mut h = DMatrix::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = self.diagonal_ghz[i];
        }
        for &(i, j, c) in &self.couplings {
            let v = c * field_v_per_cm;
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
        h
    }

    /// Diagonalize over an ascending field list starting at zero, with
    /// adiabatic continuity ordering of the curves.
    pub fn stark_map(&self, fields: &[f64]) -> Result<StarkMap> {
        if fields.is_empty() || fields[0] != 0.0 {
            return Err(RydError::Config("field sweep must start at 0".into()));
        }
        if fields.windows(2).any(|w| w[1] <= w[0]) {
            return Err(RydError::Config("fields must be strictly ascending".into()));
        }
        let n = self.basis.len();
        let nf = fields.len();
        let mut curves = vec![vec![0.0; nf]; n];
        for (c, curve) in curves.iter_mut().enumerate() {
            curve[0] = self.diagonal_ghz[c];
        }
        // curve c currently occupies eigenvector column perm[c]
        let mut prev_vecs = DMatrix::<f64>::identity(n, n);

        const CHUNK: usize = 8;
        let mut k = 1;
        while k < nf {
            let hi = (k + CHUNK).min(nf);
            let solved: Vec<(Vec<f64>, DMatrix<f64>)> = fields[k..hi]
                .par_iter()
                .map(|&f| {
                    let eig = self.hamiltonian(f).symmetric_eigen();
                    (eig.eigenvalues.as_slice().to_vec(), eig.eigenvectors)
                })
                .collect();
            for (vals, vecs) in solved {
                if vals.iter().any(|v| !v.is_finite()) {
                    return Err(RydError::Numerical(format!(
                        "eigensolver failure at field {}",
                        fields[k]
                    )));
                }
                let overlap = prev_vecs.transpose() * &vecs;
                let perm = assign_by_overlap(&overlap);
                let mut ordered_vecs = DMatrix::zeros(n, n);
                for c in 0..n {
                    curves[c][k] = vals[perm[c]];
                    ordered_vecs.set_column(c, &vecs.column(perm[c]));
                }
                prev_vecs = ordered_vecs;
                k += 1;
            }
        }
        Ok(StarkMap {
            fields_v_per_cm: fields.to_vec(),
            curves,
            labels: self.basis.states.iter().map(|s| s.label()).collect(),
        })
    }

    /// Adiabatic energy gap |E_a − E_b| between two zero-field states along a
    /// sweep to `field`, sampled at `steps` points. Returns the gap at each
    /// sampled field.
    pub fn adiabatic_gap_curve(
        &self,
        a: (u32, u32, Half),
        b: (u32, u32, Half),
        field_v_per_cm: f64,
        steps: usize,
    ) -> Result<Vec<f64>> {
        let ia = self
            .basis
            .index_of(a.0, a.1, a.2)
            .ok_or_else(|| RydError::Config("state a not in basis".into()))?;
        let ib = self
            .basis
            .index_of(b.0, b.1, b.2)
            .ok_or_else(|| RydError::Config("state b not in basis".into()))?;
        if ia == ib {
            return Ok(vec![0.0; steps.max(2)]);
        }
        let fields: Vec<f64> = (0..steps.max(2))
            .map(|i| field_v_per_cm * i as f64 / (steps.max(2) - 1) as f64)
            .collect();
        let map = self.stark_map(&fields)?;
        Ok((0..fields.len())
            .map(|k| (map.curves[ia][k] - map.curves[ib][k]).abs())
            .collect())
    }
}

/// Adiabatic energy gap between two zero-field states at one field value,
/// tracked from zero field in 0.1 V/cm steps.
pub fn sfi_crossing_gap(
    engine: &StarkEngine,
    a: (u32, u32, Half),
    b: (u32, u32, Half),
    field_v_per_cm: f64,
) -> Result<f64> {
    let steps = ((field_v_per_cm / 0.1).ceil() as usize).clamp(2, 2000);
    let curve = engine.adiabatic_gap_curve(a, b, field_v_per_cm, steps)?;
    Ok(*curve.last().expect("nonempty gap curve"))
}

/// Greedy column assignment maximizing |overlap| per previous curve.
fn assign_by_overlap(overlap: &DMatrix<f64>) -> Vec<usize> {
    let n = overlap.nrows();
    let mut taken = vec![false; n];
    let mut perm = vec![0usize; n];
    for c in 0..n {
        let mut best = f64::NEG_INFINITY;
        let mut pick = usize::MAX;
        for j in 0..n {
            if taken[j] {
                continue;
            }
            let w = overlap[(c, j)].abs();
            if w > best {
                best = w;
                pick = j;
            }
        }
        perm[c] = pick;
        taken[pick] = true;
    }
    perm
}

/// Least-squares fit E(F) ≈ a + b·F²; returns (a, b, rms_residual).
pub fn fit_quadratic(fields: &[f64], energies: &[f64]) -> (f64, f64, f64) {
    let n = fields.len() as f64;
    let sx: f64 = fields.iter().map(|f| f * f).sum();
    let sxx: f64 = fields.iter().map(|f| f.powi(4)).sum();
    let sy: f64 = energies.iter().sum();
    let sxy: f64 = fields.iter().zip(energies).map(|(f, e)| f * f * e).sum();
    let det = n * sxx - sx * sx;
    let a = (sxx * sy - sx * sxy) / det;
    let b = (n * sxy - sx * sy) / det;
    let rms = (fields
        .iter()
        .zip(energies)
        .map(|(f, e)| (e - a - b * f * f).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    (a, b, rms)
}

/// Least-squares line fit; returns (intercept, slope, r²).
pub fn fit_linear(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let mean_y = sy / n;
    let ss_tot: f64 = y.iter().map(|v| (v - mean_y).powi(2)).sum();
    let ss_res: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let r2 = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        1.0
    };
    (intercept, slope, r2)
}

/// Scalar polarizability α in MHz/(V/cm)², defined by ΔE = −(α/2)F², from a
/// quadratic fit of the adiabatic curve inside `window_v_per_cm`.
///
/// Fails with a fit-quality error when the window contains an avoided
/// crossing (relative fit residual above 2% of the total shift).
pub fn polarizability(
    engine: &StarkEngine,
    n: u32,
    l: u32,
    j: Half,
    window_v_per_cm: f64,
    points: usize,
) -> Result<f64> {
    let idx = engine
        .basis
        .index_of(n, l, j)
        .ok_or_else(|| RydError::Config("state not in basis".into()))?;
    let points = points.max(5);
    let fields: Vec<f64> = (0..points)
        .map(|i| window_v_per_cm * i as f64 / (points - 1) as f64)
        .collect();
    let map = engine.stark_map(&fields)?;
    let curve = &map.curves[idx];
    let (_, b, rms) = fit_quadratic(&fields, curve);
    let total_shift = (curve[points - 1] - curve[0]).abs();
    if total_shift == 0.0 {
        return Err(RydError::FitQuality("no Stark shift in window".into()));
    }
    if rms / total_shift > 0.02 {
        return Err(RydError::FitQuality(format!(
            "quadratic fit residual {:.2}% of shift; window may contain an avoided crossing",
            100.0 * rms / total_shift
        )));
    }
    Ok(-2.0 * b * 1e3) // GHz -> MHz
}
