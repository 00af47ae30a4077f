//! Radial wavefunctions and dipole matrix elements in the Coulomb
//! approximation.
//!
//! The reduced radial equation u'' = [L(L+1)/r² − 2/r − 2E]u (atomic units)
//! is integrated inward by the Numerov method on a grid uniform in
//! x = sqrt(r). Substituting u(r) = x^(1/2) g(x) turns it into
//!
//! ```text
//! g''(x) = G(x) g(x),   G(x) = (4L(L+1) + 3/4)/x² − 8 − 8E x²
//! ```
//!
//! which keeps the number of grid points per local de Broglie wavelength
//! roughly constant along the whole orbit. The binding energy is fixed by the
//! quantum defect, E = −1/(2 n_eff²), and the solution is truncated where the
//! single-channel model stops being meaningful near the core.

use crate::error::{Result, RydError};
use crate::species::Species;
use crate::state::RydbergState;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Default step of the x = sqrt(r) grid (a0^(1/2)).
pub const DEFAULT_DX: f64 = 0.01;

/// Uniform grid in x = sqrt(r): x_i = (i0 + i)·dx, i = 0..n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub dx: f64,
    pub i0: usize,
    pub n: usize,
}

impl RadialGrid {
    pub fn x(&self, i: usize) -> f64 {
        (self.i0 + i) as f64 * self.dx
    }

    pub fn r(&self, i: usize) -> f64 {
        let x = self.x(i);
        x * x
    }

    pub fn r_max(&self) -> f64 {
        self.r(self.n - 1)
    }
}

/// A normalized reduced radial wavefunction u(r) = r·R(r).
#[derive(Debug, Clone)]
pub struct RadialWavefunction {
    pub n: u32,
    pub l: u32,
    pub j2: i32,
    pub effective_n: f64,
    pub grid: RadialGrid,
    /// Transformed amplitude on the x grid; u = sqrt(x)·g.
    pub g: Vec<f64>,
    /// First retained index after inner truncation (g is zero below it).
    pub start: usize,
    pub nodes: usize,
}

impl RadialWavefunction {
    pub fn u(&self, i: usize) -> f64 {
        self.grid.x(i).sqrt() * self.g[i]
    }

    /// ∫ u² dr recomputed from the stored samples.
    pub fn norm(&self) -> f64 {
        let dx = self.grid.dx;
        let mut acc = 0.0;
        for i in 0..self.g.len() {
            let x = self.grid.x(i);
            acc += 2.0 * x * x * self.g[i] * self.g[i];
        }
        acc * dx
    }

    pub fn max_abs_u(&self) -> f64 {
        (0..self.g.len())
            .map(|i| self.u(i).abs())
            .fold(0.0, f64::max)
    }
}

fn g_coefficient(l: u32, e_au: f64, x: f64) -> f64 {
    let lf = l as f64;
    (4.0 * lf * (lf + 1.0) + 0.75) / (x * x) - 8.0 - 8.0 * e_au * x * x
}

/// Integrate one state on the shared x lattice with the given step.
pub fn integrate_radial_dx(state: &RydbergState, dx: f64) -> Result<RadialWavefunction> {
    let neff = state.effective_n()?;
    let e_au = -0.5 / (neff * neff);
    let l = state.l;
    // well past the outer turning point, and never below twice the orbit
    let n = state.n as f64;
    let lf = l as f64;
    let two_orbits = 3.0 * n * n - lf * (lf + 1.0);
    let r_max = (2.5 * neff * (neff + 15.0)).max(two_orbits + 10.0);
    let x_max = r_max.sqrt();
    let i0 = 1usize; // skip x = 0
    let n = (x_max / dx).ceil() as usize;
    if n < 32 {
        return Err(RydError::Numerical(format!("grid too small for {state}")));
    }
    let grid = RadialGrid { dx, i0, n };

    // Inward Numerov sweep. The physical solution grows into the classically
    // allowed region, so integration from the outer edge is stable.
    let h2 = dx * dx;
    let mut g = vec![0.0f64; n];
    g[n - 1] = 0.0;
    g[n - 2] = 1e-12;
    // Numerov weights for g'' = G g: (1 − h²G/12) on the neighbors
    let p = |i: usize| 1.0 - h2 / 12.0 * g_coefficient(l, e_au, grid.x(i));
    let mut p_next = p(n - 1);
    let mut p_here = p(n - 2);
    for i in (1..n - 1).rev() {
        let p_prev = p(i - 1);
        let value = (g[i] * (12.0 - 10.0 * p_here) - g[i + 1] * p_next) / p_prev;
        g[i - 1] = value;
        p_next = p_here;
        p_here = p_prev;
        // keep the divergent inner tail representable
        if value.abs() > 1e250 {
            for v in g[i - 1..].iter_mut() {
                *v *= 1e-100;
            }
        }
        if !value.is_finite() {
            return Err(RydError::Numerical(format!("Numerov overflow for {state}")));
        }
    }

    // Inner truncation: first drop the divergent tail (|u| decreasing from the
    // inner boundary), then for quantum-defect states zero through the
    // innermost node so the retained function vanishes cleanly at its edge.
    let abs_u = |i: usize| grid.x(i).sqrt() * g[i].abs();
    let mut start = 0usize;
    while start + 1 < n / 2 && abs_u(start + 1) < abs_u(start) {
        start += 1;
    }
    let delta = state.species.defect(l, state.j).unwrap_or(0.0);
    if delta > 1e-6 {
        let mut k = start;
        while k + 1 < n / 2 && g[k] * g[k + 1] > 0.0 {
            k += 1;
        }
        if k + 1 < n / 2 {
            start = k + 1;
        }
    }
    for v in g[..start].iter_mut() {
        *v = 0.0;
    }
    if start > 0 {
        // the retained edge sits within half a step of the true node
        g[start] = 0.0;
    }

    // normalize ∫u²dr = Σ 2x²g² dx
    let mut norm = 0.0;
    for (i, gi) in g.iter().enumerate().skip(start) {
        let x = grid.x(i);
        norm += 2.0 * x * x * gi * gi;
    }
    norm = (norm * dx).sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return Err(RydError::Numerical(format!(
            "normalization failed for {state}"
        )));
    }
    for v in g[start..].iter_mut() {
        *v /= norm;
    }

    // sign convention: the outermost antinode is positive
    let mut outer_peak = n - 1;
    let mut best = 0.0;
    for i in (start..n).rev() {
        let a = grid.x(i).sqrt() * g[i].abs();
        if a > best {
            best = a;
            outer_peak = i;
        }
        if best > 0.0 && a < 0.5 * best {
            break; // left the outer lobe
        }
    }
    if g[outer_peak] < 0.0 {
        for v in g[start..].iter_mut() {
            *v = -*v;
        }
    }

    // count sign changes, ignoring the numerically dead tails
    let gmax = g[start..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 1e-7 * gmax;
    let mut nodes = 0usize;
    let mut prev = 0.0f64;
    for &v in g[start..].iter() {
        if v.abs() > floor {
            if prev != 0.0 && prev * v < 0.0 {
                nodes += 1;
            }
            prev = v;
        }
    }

    // The single-channel solution at non-integer n_eff oscillates ⌊n_eff⌋ − L
    // times; the inner truncation may absorb up to two of those oscillations.
    let expected = neff.floor() as i64 - l as i64;
    if nodes as i64 > expected + 1 || (nodes as i64) < expected - 2 {
        return Err(RydError::Numerical(format!(
            "node count {nodes} inconsistent with {state} (expected about {expected})"
        )));
    }

    Ok(RadialWavefunction {
        n: state.n,
        l,
        j2: state.j.twice(),
        effective_n: neff,
        grid,
        g,
        start,
        nodes,
    })
}

/// Integrate with the default grid step.
pub fn integrate_radial(state: &RydbergState) -> Result<RadialWavefunction> {
    integrate_radial_dx(state, DEFAULT_DX)
}

/// Radial moment ∫ u1 r^k u2 dr for wavefunctions on the shared lattice.
pub fn radial_moment(a: &RadialWavefunction, b: &RadialWavefunction, k: i32) -> Result<f64> {
    if (a.grid.dx - b.grid.dx).abs() > 1e-15 || a.grid.i0 != b.grid.i0 {
        return Err(RydError::Numerical(
            "wavefunction grids are misaligned".into(),
        ));
    }
    let dx = a.grid.dx;
    let m = a.g.len().min(b.g.len());
    let lo = a.start.max(b.start);
    let mut acc = 0.0;
    for i in lo..m {
        let x = a.grid.x(i);
        // u1 r^k u2 dr = 2 x^(2k+2) g1 g2 dx
        acc += 2.0 * x.powi(2 * k + 2) * a.g[i] * b.g[i];
    }
    Ok(acc * dx)
}

/// (n, L, 2J) identity of a fine-structure level.
pub type LevelKey = (u32, u32, i32);

/// Shared, cached access to wavefunctions and radial matrix elements of one
/// species. All methods are safe to call concurrently.
pub struct RadialEngine {
    species: Species,
    dx: f64,
    wavefunctions: Mutex<HashMap<LevelKey, Arc<RadialWavefunction>>>,
    elements: Mutex<HashMap<(LevelKey, LevelKey), f64>>,
}

impl RadialEngine {
    pub fn new(species: Species) -> Self {
        Self::with_dx(species, DEFAULT_DX)
    }

    pub fn with_dx(species: Species, dx: f64) -> Self {
        Self {
            species,
            dx,
            wavefunctions: Mutex::new(HashMap::new()),
            elements: Mutex::new(HashMap::new()),
        }
    }

    pub fn species(&self) -> &Species {
        &self.species
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    fn check_species(&self, s: &RydbergState) -> Result<()> {
        if s.species.element != self.species.element {
            return Err(RydError::Config(format!(
                "state {s} does not belong to engine species {}",
                self.species.name()
            )));
        }
        Ok(())
    }

    pub fn wavefunction(&self, state: &RydbergState) -> Result<Arc<RadialWavefunction>> {
        self.check_species(state)?;
        let key = state.level_key();
        if let Some(w) = self.wavefunctions.lock().unwrap().get(&key) {
            return Ok(w.clone());
        }
        let wf = Arc::new(integrate_radial_dx(state, self.dx)?);
        self.wavefunctions
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(wf.clone());
        Ok(wf)
    }

    /// Radial dipole matrix element ⟨n1 L1 J1| r |n2 L2 J2⟩ in atomic units.
    /// Requires |L1 − L2| = 1.
    pub fn radial_matrix_element(&self, s1: &RydbergState, s2: &RydbergState) -> Result<f64> {
        self.check_species(s1)?;
        self.check_species(s2)?;
        if (s1.l as i32 - s2.l as i32).abs() != 1 {
            return Err(RydError::Domain(format!(
                "radial dipole element needs |ΔL| = 1, got {s1} -> {s2}"
            )));
        }
        let (k1, k2) = (s1.level_key(), s2.level_key());
        let key = if k1 <= k2 { (k1, k2) } else { (k2, k1) };
        if let Some(v) = self.elements.lock().unwrap().get(&key) {
            return Ok(*v);
        }
        let w1 = self.wavefunction(s1)?;
        let w2 = self.wavefunction(s2)?;
        let v = radial_moment(&w1, &w2, 1)?;
        self.elements.lock().unwrap().entry(key).or_insert(v);
        Ok(v)
    }
}
