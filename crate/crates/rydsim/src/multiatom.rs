//! Multi-atom excitation statistics for independent atoms.
//!
//! With no interaction, an N-atom outcome is a product of single-atom
//! probabilities: a labeled outcome with k excited atoms has probability
//! ρ^k (1−ρ)^(N−k), a multiset outcome gains the binomial count, and the
//! full-excitation spectrum ρ^N narrows with N: FWHM = 2Ω2·√(2^(1/N) − 1),
//! asymptotically √(N/ln 2) narrower than the single-atom line.

use crate::error::{Result, RydError};
use serde::Serialize;
use std::collections::BTreeMap;

/// Which N-atom outcome a curve describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutcomePattern {
    /// A specific labeled outcome, e.g. [true, false] = first atom excited.
    Labeled(Vec<bool>),
    /// Any outcome with exactly k atoms excited (binomial multiplicity).
    CountExcited(usize),
    /// All N atoms excited.
    FullExcitation,
}

/// Spectrum container: per-pattern probability curves over a detuning grid.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub detunings_rad_s: Vec<f64>,
    pub n_atoms: usize,
    pub curves: BTreeMap<String, Vec<f64>>,
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Probability of one labeled outcome given the single-atom excitation
/// probability.
pub fn labeled_probability(rho: f64, excited: &[bool]) -> f64 {
    excited
        .iter()
        .map(|&e| if e { rho } else { 1.0 - rho })
        .product()
}

/// Probability that exactly k of n atoms are excited.
pub fn multiset_probability(rho: f64, n: usize, k: usize) -> Result<f64> {
    if k > n {
        return Err(RydError::Domain(format!("k = {k} exceeds N = {n}")));
    }
    Ok(binomial(n, k) * rho.powi(k as i32) * (1.0 - rho).powi((n - k) as i32))
}

pub fn full_excitation_probability(rho: f64, n: usize) -> f64 {
    rho.powi(n as i32)
}

/// Build the N-atom outcome curve from a single-atom curve.
pub fn multi_atom_spectrum(
    n_atoms: usize,
    pattern: &OutcomePattern,
    detunings_rad_s: &[f64],
    single_atom_curve: &[f64],
) -> Result<Spectrum> {
    if n_atoms == 0 {
        return Err(RydError::Domain("need at least one atom".into()));
    }
    if detunings_rad_s.len() != single_atom_curve.len() {
        return Err(RydError::Config("grid and curve lengths differ".into()));
    }
    let (label, values): (String, Vec<f64>) = match pattern {
        OutcomePattern::Labeled(states) => {
            if states.len() != n_atoms {
                return Err(RydError::Domain("label length must equal N".into()));
            }
            let label: String = states.iter().map(|&e| if e { '2' } else { '1' }).collect();
            (
                label,
                single_atom_curve
                    .iter()
                    .map(|&rho| labeled_probability(rho, states))
                    .collect(),
            )
        }
        OutcomePattern::CountExcited(k) => {
            if *k > n_atoms {
                return Err(RydError::Domain(format!("k = {k} exceeds N = {n_atoms}")));
            }
            (
                format!("{k}-of-{n_atoms}"),
                single_atom_curve
                    .iter()
                    .map(|&rho| multiset_probability(rho, n_atoms, *k))
                    .collect::<Result<_>>()?,
            )
        }
        OutcomePattern::FullExcitation => (
            format!("{n_atoms}-of-{n_atoms}"),
            single_atom_curve
                .iter()
                .map(|&rho| full_excitation_probability(rho, n_atoms))
                .collect(),
        ),
    };
    let mut curves = BTreeMap::new();
    curves.insert(label, values);
    Ok(Spectrum {
        detunings_rad_s: detunings_rad_s.to_vec(),
        n_atoms,
        curves,
    })
}

/// Full width at half maximum of the N-atom full-excitation line,
/// 2Ω2·√(2^(1/N) − 1) (rad/s).
pub fn narrowed_width_rad_s(omega2: f64, n_atoms: usize) -> Result<f64> {
    if n_atoms == 0 {
        return Err(RydError::Domain("need at least one atom".into()));
    }
    Ok(2.0 * omega2 * (2.0f64.powf(1.0 / n_atoms as f64) - 1.0).sqrt())
}

/// Exact single-atom to N-atom width ratio 1/√(2^(1/N) − 1).
pub fn narrowing_ratio(n_atoms: usize) -> Result<f64> {
    if n_atoms == 0 {
        return Err(RydError::Domain("need at least one atom".into()));
    }
    Ok(1.0 / (2.0f64.powf(1.0 / n_atoms as f64) - 1.0).sqrt())
}

/// Large-N narrowing estimate √(N/ln 2).
pub fn narrowing_ratio_asymptotic(n_atoms: usize) -> f64 {
    (n_atoms as f64 / std::f64::consts::LN_2).sqrt()
}

/// Central-dip diagnostic of a single-excitation two-atom curve sampled on a
/// grid centered on the resonance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DipCheck {
    pub center_value: f64,
    pub max_value: f64,
    pub dip_present: bool,
}

pub fn dip_feature_check(curve: &[f64]) -> Result<DipCheck> {
    if curve.is_empty() {
        return Err(RydError::Domain("empty curve".into()));
    }
    let center_value = curve[curve.len() / 2];
    let max_value = curve.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(DipCheck {
        center_value,
        max_value,
        dip_present: center_value < max_value - 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lineshape::two_photon_population;
    use std::f64::consts::PI;

    #[test]
    fn product_law_reference_points() {
        // N=2, both excited at ρ = 0.9
        assert!((labeled_probability(0.9, &[true, true]) - 0.81).abs() < 1e-12);
        // labeled |12⟩ = labeled |21⟩ at any ρ
        for rho in [0.0, 0.3, 0.77, 1.0] {
            let a = labeled_probability(rho, &[true, false]);
            let b = labeled_probability(rho, &[false, true]);
            assert_eq!(a, b);
        }
        // ρ = 1 ⇒ full excitation certain
        assert_eq!(full_excitation_probability(1.0, 7), 1.0);
    }

    #[test]
    fn multiset_completeness() {
        for n in 1..=8 {
            for rho in [0.0, 0.2, 0.5, 0.9, 1.0] {
                let total: f64 = (0..=n)
                    .map(|k| multiset_probability(rho, n, k).unwrap())
                    .sum();
                assert!((total - 1.0).abs() < 1e-9, "n={n} rho={rho}: {total}");
            }
        }
        assert!(multiset_probability(0.5, 3, 4).is_err());
    }

    #[test]
    fn narrowing_reference_values() {
        // N=1: width = 2Ω2 exactly
        let w = narrowed_width_rad_s(1.0, 1).unwrap();
        assert!((w - 2.0).abs() < 1e-15);
        // N=5 exact ratio 1/sqrt(2^0.2 − 1) = 2.5932657…
        let r5 = narrowing_ratio(5).unwrap();
        assert!((r5 - 2.5932657).abs() < 1e-3, "got {r5}");
        // N=5 asymptotic sqrt(5/ln2) = 2.6858…
        let a5 = narrowing_ratio_asymptotic(5);
        assert!((a5 - 2.6858).abs() < 1e-3, "got {a5}");
    }

    #[test]
    fn narrowing_asymptotics_converge() {
        let rel = |n: usize| {
            let exact = narrowing_ratio(n).unwrap();
            (narrowing_ratio_asymptotic(n) - exact).abs() / exact
        };
        assert!(rel(5) < 0.05);
        assert!(rel(20) < 0.01);
    }

    #[test]
    fn narrowed_width_matches_curve_fwhm() {
        // sample ρ^N on a grid and find its half maximum: the Lorentzian
        // prefactor width formula should agree when the sin² factor is near 1
        let omega2 = 2.0 * PI * 90e3;
        let tau = PI / (2.0 * omega2);
        let n = 5usize;
        let grid: Vec<f64> = (-4000..=4000)
            .map(|i| i as f64 / 4000.0 * 4.0 * omega2)
            .collect();
        let single: Vec<f64> = grid
            .iter()
            .map(|&d| two_photon_population(omega2, d, 0.0, tau))
            .collect();
        let curve: Vec<f64> = single
            .iter()
            .map(|&r| full_excitation_probability(r, n))
            .collect();
        let half = 0.5 * curve.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let above: Vec<usize> = (0..curve.len()).filter(|&i| curve[i] >= half).collect();
        let fwhm = grid[*above.last().unwrap()] - grid[above[0]];
        let predicted = narrowed_width_rad_s(omega2, n).unwrap();
        assert!(
            (fwhm - predicted).abs() / predicted < 0.10,
            "fwhm {fwhm} vs {predicted}"
        );
    }

    #[test]
    fn dip_check_reference_points() {
        // center ρ = 0.9: single-excitation probability 2·0.9·0.1 = 0.18,
        // below the off-center maximum 0.5
        let rho = |x: f64| 0.9 * (-x * x / 2.0).exp();
        let grid: Vec<f64> = (-50..=50).map(|i| i as f64 / 10.0).collect();
        let curve: Vec<f64> = grid
            .iter()
            .map(|&x| 2.0 * rho(x) * (1.0 - rho(x)))
            .collect();
        let check = dip_feature_check(&curve).unwrap();
        assert!((check.center_value - 0.18).abs() < 1e-12);
        assert!(check.dip_present);
        assert!((check.max_value - 0.5).abs() < 0.01);

        // center ρ = 0.5 is the maximum of 2ρ(1−ρ): no dip
        let rho = |x: f64| 0.5 * (-x * x / 2.0).exp();
        let curve: Vec<f64> = grid
            .iter()
            .map(|&x| 2.0 * rho(x) * (1.0 - rho(x)))
            .collect();
        assert!(!dip_feature_check(&curve).unwrap().dip_present);

        // center ρ = 1: zero at center
        let rho = |x: f64| (-x * x / 2.0).exp();
        let curve: Vec<f64> = grid
            .iter()
            .map(|&x| 2.0 * rho(x) * (1.0 - rho(x)))
            .collect();
        let check = dip_feature_check(&curve).unwrap();
        assert!(check.center_value.abs() < 1e-12 && check.dip_present);
    }

    #[test]
    fn spectrum_builder_patterns() {
        let grid = vec![-1.0, 0.0, 1.0];
        let single = vec![0.2, 0.9, 0.2];
        let s = multi_atom_spectrum(
            2,
            &OutcomePattern::Labeled(vec![true, true]),
            &grid,
            &single,
        )
        .unwrap();
        for (got, want) in s.curves["22"].iter().zip([0.04, 0.81, 0.04]) {
            assert!((got - want).abs() < 1e-12);
        }
        let s = multi_atom_spectrum(2, &OutcomePattern::CountExcited(1), &grid, &single).unwrap();
        assert!((s.curves["1-of-2"][1] - 0.18).abs() < 1e-12);
        let s = multi_atom_spectrum(3, &OutcomePattern::FullExcitation, &grid, &single).unwrap();
        assert!((s.curves["3-of-3"][1] - 0.729).abs() < 1e-12);
        assert!(multi_atom_spectrum(2, &OutcomePattern::CountExcited(3), &grid, &single).is_err());
    }
}
