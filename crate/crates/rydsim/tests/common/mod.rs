//! Shared brute-force oracles for the integration suites. Everything here is
//! deliberately independent of the library's production code paths.

#![allow(dead_code)]

use num_complex::Complex64;

/// Fixed-step RK4 for ψ' = −i H ψ with a constant real Hamiltonian given as
/// a dense row-major matrix (rad/s).
pub fn rk4_evolve(h: &[Vec<f64>], psi0: &[Complex64], t: f64, steps: usize) -> Vec<Complex64> {
    let n = psi0.len();
    let dt = t / steps as f64;
    let mut psi = psi0.to_vec();
    let apply = |v: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::ZERO; n];
        for i in 0..n {
            let mut acc = Complex64::ZERO;
            for j in 0..n {
                if h[i][j] != 0.0 {
                    acc += h[i][j] * v[j];
                }
            }
            out[i] = Complex64::new(0.0, -1.0) * acc;
        }
        out
    };
    for _ in 0..steps {
        let k1 = apply(&psi);
        let mid1: Vec<Complex64> = (0..n).map(|i| psi[i] + 0.5 * dt * k1[i]).collect();
        let k2 = apply(&mid1);
        let mid2: Vec<Complex64> = (0..n).map(|i| psi[i] + 0.5 * dt * k2[i]).collect();
        let k3 = apply(&mid2);
        let end: Vec<Complex64> = (0..n).map(|i| psi[i] + dt * k3[i]).collect();
        let k4 = apply(&end);
        for i in 0..n {
            psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    psi
}

/// Upper-state population of a resonantly rotating two-level system driven at
/// Rabi frequency Ω with detuning δ for time τ, by direct integration.
pub fn two_level_ode_population(omega: f64, delta: f64, tau: f64, steps: usize) -> f64 {
    let h = vec![vec![0.0, omega / 2.0], vec![omega / 2.0, -delta]];
    let psi = rk4_evolve(&h, &[Complex64::ONE, Complex64::ZERO], tau, steps);
    psi[1].norm_sqr()
}

/// Upper-state population of the two-photon ladder (lower, intermediate,
/// upper) driven by one field: couplings Ωa, Ωb; the real intermediate level
/// sits Δ above the virtual midpoint; δ is the source detuning.
pub fn three_level_ode_population(
    omega_a: f64,
    omega_b: f64,
    big_delta: f64,
    delta_source: f64,
    tau: f64,
    steps: usize,
) -> f64 {
    let h = vec![
        vec![0.0, omega_a / 2.0, 0.0],
        vec![omega_a / 2.0, big_delta - delta_source, omega_b / 2.0],
        vec![0.0, omega_b / 2.0, -2.0 * delta_source],
    ];
    let psi = rk4_evolve(
        &h,
        &[Complex64::ONE, Complex64::ZERO, Complex64::ZERO],
        tau,
        steps,
    );
    psi[2].norm_sqr()
}

/// Cyclic Jacobi eigenvalue algorithm for a small symmetric matrix; returns
/// eigenvalues sorted ascending.
pub fn jacobi_eigenvalues(matrix: &[Vec<f64>]) -> Vec<f64> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    for _sweep in 0..200 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() < 1e-13 * (1.0 + frob(&a)) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    vals.sort_by(f64::total_cmp);
    vals
}

fn frob(a: &[Vec<f64>]) -> f64 {
    a.iter()
        .flat_map(|r| r.iter())
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt()
}

/// Least-squares slope of y against x.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[derive(Clone, Copy)]
pub struct Criterion {
    pub index: usize,
    pub name: &'static str,
}

impl Criterion {
    pub fn report(&self, pass: bool, detail: &str) {
        println!(
            "acceptance {:>2} [{}] {}: {}",
            self.index,
            if pass { "PASS" } else { "FAIL" },
            self.name,
            detail
        );
        assert!(
            pass,
            "criterion {} ({}) failed: {}",
            self.index, self.name, detail
        );
    }
}
