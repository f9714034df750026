//! Brute-force references that never use the closed forms.
//!
//! Every quantity here is a variance `rᵀ V r` of a real linear functional of
//! the quadrature covariance, minimized over explicit grids of bases and
//! quadrature angles.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::gaussian::{quadrature_functional, TwoModeState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    /// Points per axis of the coarse grid.
    pub points: usize,
    /// Local refinement rounds around the coarse optimum.
    pub refine_rounds: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            points: 61,
            refine_rounds: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridOptimum {
    pub value: f64,
    /// `(α, φ, ψ, θ)`: mixing amplitude, mixing phase, local phase of mode b
    /// and quadrature angle.
    pub at: [f64; 4],
    pub evaluations: u64,
}

fn quad(v: &Matrix4<f64>, r: &Vector4<f64>) -> f64 {
    (r.transpose() * v * r)[0]
}

/// Mode rows of the trial basis `(α, φ, ψ)`.
fn trial_rows(alpha: f64, phi: f64, psi: f64) -> ([Complex64; 2], [Complex64; 2]) {
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
    let e = Complex64::from_polar(1.0, phi);
    let p = Complex64::from_polar(1.0, psi);
    (
        [Complex64::from(beta), -e * alpha],
        [p * alpha, p * e * beta],
    )
}

/// Quadratic coefficients of the two EPR variances in `(cos θ, sin θ)`.
struct EprForm {
    sum: [f64; 3],
    diff: [f64; 3],
}

impl EprForm {
    fn new(v: &Matrix4<f64>, alpha: f64, phi: f64, psi: f64) -> Self {
        let (wa, wb) = trial_rows(alpha, phi, psi);
        let s = [wa[0] + wb[0], wa[1] + wb[1]];
        // Y_a − Y_b at θ is the X-type functional of −i(w_a − w_b).
        let mi = Complex64::new(0.0, -1.0);
        let d = [(wa[0] - wb[0]) * mi, (wa[1] - wb[1]) * mi];
        let form = |w: [Complex64; 2]| {
            let p = quadrature_functional(w, 0.0);
            let q = quadrature_functional(w, 0.5 * PI);
            [quad(v, &p), (p.transpose() * v * q)[0], quad(v, &q)]
        };
        EprForm {
            sum: form(s),
            diff: form(d),
        }
    }

    fn eval(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let f = |k: &[f64; 3]| c * c * k[0] + 2.0 * s * c * k[1] + s * s * k[2];
        0.5 * (f(&self.sum) + f(&self.diff))
    }
}

/// `½[Var(X_a+X_b)(θ) + Var(Y_a−Y_b)(θ)]` for the trial basis, evaluated
/// directly on the covariance.
pub fn trial_inseparability(state: &TwoModeState, at: [f64; 4]) -> f64 {
    let v = state.to_quadrature_covariance();
    EprForm::new(&v, at[0], at[1], at[2]).eval(at[3])
}

fn axis(lo: f64, hi: f64, n: usize, k: usize) -> f64 {
    if n == 1 {
        0.5 * (lo + hi)
    } else {
        lo + (hi - lo) * k as f64 / (n - 1) as f64
    }
}

/// Minimum of the inseparability over a 4-D grid of bases and angles.
pub fn grid_min_inseparability(state: &TwoModeState, spec: GridSpec) -> GridOptimum {
    let v = state.to_quadrature_covariance();
    let n = spec.points.max(2);
    let mut lo = [0.0, 0.0, 0.0, 0.0];
    let mut hi = [1.0, 2.0 * PI, 2.0 * PI, PI];
    let mut best = GridOptimum {
        value: f64::INFINITY,
        at: [0.0; 4],
        evaluations: 0,
    };
    let mut points = n;
    for round in 0..=spec.refine_rounds {
        for i in 0..points {
            let alpha = axis(lo[0], hi[0], points, i).clamp(0.0, 1.0);
            for j in 0..points {
                let phi = axis(lo[1], hi[1], points, j);
                for k in 0..points {
                    let psi = axis(lo[2], hi[2], points, k);
                    let form = EprForm::new(&v, alpha, phi, psi);
                    for l in 0..points {
                        let theta = axis(lo[3], hi[3], points, l);
                        let value = form.eval(theta);
                        best.evaluations += 1;
                        if value < best.value {
                            best.value = value;
                            best.at = [alpha, phi, psi, theta];
                        }
                    }
                }
            }
        }
        if round == spec.refine_rounds {
            break;
        }
        // Shrink to ±2 coarse steps around the optimum.
        for d in 0..4 {
            let step = (hi[d] - lo[d]) / (points - 1) as f64;
            lo[d] = best.at[d] - 2.0 * step;
            hi[d] = best.at[d] + 2.0 * step;
        }
        points = 17;
    }
    best
}

/// Quadrature covariance `[[Var X, Cov], [Cov, Var Y]]` of the single mode
/// with row `w`.
fn mode_covariance(v: &Matrix4<f64>, w: [Complex64; 2]) -> Matrix2<f64> {
    let p = quadrature_functional(w, 0.0);
    let q = quadrature_functional(w, 0.5 * PI);
    let pq = (p.transpose() * v * q)[0];
    Matrix2::new(quad(v, &p), pq, pq, quad(v, &q))
}

fn min_eig2(m: &Matrix2<f64>) -> f64 {
    let (a, b, d) = (m[(0, 0)], m[(0, 1)], m[(1, 1)]);
    0.5 * (a + d) - (0.25 * (a - d).powi(2) + b * b).sqrt()
}

/// Lowest single-mode quadrature noise over an `n × n` grid of `(α, φ)`.
pub fn grid_min_single_mode(state: &TwoModeState, n: usize) -> f64 {
    let v = state.to_quadrature_covariance();
    let n = n.max(2);
    let mut best = f64::INFINITY;
    for i in 0..n {
        let alpha = axis(0.0, 1.0, n, i);
        for j in 0..n {
            let phi = axis(0.0, 2.0 * PI, n, j);
            let (wa, _) = trial_rows(alpha, phi, 0.0);
            best = best.min(min_eig2(&mode_covariance(&v, wa)));
        }
    }
    best
}

/// `Σ_{a,b}` of the trial basis from the covariance.
pub fn trial_sigma(state: &TwoModeState, alpha: f64, phi: f64) -> f64 {
    let v = state.to_quadrature_covariance();
    let (wa, wb) = trial_rows(alpha, phi, 0.0);
    min_eig2(&mode_covariance(&v, wa)) + min_eig2(&mode_covariance(&v, wb))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaBracket {
    pub min: f64,
    pub max: f64,
}

/// Range of `Σ` over `samples` uniformly random polarization bases.
pub fn random_sigma_bracket<R: Rng + ?Sized>(
    state: &TwoModeState,
    samples: usize,
    rng: &mut R,
) -> SigmaBracket {
    let mut out = SigmaBracket {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
    };
    for _ in 0..samples {
        // Haar measure on the sphere: cos ϑ uniform.
        let alpha = rng.random::<f64>().sqrt();
        let phi = 2.0 * PI * rng.random::<f64>();
        let s = trial_sigma(state, alpha, phi);
        out.min = out.min.min(s);
        out.max = out.max.max(s);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub inseparability: GridOptimum,
    pub single_mode: f64,
    pub sigma: SigmaBracket,
}

pub fn brute_force_report<R: Rng + ?Sized>(
    state: &TwoModeState,
    spec: GridSpec,
    single_points: usize,
    sigma_samples: usize,
    rng: &mut R,
) -> OracleReport {
    OracleReport {
        inseparability: grid_min_inseparability(state, spec),
        single_mode: grid_min_single_mode(state, single_points),
        sigma: random_sigma_bracket(state, sigma_samples, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_trial_values() {
        let vac = TwoModeState::vacuum();
        for at in [[0.0, 0.0, 0.0, 0.0], [0.3, 1.0, 2.0, 0.4], [1.0, 3.0, 0.5, 2.9]] {
            assert!((trial_inseparability(&vac, at) - 2.0).abs() < 1e-14);
        }
        assert!((grid_min_single_mode(&vac, 9) - 1.0).abs() < 1e-14);
        assert!((trial_sigma(&vac, 0.6, 0.2) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn identity_trial_matches_pair_trace() {
        let s = TwoModeState::new(
            1.3,
            1.1,
            Complex64::new(0.1, 0.02),
            Complex64::new(0.0, 0.04),
            Complex64::new(0.05, -0.03),
            Complex64::new(0.02, 0.0),
        );
        for t in [0.0, 0.7, 1.9] {
            let expected = s.total_noise() + 4.0 * (s.m_ab() * Complex64::from_polar(1.0, -2.0 * t)).re;
            assert!((trial_inseparability(&s, [0.0, 0.0, 0.0, t]) - expected).abs() < 1e-13);
        }
    }
}
