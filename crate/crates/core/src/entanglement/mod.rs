//! Inseparability of two-mode Gaussian states and its relation to squeezing.
//!
//! For a pair (a, b) the inseparability trace is
//! `I(θ) = ½[⟨δ(X_a+X_b)²(θ)⟩ + ⟨δ(Y_a−Y_b)²(θ)⟩] = n_a + n_b + 4 Re(m_ab e^{-2iθ})`,
//! and `I < 2` certifies entanglement. Only `|m_ab|` depends on the basis, so
//! the best basis maximizes the anomalous cross-correlation. The maximum is
//! reached on the circular modes of the uncorrelated basis, where `I` equals
//! the sum of the two minimal noises of that basis.

mod sphere;
mod uncorrelated;

use std::f64::consts::PI;

use serde::Serialize;

use crate::basis::PolarizationRotation;
use crate::gaussian::{Mode, QuadratureAngle, TwoModeState, EPS_DEG};

pub use sphere::{
    direction_rotation, evaluate_direction, poincare_sweep, poincare_sweep_in_frame, SphereFrame,
    SpherePoint, SphereSweep,
};
pub use uncorrelated::{find_uncorrelated_basis, UncorrelatedBasis};

/// Strict threshold of the inseparability criterion.
pub const SEPARABILITY_BOUND: f64 = 2.0;

/// `I_{a,b}(θ)` from the closed-form expansion.
pub fn inseparability_at(state: &TwoModeState, theta: QuadratureAngle) -> f64 {
    let phase = num_complex::Complex64::from_polar(1.0, -2.0 * theta.radians());
    state.total_noise() + 4.0 * (state.m_ab() * phase).re
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementReport {
    /// θ-average of `I(θ)`, equal to `n_a + n_b`.
    pub mean: f64,
    /// Oscillation amplitude `4|m_ab|`.
    pub amplitude: f64,
    /// `arg m_ab`; `I(θ) = mean + amplitude·cos(2θ − phase)`.
    pub phase: f64,
    pub i_min: f64,
    /// Minimizing quadrature angle in `[0, π)`.
    pub theta_star: QuadratureAngle,
    pub sigma: f64,
    /// `i_min < 2`.
    pub entangled: bool,
}

impl EntanglementReport {
    pub fn i_of_theta(&self, theta: QuadratureAngle) -> f64 {
        self.mean + self.amplitude * (2.0 * theta.radians() - self.phase).cos()
    }

    pub fn i_max(&self) -> f64 {
        self.mean + self.amplitude
    }

    /// `n` equally spaced samples of `I(θ)` over `[0, π)`.
    pub fn table(&self, n: usize) -> Vec<(f64, f64)> {
        (0..n)
            .map(|k| {
                let t = PI * k as f64 / n as f64;
                (t, self.i_of_theta(QuadratureAngle(t)))
            })
            .collect()
    }

    pub fn is_flat(&self) -> bool {
        self.amplitude < 4.0 * EPS_DEG
    }
}

/// Minimum of `I(θ)` over θ, reached at `θ = arg(m_ab)/2 ± π/2`.
pub fn inseparability_min(state: &TwoModeState) -> EntanglementReport {
    let m = state.m_ab();
    let abs = m.norm();
    let mean = state.total_noise();
    let (phase, theta_star) = if abs < EPS_DEG {
        (0.0, QuadratureAngle(0.0))
    } else {
        (m.arg(), QuadratureAngle(0.5 * (m.arg() + PI)).reduced())
    };
    let i_min = mean - 4.0 * abs;
    EntanglementReport {
        mean,
        amplitude: 4.0 * abs,
        phase,
        i_min,
        theta_star,
        sigma: sigma(state),
        entangled: i_min < SEPARABILITY_BOUND,
    }
}

/// `Σ_{a,b}`: sum of the minimal quadrature noises of the two modes.
pub fn sigma(state: &TwoModeState) -> f64 {
    state.min_max_variance(Mode::A).v_min + state.min_max_variance(Mode::B).v_min
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximalEntanglement {
    pub report: EntanglementReport,
    #[serde(skip)]
    pub basis_star: PolarizationRotation,
}

/// Best entanglement over all polarization bases: the circular modes of the
/// uncorrelated basis, with `I* = v_min(u) + v_min(v) = Σ_min`.
pub fn maximal_entanglement(state: &TwoModeState) -> MaximalEntanglement {
    let uv = find_uncorrelated_basis(state);
    maximal_entanglement_from(&uv)
}

pub(crate) fn maximal_entanglement_from(uv: &UncorrelatedBasis) -> MaximalEntanglement {
    let basis_star = PolarizationRotation::circular().compose(&uv.rotation);
    let star_state = PolarizationRotation::circular().apply(&uv.state);
    let mut report = inseparability_min(&star_state);
    let closed_form = uv.sigma_min();
    debug_assert!(
        (report.i_min - closed_form).abs() < 1e-9,
        "circular modes give {} but Σ_min is {}",
        report.i_min,
        closed_form
    );
    report.i_min = closed_form;
    report.entangled = closed_form < SEPARABILITY_BOUND;
    MaximalEntanglement { report, basis_star }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaExtrema {
    pub sigma_min: f64,
    pub sigma_max: f64,
}

/// Range of `Σ_{a,b}` over all bases:
/// `Σ_min = v_min(u) + v_min(v)` and
/// `Σ_max = min{v_min(u) + v_max(v), v_max(u) + v_min(v)}`.
pub fn sigma_extrema(state: &TwoModeState) -> SigmaExtrema {
    find_uncorrelated_basis(state).sigma_extrema()
}

/// Inseparability of the modes at 45° to the uncorrelated pair (the
/// S′₂ axis); equals `Σ_max`.
pub fn equatorial_entanglement(state: &TwoModeState) -> f64 {
    let uv = find_uncorrelated_basis(state);
    let cd = PolarizationRotation::mixing(std::f64::consts::FRAC_1_SQRT_2, 0.0).apply(&uv.state);
    inseparability_min(&cd).i_min
}

/// Lowest quadrature variance of any single polarization mode.
///
/// Every quadrature of every mode is a unit real combination of
/// `(X_a, Y_a, X_b, Y_b)`, and every unit combination is reached, so the
/// optimum is the smallest eigenvalue of the quadrature covariance.
pub fn best_single_mode_squeezing(state: &TwoModeState) -> f64 {
    let v = state.to_quadrature_covariance();
    let v = (v + v.transpose()) * 0.5;
    v.symmetric_eigenvalues().min()
}

/// Closed form of the best single-mode squeezing when the residual normal
/// correlation `⟨δA_uδA_v†⟩` of the uncorrelated basis is real and positive:
/// `½{v_u + v_v − √((v_u − v_v)² + 16 k²)}`. Returns `None` otherwise.
pub fn single_mode_closed_form(uv: &UncorrelatedBasis) -> Option<f64> {
    let k = uv.k_uv;
    if k.im.abs() > 1e-12 * k.norm().max(1.0) || k.re < 0.0 {
        return None;
    }
    let vu = uv.state.min_max_variance(Mode::A).v_min;
    let vv = uv.state.min_max_variance(Mode::B).v_min;
    Some(0.5 * (vu + vv - ((vu - vv).powi(2) + 16.0 * k.re * k.re).sqrt()))
}
