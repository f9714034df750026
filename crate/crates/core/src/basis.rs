//! Polarization basis changes.
//!
//! A [`PolarizationRotation`] is a 2×2 unitary `U` mapping the current mode
//! operators to new ones, `(A_a', A_b')ᵀ = U (A_a, A_b)ᵀ`. Waveplate angles are
//! measured counterclockwise from the polarization direction of mode a.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::TwoModeState;

/// Residual `‖U U† − I‖` above which a matrix is not accepted as unitary.
pub const UNITARITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationRotation {
    u: Matrix2<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Waveplate {
    Half,
    Quarter,
}

impl PolarizationRotation {
    pub fn identity() -> Self {
        PolarizationRotation {
            u: Matrix2::identity(),
        }
    }

    pub fn from_matrix(u: Matrix2<Complex64>) -> Result<Self> {
        let residual = unitarity_residual(&u);
        if !(residual <= UNITARITY_TOL) {
            return Err(Error::NonUnitary { residual });
        }
        Ok(PolarizationRotation { u })
    }

    /// `A_a = β A_u − α e^{iφ} A_v`, `A_b = α A_u + β e^{iφ} A_v` with
    /// `α² + β² = 1`; the rotation maps the (u, v) pair to (a, b).
    pub fn from_alpha_beta_phi(alpha: f64, beta: f64, phi: f64) -> Result<Self> {
        if !(alpha >= 0.0 && beta >= 0.0) {
            return Err(Error::out_of_range("alpha/beta", alpha.min(beta), "non-negative"));
        }
        let norm = alpha * alpha + beta * beta;
        if (norm - 1.0).abs() > UNITARITY_TOL {
            return Err(Error::out_of_range("alpha^2 + beta^2", norm, "1"));
        }
        if !phi.is_finite() {
            return Err(Error::out_of_range("phi", phi, "a finite angle"));
        }
        Ok(Self::mixing(alpha, phi))
    }

    /// (α, φ) form with `β = √(1 − α²)`; `alpha` is clamped to `[0, 1]`.
    pub fn mixing(alpha: f64, phi: f64) -> Self {
        let alpha = alpha.clamp(0.0, 1.0);
        let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
        let e = Complex64::from_polar(1.0, phi);
        PolarizationRotation {
            u: Matrix2::new(c(beta, 0.0), -e * alpha, c(alpha, 0.0), e * beta),
        }
    }

    /// Independent phases on each output mode: `A_a → e^{iχ_a} A_a`.
    pub fn local_phases(chi_a: f64, chi_b: f64) -> Self {
        PolarizationRotation {
            u: Matrix2::new(
                Complex64::from_polar(1.0, chi_a),
                c(0.0, 0.0),
                c(0.0, 0.0),
                Complex64::from_polar(1.0, chi_b),
            ),
        }
    }

    pub fn swap() -> Self {
        PolarizationRotation {
            u: Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        }
    }

    /// Circular modes of the current pair: `(A_a ∓ i A_b)/√2`. Applied to
    /// the uncorrelated basis this yields the maximally entangled modes.
    pub fn circular() -> Self {
        Self::mixing(FRAC_1_SQRT_2, PI / 2.0)
    }

    /// Linear modes at ±45°: `(A_a + A_b)/√2`, `(A_a − A_b)/√2`.
    pub fn diagonal() -> Self {
        Self::waveplate(Waveplate::Half, PI / 8.0)
    }

    /// Modes 1, 2 of the two-detector inseparability measurement,
    /// `A_1 = (A_a + A_b)/√2` and `A_2 = i(A_a − A_b)/√2`. Equal to a
    /// half-wave plate at 22.5° followed by a quarter-wave plate at 0°.
    pub fn homodyne_pair() -> Self {
        let s = FRAC_1_SQRT_2;
        PolarizationRotation {
            u: Matrix2::new(c(s, 0.0), c(s, 0.0), c(0.0, s), c(0.0, -s)),
        }
    }

    /// Jones matrix of an ideal waveplate with fast axis at `axis_angle`.
    pub fn waveplate(kind: Waveplate, axis_angle: f64) -> Self {
        let (s2, c2) = (2.0 * axis_angle).sin_cos();
        match kind {
            Waveplate::Half => PolarizationRotation {
                u: Matrix2::new(c(c2, 0.0), c(s2, 0.0), c(s2, 0.0), c(-c2, 0.0)),
            },
            Waveplate::Quarter => {
                // R(θ) diag(1, i) R(−θ)
                let (s, co) = axis_angle.sin_cos();
                let i = c(0.0, 1.0);
                let one = c(1.0, 0.0);
                let u = Matrix2::new(
                    one * (co * co) + i * (s * s),
                    (one - i) * (co * s),
                    (one - i) * (co * s),
                    one * (s * s) + i * (co * co),
                );
                PolarizationRotation { u }
            }
        }
    }

    /// Beamsplitter picture of a basis change: transmission `T = β²`,
    /// with the second input dephased by `dephase` before mixing.
    pub fn beamsplitter_equivalence(transmission: f64, dephase: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&transmission) {
            return Err(Error::out_of_range("T", transmission, "[0, 1]"));
        }
        let beta = transmission.sqrt();
        let alpha = (1.0 - transmission).sqrt();
        Self::from_alpha_beta_phi(alpha, beta, dephase)
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.u
    }

    /// `self` after `first`: the composite maps through `first`, then `self`.
    pub fn compose(&self, first: &PolarizationRotation) -> Self {
        PolarizationRotation {
            u: self.u * first.u,
        }
    }

    pub fn inverse(&self) -> Self {
        PolarizationRotation {
            u: self.u.adjoint(),
        }
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.u)
    }

    /// Row `i` of U: the new mode `i` as a combination of the old modes.
    pub fn row(&self, i: usize) -> [Complex64; 2] {
        [self.u[(i, 0)], self.u[(i, 1)]]
    }

    /// Second moments of the transformed pair: `C' = U C Uᵀ`, `N' = U N U†`.
    pub fn apply(&self, state: &TwoModeState) -> TwoModeState {
        let cm = self.u * state.anomalous_matrix() * self.u.transpose();
        let nm = self.u * state.normal_matrix() * self.u.adjoint();
        TwoModeState::from_moment_matrices(&cm, &nm, state.labels().clone())
    }

    /// Whether two rotations define the same pair of modes up to a phase on
    /// each mode (the order of the modes matters).
    pub fn same_modes_as(&self, other: &PolarizationRotation, tol: f64) -> bool {
        let d = self.u * other.u.adjoint();
        d[(0, 1)].norm() < tol && d[(1, 0)].norm() < tol
    }
}

impl Default for PolarizationRotation {
    fn default() -> Self {
        Self::identity()
    }
}

fn unitarity_residual(u: &Matrix2<Complex64>) -> f64 {
    let r = (u * u.adjoint() - Matrix2::identity()).map(|z| z.norm()).max();
    if r.is_nan() {
        f64::INFINITY
    } else {
        r
    }
}

/// JSON forms accepted for rotations: `{"alpha":..,"beta":..,"phi":..}` or
/// `{"jones":[[[re,im],[re,im]],[[re,im],[re,im]]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum RotationSpec {
    AlphaBetaPhi { alpha: f64, beta: f64, phi: f64 },
    Jones { jones: [[[f64; 2]; 2]; 2] },
}

impl RotationSpec {
    pub fn to_rotation(&self) -> Result<PolarizationRotation> {
        match *self {
            RotationSpec::AlphaBetaPhi { alpha, beta, phi } => {
                PolarizationRotation::from_alpha_beta_phi(alpha, beta, phi)
            }
            RotationSpec::Jones { jones } => {
                let z = |r: usize, col: usize| c(jones[r][col][0], jones[r][col][1]);
                PolarizationRotation::from_matrix(Matrix2::new(z(0, 0), z(0, 1), z(1, 0), z(1, 1)))
            }
        }
    }

    pub fn from_json(text: &str) -> Result<PolarizationRotation> {
        let spec: RotationSpec = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("rotation file: {e}")))?;
        spec.to_rotation()
    }
}
