//! Polarization entanglement and squeezing of two-mode Gaussian light.
//!
//! States are described by their second moments in shot-noise units,
//! `X(θ) = A e^{-iθ} + A† e^{iθ}`, so that the vacuum has unit variance.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod cli;
pub mod entanglement;
pub mod error;
pub mod gaussian;
pub mod homodyne;
pub mod model;
pub mod oracle;
pub mod random;
pub mod stokes;

/// Fixed-decimal rendering without a sign on values that round to zero.
pub(crate) fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

pub use basis::{PolarizationRotation, RotationSpec, Waveplate};
pub use entanglement::{
    best_single_mode_squeezing, equatorial_entanglement, find_uncorrelated_basis,
    inseparability_at, inseparability_min, maximal_entanglement, poincare_sweep, sigma,
    sigma_extrema, EntanglementReport, MaximalEntanglement, SigmaExtrema, UncorrelatedBasis,
};
pub use error::{Error, Result};
pub use gaussian::{Mode, QuadratureAngle, TwoModeState};
