use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::Serialize;

use crate::basis::PolarizationRotation;
use crate::gaussian::{Mode, TwoModeState};

use super::SigmaExtrema;

/// Relative size of `|m_uv|` accepted as zero.
const RESIDUAL_TOL: f64 = 1e-13;

/// The pair (u, v) in which the anomalous cross-correlation vanishes, with
/// phases fixed so that `c_u ≥ c_v ≥ 0` are real.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncorrelatedBasis {
    /// Maps the input pair to (u, v).
    #[serde(skip)]
    pub rotation: PolarizationRotation,
    /// Moments of the (u, v) pair.
    #[serde(skip)]
    pub state: TwoModeState,
    pub c_u: f64,
    pub c_v: f64,
    pub n_u: f64,
    pub n_v: f64,
    /// Residual normal correlation `⟨δA_u δA_v†⟩`.
    pub k_uv: Complex64,
    /// `atan2(|U_01|, |U_00|)` of the rotation before the modes are
    /// ordered; zero when the input pair is already uncorrelated.
    pub mixing_angle: f64,
    /// Relative phase `arg(−U_01 U_00*)` of the admixture.
    pub omega: f64,
    /// The ordering step exchanged the two modes.
    pub swapped: bool,
    /// Anomalous moment matrix has two equal singular values, so every real
    /// rotation of (u, v) is also uncorrelated.
    pub degenerate: bool,
}

impl UncorrelatedBasis {
    pub fn v_min(&self, mode: Mode) -> f64 {
        self.state.min_max_variance(mode).v_min
    }

    pub fn v_max(&self, mode: Mode) -> f64 {
        self.state.min_max_variance(mode).v_max
    }

    pub fn sigma_min(&self) -> f64 {
        (self.n_u - 2.0 * self.c_u) + (self.n_v - 2.0 * self.c_v)
    }

    pub fn sigma_max(&self) -> f64 {
        self.n_u + self.n_v - 2.0 * (self.c_u - self.c_v).abs()
    }

    pub fn sigma_extrema(&self) -> SigmaExtrema {
        SigmaExtrema {
            sigma_min: self.sigma_min(),
            sigma_max: self.sigma_max(),
        }
    }

    /// `I_{u,v} = n_u + n_v`, never below 2 for a physical state.
    pub fn i_uv(&self) -> f64 {
        self.n_u + self.n_v
    }
}

/// Rotation `A_u = cosΦ A_a − sinΦ e^{iω} A_b`, `A_v = sinΦ A_a + cosΦ e^{iω} A_b`
/// with `ω = arg(c_a m* + c_b* m)` and
/// `tan 2Φ = −2|c_a m* + c_b* m| / (|c_a|² − |c_b|²)`.
fn mixing_rotation(state: &TwoModeState) -> PolarizationRotation {
    let (ca, cb, m) = (state.c_a(), state.c_b(), state.m_ab());
    let big_m = ca * m.conj() + cb.conj() * m;
    if big_m.norm() == 0.0 {
        return PolarizationRotation::identity();
    }
    let d = ca.norm_sqr() - cb.norm_sqr();
    let two_phi = f64::atan2(-2.0 * big_m.norm(), d);
    let omega = big_m.arg();
    let (s, co) = (0.5 * two_phi).sin_cos();
    let e = Complex64::from_polar(1.0, omega);
    let u = Matrix2::new(Complex64::from(co), -e * s, Complex64::from(s), e * co);
    PolarizationRotation::from_matrix(u).expect("mixing rotation is unitary")
}

/// Principal-branch square root of a 2×2 matrix, chosen to avoid the
/// cancellation in `tr V + 2√det V`.
fn sqrtm2(v: &Matrix2<Complex64>) -> Option<Matrix2<Complex64>> {
    let sd = v.determinant().sqrt();
    let tr = v.trace();
    let (sd, t2) = if (tr + sd * 2.0).norm() >= (tr - sd * 2.0).norm() {
        (sd, tr + sd * 2.0)
    } else {
        (-sd, tr - sd * 2.0)
    };
    let t = t2.sqrt();
    if t.norm() < 1e-150 {
        return None;
    }
    Some((v + Matrix2::identity() * sd) / t)
}

/// For `C = s·W²` with `W` symmetric unitary, `W†` diagonalizes `C`.
fn equal_singular_value_rotation(state: &TwoModeState) -> Option<PolarizationRotation> {
    let cm = state.anomalous_matrix();
    let s = cm.determinant().norm().sqrt();
    if s == 0.0 {
        return None;
    }
    let w = sqrtm2(&(cm / Complex64::from(s)))?;
    let w = (w + w.transpose()) * Complex64::from(0.5);
    // Re-unitarize through the polar factor to absorb round-off.
    let svd = w.svd(true, true);
    let (uu, vt) = (svd.u?, svd.v_t?);
    PolarizationRotation::from_matrix((uu * vt).adjoint()).ok()
}

fn residual(state: &TwoModeState) -> f64 {
    state.m_ab().norm()
}

/// Finds the uncorrelated pair (u, v) of `state`.
pub fn find_uncorrelated_basis(state: &TwoModeState) -> UncorrelatedBasis {
    let scale = state
        .c_a()
        .norm()
        .max(state.c_b().norm())
        .max(state.m_ab().norm());
    let tol = RESIDUAL_TOL * scale.max(f64::MIN_POSITIVE);

    let mut rot = mixing_rotation(state);
    let mut uv = rot.apply(state);
    for _ in 0..2 {
        if residual(&uv) <= tol {
            break;
        }
        let refine = mixing_rotation(&uv);
        rot = refine.compose(&rot);
        uv = rot.apply(state);
    }

    let cm = state.anomalous_matrix();
    let f2 = cm.map(|z| z.norm_sqr()).sum();
    let det = cm.determinant().norm();
    // (s1 − s2)² relative to s1² + s2².
    let gap = if f2 > 0.0 { ((f2 - 2.0 * det) / f2).max(0.0) } else { 0.0 };
    let mut degenerate = false;
    if residual(&uv) > tol {
        if let Some(alt) = equal_singular_value_rotation(state) {
            let alt_uv = alt.apply(state);
            if residual(&alt_uv) < residual(&uv) {
                rot = alt;
                uv = alt_uv;
                degenerate = true;
            }
        }
    }
    if gap < 1e-20 && scale > 0.0 {
        degenerate = true;
    }

    // Fix the phases so that c_u, c_v are real and non-negative.
    let phase = |c: Complex64| {
        if c.norm() == 0.0 {
            0.0
        } else {
            let mut a = c.arg();
            if a >= PI {
                a -= 2.0 * PI;
            }
            -0.5 * a
        }
    };
    let fix = PolarizationRotation::local_phases(phase(uv.c_a()), phase(uv.c_b()));
    rot = fix.compose(&rot);
    uv = rot.apply(state);

    let u = rot.matrix();
    let mixing_angle = f64::atan2(u[(0, 1)].norm(), u[(0, 0)].norm());
    let lead = -u[(0, 1)] * u[(0, 0)].conj();
    let omega = if lead.norm() > 1e-15 { lead.arg() } else { 0.0 };

    let swapped = uv.c_b().norm() > uv.c_a().norm();
    if swapped {
        rot = PolarizationRotation::swap().compose(&rot);
        uv = rot.apply(state);
    }
    let uv = uv.with_labels("u", "v");
    UncorrelatedBasis {
        rotation: rot,
        c_u: uv.c_a().re,
        c_v: uv.c_b().re,
        n_u: uv.n_a(),
        n_v: uv.n_b(),
        k_uv: uv.k_ab(),
        mixing_angle,
        omega,
        swapped,
        degenerate,
        state: uv,
    }
}
