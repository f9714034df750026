//! Inseparability over the Poincaré sphere of polarization bases.
//!
//! A unit vector `s = (s1, s2, s3)` names the orthogonal pair whose first
//! mode has Jones vector `e = (cos ϑ/2, sin ϑ/2·e^{iϕ})` in a reference
//! frame, with `s1 = cos ϑ`, `s2 = sin ϑ cos ϕ`, `s3 = sin ϑ sin ϕ`. The
//! reference pair itself sits at `+S1`; its circular modes sit at `±S3`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::PolarizationRotation;
use crate::error::{Error, Result};
use crate::fixed;
use crate::gaussian::TwoModeState;

use super::{find_uncorrelated_basis, inseparability_min, sigma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SphereFrame {
    /// Axes attached to the uncorrelated pair (u, v).
    #[default]
    Uncorrelated,
    /// Axes attached to the input pair (a, b).
    Input,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpherePoint {
    pub s: [f64; 3],
    pub i_min: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphereSweep {
    pub frame: SphereFrame,
    pub n_lat: usize,
    pub n_lon: usize,
    /// Row-major over latitude (south to north), then longitude.
    pub points: Vec<SpherePoint>,
}

impl SphereSweep {
    pub fn at(&self, lat: usize, lon: usize) -> &SpherePoint {
        &self.points[lat * self.n_lon + lon]
    }

    pub fn argmin(&self) -> &SpherePoint {
        self.points
            .iter()
            .min_by(|a, b| a.i_min.total_cmp(&b.i_min))
            .expect("sweep is never empty")
    }

    pub fn argmax(&self) -> &SpherePoint {
        self.points
            .iter()
            .max_by(|a, b| a.i_min.total_cmp(&b.i_min))
            .expect("sweep is never empty")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("s1,s2,s3,i_min,sigma\n");
        for p in &self.points {
            let cells = [p.s[0], p.s[1], p.s[2], p.i_min, p.sigma].map(|x| fixed(x, 12));
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Rotation from the reference pair to the pair named by `s` (normalized
/// internally).
pub fn direction_rotation(s: [f64; 3]) -> Result<PolarizationRotation> {
    let norm = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::out_of_range("|s|", norm, "finite and non-zero"));
    }
    let (s1, s2, s3) = (s[0] / norm, s[1] / norm, s[2] / norm);
    let vartheta = s1.clamp(-1.0, 1.0).acos();
    let varphi = if s2 == 0.0 && s3 == 0.0 { 0.0 } else { s3.atan2(s2) };
    let (sh, ch) = (0.5 * vartheta).sin_cos();
    let e = Complex64::from_polar(1.0, varphi);
    // Rows are conj(e) and conj(e⊥) with e⊥ = (−sin ϑ/2·e^{−iϕ}, cos ϑ/2).
    let u = Matrix2::new(
        Complex64::from(ch),
        e.conj() * sh,
        -e * sh,
        Complex64::from(ch),
    );
    PolarizationRotation::from_matrix(u)
}

/// `I_min` and `Σ` of the pair at `s`, for moments given in the reference frame.
pub fn evaluate_direction(reference: &TwoModeState, s: [f64; 3]) -> Result<SpherePoint> {
    let pair = direction_rotation(s)?.apply(reference);
    Ok(SpherePoint {
        s,
        i_min: inseparability_min(&pair).i_min,
        sigma: sigma(&pair),
    })
}

/// Latitude/longitude sweep in the frame of the uncorrelated basis.
pub fn poincare_sweep(state: &TwoModeState, n_lat: usize, n_lon: usize) -> Result<SphereSweep> {
    poincare_sweep_in_frame(state, n_lat, n_lon, SphereFrame::Uncorrelated)
}

/// Latitudes run from pole to pole inclusive; longitudes `2πj/n_lon`. The
/// pole of the grid is the `S3` axis.
pub fn poincare_sweep_in_frame(
    state: &TwoModeState,
    n_lat: usize,
    n_lon: usize,
    frame: SphereFrame,
) -> Result<SphereSweep> {
    if n_lat < 2 || n_lon < 2 {
        return Err(Error::DegenerateResolution(format!(
            "{n_lat}x{n_lon}, need at least 2 points on each axis"
        )));
    }
    let reference = match frame {
        SphereFrame::Uncorrelated => find_uncorrelated_basis(state).state,
        SphereFrame::Input => state.clone(),
    };
    let mut points = Vec::with_capacity(n_lat * n_lon);
    for i in 0..n_lat {
        let lat = -0.5 * PI + PI * i as f64 / (n_lat - 1) as f64;
        let (sl, cl) = lat.sin_cos();
        for j in 0..n_lon {
            let lon = 2.0 * PI * j as f64 / n_lon as f64;
            let (so, co) = lon.sin_cos();
            points.push(evaluate_direction(&reference, [cl * co, cl * so, sl])?);
        }
    }
    Ok(SphereSweep {
        frame,
        n_lat,
        n_lon,
        points,
    })
}
