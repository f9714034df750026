//! Parametric spectra of an atomic Kerr-like medium.
//!
//! Each circular mode carries a Lorentzian squeezing band
//! `s(Ω) = depth · w² / ((Ω − Ω₀)² + w²)` with minimal variance `1 − s` and
//! maximal variance `(1 + excess)/(1 − s)`. Optical pumping correlates the
//! two circular modes below the knee `γ_p`:
//! `⟨δA₊δA₋⟩ = corr · e^{iφ₂} / (1 + (Ω/γ_p)²)`, while
//! `⟨δA₊²⟩ = ⟨δA₋²⟩ = |C(Ω)| e^{iφ₁}`.
//!
//! With `A_± = (A_x ∓ i A_y)/√2` the linear modes are uncorrelated and
//! `⟨δA_x²⟩ = C e^{iφ₁} + ⟨δA₊δA₋⟩`, `⟨δA_y²⟩ = −C e^{iφ₁} + ⟨δA₊δA₋⟩`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::PolarizationRotation;
use crate::entanglement::{inseparability_min, maximal_entanglement};
use crate::error::{Error, Result};
use crate::fixed;
use crate::gaussian::{Mode, TwoModeState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KerrSpectrumParams {
    pub squeeze_depth: f64,
    pub band_center_mhz: f64,
    /// Half width at half maximum of the squeezing band.
    pub band_width_mhz: f64,
    pub pump_rate_khz: f64,
    pub corr_strength: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub excess_noise: f64,
}

impl Default for KerrSpectrumParams {
    fn default() -> Self {
        KerrSpectrumParams {
            squeeze_depth: 0.05,
            band_center_mhz: 5.0,
            band_width_mhz: 4.0,
            pump_rate_khz: 300.0,
            corr_strength: 0.02,
            phi1: 0.0,
            phi2: -0.75 * PI,
            excess_noise: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarizationCase {
    Linear,
    Circular,
}

impl std::str::FromStr for PolarizationCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(PolarizationCase::Linear),
            "circular" => Ok(PolarizationCase::Circular),
            other => Err(Error::InvalidConfig(format!(
                "unknown case `{other}`, expected `linear` or `circular`"
            ))),
        }
    }
}

impl KerrSpectrumParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.squeeze_depth,
            self.band_center_mhz,
            self.band_width_mhz,
            self.pump_rate_khz,
            self.corr_strength,
            self.phi1,
            self.phi2,
            self.excess_noise,
        ];
        if finite.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidConfig("calibration has a non-finite field".into()));
        }
        if !(0.0..1.0).contains(&self.squeeze_depth) {
            return Err(Error::out_of_range("squeeze_depth", self.squeeze_depth, "[0, 1)"));
        }
        if self.band_width_mhz <= 0.0 {
            return Err(Error::out_of_range("band_width_mhz", self.band_width_mhz, "> 0"));
        }
        if self.pump_rate_khz <= 0.0 {
            return Err(Error::out_of_range("pump_rate_khz", self.pump_rate_khz, "> 0"));
        }
        if self.corr_strength < 0.0 {
            return Err(Error::out_of_range("corr_strength", self.corr_strength, ">= 0"));
        }
        if self.excess_noise < 0.0 {
            return Err(Error::out_of_range("excess_noise", self.excess_noise, ">= 0"));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: KerrSpectrumParams =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("calibration: {e}")))?;
        p.validate()?;
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes")
    }

    /// Same spectra without circular-mode correlation.
    pub fn high_frequency_limit(&self) -> Self {
        KerrSpectrumParams {
            corr_strength: 0.0,
            ..*self
        }
    }

    pub fn pump_rate_mhz(&self) -> f64 {
        self.pump_rate_khz * 1e-3
    }

    pub fn squeezing(&self, freq_mhz: f64) -> f64 {
        let w2 = self.band_width_mhz * self.band_width_mhz;
        let d = freq_mhz - self.band_center_mhz;
        self.squeeze_depth * w2 / (d * d + w2)
    }

    /// `(v_min, v_max)` of each squeezed circular mode.
    pub fn circular_variances(&self, freq_mhz: f64) -> (f64, f64) {
        let v_min = 1.0 - self.squeezing(freq_mhz);
        (v_min, (1.0 + self.excess_noise) / v_min)
    }

    /// `⟨δA₊δA₋⟩` at the analysis frequency.
    pub fn circular_correlation(&self, freq_mhz: f64) -> Complex64 {
        let x = freq_mhz / self.pump_rate_mhz();
        Complex64::from_polar(self.corr_strength / (1.0 + x * x), self.phi2)
    }

    fn circular_moments(&self, freq_mhz: f64) -> (f64, Complex64) {
        let (v_min, v_max) = self.circular_variances(freq_mhz);
        (
            0.5 * (v_min + v_max),
            Complex64::from_polar(0.25 * (v_max - v_min), self.phi1),
        )
    }
}

fn check_freq(freq_mhz: f64) -> Result<()> {
    if !(freq_mhz > 0.0 && freq_mhz.is_finite()) {
        return Err(Error::out_of_range("freq_mhz", freq_mhz, "> 0"));
    }
    Ok(())
}

/// Moments of the (x, y) pair.
pub fn linear_case_state(params: &KerrSpectrumParams, freq_mhz: f64) -> Result<TwoModeState> {
    params.validate()?;
    check_freq(freq_mhz)?;
    let (n, c) = params.circular_moments(freq_mhz);
    let m = params.circular_correlation(freq_mhz);
    let zero = Complex64::new(0.0, 0.0);
    TwoModeState::new(n, n, c + m, -c + m, zero, zero)
        .with_labels("x", "y")
        .validated()
}

/// Moments of the (σ₊, σ₋) pair: only σ₊ interacts with the medium.
pub fn circular_case_state(params: &KerrSpectrumParams, freq_mhz: f64) -> Result<TwoModeState> {
    params.validate()?;
    check_freq(freq_mhz)?;
    let (n, c) = params.circular_moments(freq_mhz);
    TwoModeState::product(n, c, 1.0, Complex64::new(0.0, 0.0))
        .with_labels("sigma+", "sigma-")
        .validated()
}

/// Dephasing `φ_C` such that `A_u = A_x`, `A_v = i e^{−iφ_C} A_y` up to a
/// common phase: `tan 2φ_C = 2|C||m| sin(φ₁ − φ₂) / (|C|² − |m|²)` with
/// `m = ⟨δA₊δA₋⟩`. At `|C| = |m|` this gives `±π/4`.
pub fn phi_c(params: &KerrSpectrumParams, freq_mhz: f64) -> f64 {
    let (_, c) = params.circular_moments(freq_mhz);
    let m = params.circular_correlation(freq_mhz);
    let (cc, mm) = (c.norm(), m.norm());
    let num = 2.0 * cc * mm * (params.phi1 - params.phi2).sin();
    0.5 * num.atan2(cc * cc - mm * mm)
}

/// The x,y → (+45°, −45°) rotation.
pub fn diagonal_rotation() -> PolarizationRotation {
    PolarizationRotation::mixing(FRAC_1_SQRT_2, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub freq_mhz: f64,
    pub vmin_x: f64,
    pub vmin_y: f64,
    pub i45: f64,
    pub istar: f64,
    pub phi_c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencySweep {
    pub case: PolarizationCase,
    pub rows: Vec<SweepRow>,
}

impl FrequencySweep {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("freq_mhz,vmin_x,vmin_y,i45,istar,phi_c\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                fixed(r.freq_mhz, 6),
                fixed(r.vmin_x, 12),
                fixed(r.vmin_y, 12),
                fixed(r.i45, 12),
                fixed(r.istar, 12),
                fixed(r.phi_c, 12)
            );
        }
        out
    }
}

/// Per-frequency analysis. For the circular case the (x, y) pair is
/// obtained from (σ₊, σ₋) and `phi_c` is reported as zero.
pub fn frequency_sweep(
    params: &KerrSpectrumParams,
    case: PolarizationCase,
    freqs: &[f64],
) -> Result<FrequencySweep> {
    if freqs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidConfig("frequencies must be ascending".into()));
    }
    let to_xy = circular_to_linear();
    let mut rows = Vec::with_capacity(freqs.len());
    for &f in freqs {
        let (xy, phi) = match case {
            PolarizationCase::Linear => (linear_case_state(params, f)?, phi_c(params, f)),
            PolarizationCase::Circular => (to_xy.apply(&circular_case_state(params, f)?), 0.0),
        };
        let i45 = inseparability_min(&diagonal_rotation().apply(&xy)).i_min;
        let istar = maximal_entanglement(&xy).report.i_min;
        if i45 < istar - 1e-10 {
            return Err(Error::Invariant(format!(
                "I_45 = {i45} below the optimum {istar} at {f} MHz"
            )));
        }
        rows.push(SweepRow {
            freq_mhz: f,
            vmin_x: xy.min_max_variance(Mode::A).v_min,
            vmin_y: xy.min_max_variance(Mode::B).v_min,
            i45,
            istar,
            phi_c: phi,
        });
    }
    Ok(FrequencySweep { case, rows })
}

/// `(A_x, A_y)` in terms of `(A₊, A₋)` for `A_± = (A_x ∓ i A_y)/√2`.
pub fn circular_to_linear() -> PolarizationRotation {
    let s = FRAC_1_SQRT_2;
    PolarizationRotation::from_matrix(nalgebra::Matrix2::new(
        Complex64::new(s, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(0.0, s),
        Complex64::new(0.0, -s),
    ))
    .expect("unitary")
}

/// `start:stop:step` inclusive of `stop` up to round-off.
pub fn parse_freq_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Parse(format!("frequency range `{spec}`, expected start:stop:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(start > 0.0 && stop >= start && step > 0.0) || !(start + stop + step).is_finite() {
        return Err(bad());
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| start + step * k as f64).collect())
}
