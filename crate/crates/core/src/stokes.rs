//! Polarization entanglement of two beams built from the pair (a, b).
//!
//! Beam α carries mode a and, in the orthogonal polarization, an intense
//! coherent field `B = α_B e^{iθ_B}`; beam β carries mode b with its own
//! copy of `B` and the roles of the polarizations exchanged. To first order
//! in the fluctuations `δS₂^α = α_B δX_a(θ_B)`, `δS₃^α = α_B δY_a(θ_B)`,
//! `δS₂^β = α_B δX_b(θ_B)` and `δS₃^β = −α_B δY_b(θ_B)`, and the criterion
//! `V(S₂^α+S₂^β) + V(S₃^α+S₃^β) < 2(|⟨S₁^α⟩| + |⟨S₁^β⟩|)` becomes
//! `I_{a,b}(θ_B) < 2`. Variances below are divided by `2α_B²`.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::entanglement::{inseparability_min, SEPARABILITY_BOUND};
use crate::error::{Error, Result};
use crate::gaussian::{quadrature_functional, QuadratureAngle, TwoModeState};
use crate::homodyne::GaussianSampler;
use crate::random::seeded_rng;

/// Below this LO-to-signal amplitude ratio the linearization is flagged.
pub const STRONG_LO_RATIO: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StokesMode {
    #[default]
    Analytic,
    Sampled,
}

impl std::str::FromStr for StokesMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(StokesMode::Analytic),
            "sampled" => Ok(StokesMode::Sampled),
            other => Err(Error::InvalidConfig(format!(
                "unknown mode `{other}`, expected `analytic` or `sampled`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanFields {
    pub alpha_a: Complex64,
    pub alpha_b: Complex64,
    /// Real LO amplitude `α_B`.
    pub alpha_lo: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StokesMeans {
    pub s1_alpha: f64,
    pub s1_beta: f64,
    /// `|⟨S₁^α⟩| + |⟨S₁^β⟩|`.
    pub bound: f64,
    /// `α_B / max(|α_a|, |α_b|)`, infinite for vacuum signal modes.
    pub lo_ratio: f64,
    pub weak_lo: bool,
}

pub fn stokes_means(fields: &MeanFields) -> Result<StokesMeans> {
    let lo = fields.alpha_lo;
    if !(lo.abs() > 0.0) || !lo.is_finite() {
        return Err(Error::out_of_range("alpha_B", lo, "non-zero"));
    }
    let lo2 = lo * lo;
    let s1_alpha = fields.alpha_a.norm_sqr() - lo2;
    let s1_beta = lo2 - fields.alpha_b.norm_sqr();
    let signal = fields.alpha_a.norm().max(fields.alpha_b.norm());
    let lo_ratio = if signal > 0.0 { lo.abs() / signal } else { f64::INFINITY };
    Ok(StokesMeans {
        s1_alpha,
        s1_beta,
        bound: s1_alpha.abs() + s1_beta.abs(),
        lo_ratio,
        weak_lo: lo_ratio < STRONG_LO_RATIO,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StokesNoiseReport {
    pub s_s2: f64,
    pub s_s3: f64,
    pub i_s_normalized: f64,
    /// Right-hand side of the criterion divided by `α_B²`.
    pub bound: f64,
    pub entangled: bool,
    pub alpha_b: f64,
    pub theta_b: f64,
    pub mode: StokesMode,
}

/// Strong-LO limit: `s_s2 = ½V(X_a+X_b)(θ_B)`, `s_s3 = ½V(Y_a−Y_b)(θ_B)`.
pub fn polarization_inseparability(
    state: &TwoModeState,
    alpha_b: f64,
    theta_b: QuadratureAngle,
) -> Result<StokesNoiseReport> {
    if !(alpha_b > 0.0 && alpha_b.is_finite()) {
        return Err(Error::out_of_range("alpha_B", alpha_b, "> 0"));
    }
    let v = state.to_quadrature_covariance();
    let t = theta_b.radians();
    let one = Complex64::new(1.0, 0.0);
    let sum = quadrature_functional([one, one], t);
    // Y(θ) is X(θ + π/2).
    let diff = quadrature_functional([one, -one], t + 0.5 * std::f64::consts::PI);
    let s_s2 = 0.5 * (sum.transpose() * v * sum)[0];
    let s_s3 = 0.5 * (diff.transpose() * v * diff)[0];
    let i = s_s2 + s_s3;
    Ok(StokesNoiseReport {
        s_s2,
        s_s3,
        i_s_normalized: i,
        bound: SEPARABILITY_BOUND,
        entangled: i < SEPARABILITY_BOUND,
        alpha_b,
        theta_b: t,
        mode: StokesMode::Analytic,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampledStokesConfig {
    pub seed: u64,
    pub samples: usize,
    /// Mean amplitudes of the (a, b) modes.
    pub alpha_a: Complex64,
    pub alpha_b: Complex64,
    /// Variance of the B-field quadratures in shot-noise units.
    pub b_noise_figure: f64,
}

impl Default for SampledStokesConfig {
    fn default() -> Self {
        SampledStokesConfig {
            seed: 0,
            samples: 100_000,
            alpha_a: Complex64::new(0.0, 0.0),
            alpha_b: Complex64::new(0.0, 0.0),
            b_noise_figure: 1.0,
        }
    }
}

/// Finite-LO evaluation from Wigner-function samples of all four field
/// amplitudes, keeping the products of signal and LO fluctuations.
pub fn polarization_inseparability_sampled(
    state: &TwoModeState,
    alpha_lo: f64,
    theta_b: QuadratureAngle,
    config: &SampledStokesConfig,
) -> Result<StokesNoiseReport> {
    if config.samples < 2 {
        return Err(Error::InvalidConfig("sampled mode needs at least 2 samples".into()));
    }
    if !(config.b_noise_figure >= 0.0) {
        return Err(Error::out_of_range("b_noise_figure", config.b_noise_figure, ">= 0"));
    }
    let means = stokes_means(&MeanFields {
        alpha_a: config.alpha_a,
        alpha_b: config.alpha_b,
        alpha_lo,
    })?;
    let state = state.clone().validated()?;
    let sampler = GaussianSampler::new(&state.to_quadrature_covariance());
    let mut rng = seeded_rng(config.seed);
    let lo = Complex64::from_polar(alpha_lo, theta_b.radians());
    let sd_b = 0.5 * config.b_noise_figure.sqrt();
    let draw_b = |rng: &mut rand_chacha::ChaCha8Rng| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        lo + Complex64::new(sd_b * re, sd_b * im)
    };
    let n = config.samples;
    let (mut s2, mut s3) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for _ in 0..n {
        let q = sampler.sample(&mut rng);
        let a = config.alpha_a + Complex64::new(0.5 * q[0], 0.5 * q[1]);
        let b = config.alpha_b + Complex64::new(0.5 * q[2], 0.5 * q[3]);
        let ba = draw_b(&mut rng);
        let bb = draw_b(&mut rng);
        let za = ba.conj() * a;
        let zb = bb.conj() * b;
        s2.push(2.0 * (za.re + zb.re));
        s3.push(2.0 * (za.im - zb.im));
    }
    let variance = |xs: &[f64]| {
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
    };
    // Symmetric ordering adds ½ per beam to each variance of a product of
    // independent signal and LO fluctuations.
    let norm = 2.0 * alpha_lo * alpha_lo;
    let s_s2 = (variance(&s2) - 1.0) / norm;
    let s_s3 = (variance(&s3) - 1.0) / norm;
    let bound = means.bound / (alpha_lo * alpha_lo);
    let i = s_s2 + s_s3;
    Ok(StokesNoiseReport {
        s_s2,
        s_s3,
        i_s_normalized: i,
        bound,
        entangled: i < bound,
        alpha_b: alpha_lo,
        theta_b: theta_b.radians(),
        mode: StokesMode::Sampled,
    })
}

/// LO phase minimizing `I_{a,b}(θ)`; zero when the trace is flat.
pub fn lock_phase(state: &TwoModeState) -> QuadratureAngle {
    inseparability_min(state).theta_star
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::inseparability_at;

    #[test]
    fn means_of_vacuum_signal() {
        let m = stokes_means(&MeanFields {
            alpha_a: Complex64::new(0.0, 0.0),
            alpha_b: Complex64::new(0.0, 0.0),
            alpha_lo: 10.0,
        })
        .unwrap();
        assert_eq!((m.s1_alpha, m.s1_beta), (-100.0, 100.0));
        assert_eq!(m.bound, 200.0);
        assert!(!m.weak_lo);
    }

    #[test]
    fn means_flag_weak_lo_and_reject_zero() {
        let f = MeanFields {
            alpha_a: Complex64::new(1.0, 0.0),
            alpha_b: Complex64::new(0.0, 0.5),
            alpha_lo: 5.0,
        };
        assert!(stokes_means(&f).unwrap().weak_lo);
        let zero = MeanFields { alpha_lo: 0.0, ..f };
        assert!(stokes_means(&zero).is_err());
    }

    #[test]
    fn means_swap_sign_with_beam_labels() {
        let f = MeanFields {
            alpha_a: Complex64::new(1.0, 0.0),
            alpha_b: Complex64::new(0.0, 0.5),
            alpha_lo: 30.0,
        };
        let g = MeanFields {
            alpha_a: f.alpha_b,
            alpha_b: f.alpha_a,
            ..f
        };
        let (mf, mg) = (stokes_means(&f).unwrap(), stokes_means(&g).unwrap());
        assert!((mf.s1_alpha + mg.s1_beta).abs() < 1e-12);
        assert!((mf.s1_beta + mg.s1_alpha).abs() < 1e-12);
    }

    #[test]
    fn vacuum_sits_on_the_bound() {
        let r = polarization_inseparability(&TwoModeState::vacuum(), 10.0, QuadratureAngle(0.3)).unwrap();
        assert!((r.s_s2 - 1.0).abs() < 1e-15 && (r.s_s3 - 1.0).abs() < 1e-15);
        assert!(!r.entangled);
        assert_eq!(lock_phase(&TwoModeState::vacuum()).0, 0.0);
    }

    #[test]
    fn analytic_sum_is_the_pair_trace() {
        let s = TwoModeState::new(
            1.3,
            1.2,
            Complex64::new(0.1, 0.03),
            Complex64::new(-0.05, 0.0),
            Complex64::new(0.12, -0.02),
            Complex64::new(0.01, 0.02),
        );
        for k in 0..10 {
            let t = QuadratureAngle(0.31 * k as f64);
            let r = polarization_inseparability(&s, 3.0, t).unwrap();
            assert!((r.i_s_normalized - inseparability_at(&s, t)).abs() < 1e-13);
        }
        assert!(polarization_inseparability(&s, 0.0, QuadratureAngle(0.0)).is_err());
    }

    #[test]
    fn real_positive_correlation_locks_at_half_pi() {
        let s = TwoModeState::new(
            1.5,
            1.5,
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.2, 0.0),
            Complex64::new(0.0, 0.0),
        );
        assert!((lock_phase(&s).0 - 0.5 * std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn sampled_vacuum_is_close_to_shot_noise() {
        let cfg = SampledStokesConfig {
            samples: 40_000,
            seed: 3,
            ..Default::default()
        };
        let r = polarization_inseparability_sampled(&TwoModeState::vacuum(), 50.0, QuadratureAngle(0.0), &cfg)
            .unwrap();
        assert!((r.s_s2 - 1.0).abs() < 0.03 && (r.s_s3 - 1.0).abs() < 0.03);
        assert!((r.bound - 2.0).abs() < 1e-12);
    }
}
