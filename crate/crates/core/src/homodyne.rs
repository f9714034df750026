//! Monte-Carlo model of the two-detector homodyne measurement.
//!
//! The pair (a, b) is split into `A₁ = (A_a + A_b)/√2` and
//! `A₂ = i(A_a − A_b)/√2`; each is mixed with a noiseless local oscillator of
//! phase θ, so that `⟨δX₁²(θ)⟩ + ⟨δX₂²(θ)⟩ = I_{a,b}(θ)`. The spectrum analyzer
//! is reduced to a variance estimate per θ bin.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt::Write as _;
use std::path::Path;

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixed;
use crate::gaussian::{quadrature_functional, TwoModeState};
use crate::random::seeded_rng;

/// Minimum samples per θ bin.
pub const MIN_SAMPLES: usize = 100;

fn default_theta_end() -> f64 {
    PI
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub bins: usize,
    /// Samples per bin.
    pub samples: usize,
    #[serde(default = "one")]
    pub efficiency: f64,
    #[serde(default)]
    pub theta_start: f64,
    #[serde(default = "default_theta_end")]
    pub theta_end: f64,
    /// Keep every photocurrent sample (memory grows as bins × samples).
    #[serde(default)]
    pub record_traces: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            bins: 90,
            samples: 10_000,
            efficiency: 1.0,
            theta_start: 0.0,
            theta_end: PI,
            record_traces: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(Error::out_of_range("efficiency", self.efficiency, "(0, 1]"));
        }
        if self.bins == 0 {
            return Err(Error::InvalidConfig("zero θ bins".into()));
        }
        if self.samples < MIN_SAMPLES {
            return Err(Error::InvalidConfig(format!(
                "{} samples per bin, need at least {MIN_SAMPLES}",
                self.samples
            )));
        }
        if !(self.theta_start.is_finite() && self.theta_end.is_finite()) {
            return Err(Error::InvalidConfig("non-finite LO ramp".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("run config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// LO phase of bin `k`; the ramp end is excluded.
    pub fn theta(&self, k: usize) -> f64 {
        self.theta_start + (self.theta_end - self.theta_start) * k as f64 / self.bins as f64
    }
}

/// Zero-mean Gaussian sampler for a 4×4 quadrature covariance.
#[derive(Debug, Clone)]
pub struct GaussianSampler {
    factor: Matrix4<f64>,
}

impl GaussianSampler {
    /// Uses the Cholesky factor, or the symmetric square root when the
    /// covariance is only semidefinite.
    pub fn new(v: &Matrix4<f64>) -> Self {
        let v = (v + v.transpose()) * 0.5;
        let factor = match v.cholesky() {
            Some(ch) => ch.l(),
            None => {
                let eig = v.symmetric_eigen();
                let sq = eig.eigenvalues.map(|x| x.max(0.0).sqrt());
                eig.eigenvectors * Matrix4::from_diagonal(&sq) * eig.eigenvectors.transpose()
            }
        };
        GaussianSampler { factor }
    }

    pub fn factor(&self) -> &Matrix4<f64> {
        &self.factor
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vector4<f64> {
        let z = Vector4::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
        self.factor * z
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinStats {
    pub theta: f64,
    pub var1: f64,
    pub var2: f64,
    pub cov12: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRun {
    pub config: RunConfig,
    pub bins: Vec<BinStats>,
    /// Per bin, the photocurrents of detectors 1 and 2 (when recorded).
    pub traces: Option<Vec<[Vec<f64>; 2]>>,
}

/// Detection modes `A₁`, `A₂` as rows over (A_a, A_b).
pub fn detection_rows() -> [[Complex64; 2]; 2] {
    let s = FRAC_1_SQRT_2;
    [
        [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(0.0, s), Complex64::new(0.0, -s)],
    ]
}

pub fn simulate(state: &TwoModeState, config: &RunConfig) -> Result<MeasurementRun> {
    config.validate()?;
    let state = state.clone().validated()?;
    let sampler = GaussianSampler::new(&state.to_quadrature_covariance());
    let mut rng: ChaCha8Rng = seeded_rng(config.seed);
    let [w1, w2] = detection_rows();
    let eta = config.efficiency;
    let (g, l) = (eta.sqrt(), (1.0 - eta).sqrt());
    let mut bins = Vec::with_capacity(config.bins);
    let mut traces = config.record_traces.then(|| Vec::with_capacity(config.bins));
    for k in 0..config.bins {
        let theta = config.theta(k);
        let r1 = quadrature_functional(w1, theta);
        let r2 = quadrature_functional(w2, theta);
        let (mut s11, mut s22, mut s12) = (0.0, 0.0, 0.0);
        let mut rec = traces.as_ref().map(|_| {
            [
                Vec::with_capacity(config.samples),
                Vec::with_capacity(config.samples),
            ]
        });
        for _ in 0..config.samples {
            let x = sampler.sample(&mut rng);
            let (mut x1, mut x2) = (r1.dot(&x), r2.dot(&x));
            if eta < 1.0 {
                let v1: f64 = rng.sample(StandardNormal);
                let v2: f64 = rng.sample(StandardNormal);
                x1 = g * x1 + l * v1;
                x2 = g * x2 + l * v2;
            }
            s11 += x1 * x1;
            s22 += x2 * x2;
            s12 += x1 * x2;
            if let Some(r) = rec.as_mut() {
                r[0].push(x1);
                r[1].push(x2);
            }
        }
        let n = config.samples as f64;
        bins.push(BinStats {
            theta,
            var1: s11 / n,
            var2: s22 / n,
            cov12: s12 / n,
            samples: config.samples,
        });
        if let (Some(t), Some(r)) = (traces.as_mut(), rec) {
            t.push(r);
        }
    }
    Ok(MeasurementRun {
        config: *config,
        bins,
        traces,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub theta: f64,
    pub var1: f64,
    pub var2: f64,
    pub i_est: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InseparabilityTrace {
    pub points: Vec<TracePoint>,
}

impl InseparabilityTrace {
    pub fn min(&self) -> &TracePoint {
        self.points
            .iter()
            .min_by(|a, b| a.i_est.total_cmp(&b.i_est))
            .expect("trace is never empty")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta_rad,var1,var2,i_est,stderr\n");
        for p in &self.points {
            let cells = [p.theta, p.var1, p.var2, p.i_est, p.stderr].map(|x| fixed(x, 9));
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Sum of the two detector variances per bin, with the Gaussian standard
/// error `√(2(σ₁⁴ + σ₂⁴ + 2σ₁₂²)/N)`.
pub fn estimate_inseparability_trace(run: &MeasurementRun) -> Result<InseparabilityTrace> {
    if run.bins.is_empty() {
        return Err(Error::InvalidConfig("run has no θ bins".into()));
    }
    let points = run
        .bins
        .iter()
        .map(|b| {
            if b.samples == 0 {
                return Err(Error::InvalidConfig(format!("empty bin at θ = {}", b.theta)));
            }
            let n = b.samples as f64;
            let var_sum = 2.0 * (b.var1.powi(2) + b.var2.powi(2) + 2.0 * b.cov12.powi(2)) / n;
            Ok(TracePoint {
                theta: b.theta,
                var1: b.var1,
                var2: b.var2,
                i_est: b.var1 + b.var2,
                stderr: var_sum.sqrt(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(InseparabilityTrace { points })
}
