//! Two-mode Gaussian fluctuation states.
//!
//! A [`TwoModeState`] stores the second moments of the fluctuation operators
//! `δA_a`, `δA_b` of two orthogonally polarized modes. Everything is in
//! shot-noise units: quadratures are `X(θ) = A e^{-iθ} + A† e^{iθ}` with
//! `[X, Y] = 2i`, so the vacuum has unit variance for every quadrature.
//!
//! The equivalent real covariance matrix uses the ordering
//! `(X_a, Y_a, X_b, Y_b)` at `θ = 0` and the symmetrized convention
//! `V_ij = ½⟨{R_i, R_j}⟩`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Eigenvalue tolerance for the uncertainty relation `V + iΩ ⪰ 0`.
pub const EPS_PHYS: f64 = 1e-9;
/// Magnitude below which a complex moment is treated as zero.
pub const EPS_DEG: f64 = 1e-12;

const ASYMMETRY_TOL: f64 = 1e-12;

/// Quadrature angle in radians, `X(θ) = A e^{-iθ} + A† e^{iθ}`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuadratureAngle(pub f64);

impl QuadratureAngle {
    pub fn radians(self) -> f64 {
        self.0
    }

    /// Representative in `[0, π)`; every quadrature quantity is π-periodic.
    pub fn reduced(self) -> Self {
        let mut t = self.0.rem_euclid(PI);
        if t >= PI {
            t = 0.0;
        }
        QuadratureAngle(t)
    }

    /// The conjugate quadrature `Y(θ) = X(θ + π/2)`.
    pub fn conjugate(self) -> Self {
        QuadratureAngle(self.0 + PI / 2.0)
    }
}

impl From<f64> for QuadratureAngle {
    fn from(theta: f64) -> Self {
        QuadratureAngle(theta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    A,
    B,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Mode::A),
            "b" | "B" => Ok(Mode::B),
            other => Err(Error::InvalidMode(other.to_string())),
        }
    }
}

/// Second moments of two bosonic mode fluctuations.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    n_a: f64,
    n_b: f64,
    c_a: Complex64,
    c_b: Complex64,
    m_ab: Complex64,
    k_ab: Complex64,
    labels: [String; 2],
}

impl TwoModeState {
    /// `n_*` are the symmetrized occupations `⟨δA†δA + δAδA†⟩`, `c_*` the
    /// anomalous moments `⟨δA²⟩`, `m_ab = ⟨δA_aδA_b⟩` and `k_ab = ⟨δA_aδA_b†⟩`.
    pub fn new(
        n_a: f64,
        n_b: f64,
        c_a: Complex64,
        c_b: Complex64,
        m_ab: Complex64,
        k_ab: Complex64,
    ) -> Self {
        TwoModeState {
            n_a,
            n_b,
            c_a,
            c_b,
            m_ab,
            k_ab,
            labels: ["a".to_string(), "b".to_string()],
        }
    }

    pub fn vacuum() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        TwoModeState::new(1.0, 1.0, zero, zero, zero, zero)
    }

    /// Two independent modes with the given single-mode moments.
    pub fn product(n_a: f64, c_a: Complex64, n_b: f64, c_b: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        TwoModeState::new(n_a, n_b, c_a, c_b, zero, zero)
    }

    pub fn with_labels(mut self, a: impl Into<String>, b: impl Into<String>) -> Self {
        self.labels = [a.into(), b.into()];
        self
    }

    pub fn n_a(&self) -> f64 {
        self.n_a
    }
    pub fn n_b(&self) -> f64 {
        self.n_b
    }
    pub fn c_a(&self) -> Complex64 {
        self.c_a
    }
    pub fn c_b(&self) -> Complex64 {
        self.c_b
    }
    pub fn m_ab(&self) -> Complex64 {
        self.m_ab
    }
    pub fn k_ab(&self) -> Complex64 {
        self.k_ab
    }
    pub fn labels(&self) -> &[String; 2] {
        &self.labels
    }

    pub fn n(&self, mode: Mode) -> f64 {
        match mode {
            Mode::A => self.n_a,
            Mode::B => self.n_b,
        }
    }

    pub fn c(&self, mode: Mode) -> Complex64 {
        match mode {
            Mode::A => self.c_a,
            Mode::B => self.c_b,
        }
    }

    /// `n_a + n_b`, the trace of the correlation matrix; basis independent.
    pub fn total_noise(&self) -> f64 {
        self.n_a + self.n_b
    }

    /// Anomalous moment matrix `C_ij = ⟨δA_i δA_j⟩` (complex symmetric).
    pub fn anomalous_matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(self.c_a, self.m_ab, self.m_ab, self.c_b)
    }

    /// Normal moment matrix `N_ij = ½⟨{δA_i, δA_j†}⟩` (Hermitian).
    pub fn normal_matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(
            Complex64::new(self.n_a / 2.0, 0.0),
            self.k_ab,
            self.k_ab.conj(),
            Complex64::new(self.n_b / 2.0, 0.0),
        )
    }

    /// Rebuilds a state from moment matrices. Symmetric/Hermitian parts are
    /// taken, so round-off asymmetry from a rotation does not leak in.
    pub(crate) fn from_moment_matrices(
        c: &Matrix2<Complex64>,
        n: &Matrix2<Complex64>,
        labels: [String; 2],
    ) -> Self {
        TwoModeState {
            n_a: 2.0 * n[(0, 0)].re,
            n_b: 2.0 * n[(1, 1)].re,
            c_a: c[(0, 0)],
            c_b: c[(1, 1)],
            m_ab: (c[(0, 1)] + c[(1, 0)]) * 0.5,
            k_ab: (n[(0, 1)] + n[(1, 0)].conj()) * 0.5,
            labels,
        }
    }

    /// Real 4×4 quadrature covariance in the ordering `(X_a, Y_a, X_b, Y_b)`.
    pub fn to_quadrature_covariance(&self) -> Matrix4<f64> {
        let (ca, cb, m, k) = (self.c_a, self.c_b, self.m_ab, self.k_ab);
        let xx_a = self.n_a + 2.0 * ca.re;
        let yy_a = self.n_a - 2.0 * ca.re;
        let xy_a = 2.0 * ca.im;
        let xx_b = self.n_b + 2.0 * cb.re;
        let yy_b = self.n_b - 2.0 * cb.re;
        let xy_b = 2.0 * cb.im;
        let xa_xb = 2.0 * (m.re + k.re);
        let xa_yb = 2.0 * (m.im - k.im);
        let ya_xb = 2.0 * (m.im + k.im);
        let ya_yb = 2.0 * (k.re - m.re);
        Matrix4::new(
            xx_a, xy_a, xa_xb, xa_yb, //
            xy_a, yy_a, ya_xb, ya_yb, //
            xa_xb, ya_xb, xx_b, xy_b, //
            xa_yb, ya_yb, xy_b, yy_b,
        )
    }

    /// Inverse of [`TwoModeState::to_quadrature_covariance`].
    pub fn from_quadrature_covariance(v: &Matrix4<f64>) -> Result<Self> {
        let scale = v.amax().max(1.0);
        let asymmetry = (v - v.transpose()).amax();
        if !asymmetry.is_finite() || asymmetry > ASYMMETRY_TOL * scale {
            return Err(Error::NonSymmetric { asymmetry });
        }
        let s = (v + v.transpose()) * 0.5;
        let n_a = 0.5 * (s[(0, 0)] + s[(1, 1)]);
        let n_b = 0.5 * (s[(2, 2)] + s[(3, 3)]);
        let c_a = Complex64::new(0.25 * (s[(0, 0)] - s[(1, 1)]), 0.5 * s[(0, 1)]);
        let c_b = Complex64::new(0.25 * (s[(2, 2)] - s[(3, 3)]), 0.5 * s[(2, 3)]);
        let (xa_xb, xa_yb, ya_xb, ya_yb) = (s[(0, 2)], s[(0, 3)], s[(1, 2)], s[(1, 3)]);
        let m = Complex64::new(0.25 * (xa_xb - ya_yb), 0.25 * (xa_yb + ya_xb));
        let k = Complex64::new(0.25 * (xa_xb + ya_yb), 0.25 * (ya_xb - xa_yb));
        Ok(TwoModeState::new(n_a, n_b, c_a, c_b, m, k))
    }

    /// Checks finiteness, symmetry of `V` and the uncertainty relation.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let fields = [
            ("n_a", self.n_a),
            ("n_b", self.n_b),
            ("c_a.re", self.c_a.re),
            ("c_a.im", self.c_a.im),
            ("c_b.re", self.c_b.re),
            ("c_b.im", self.c_b.im),
            ("m_ab.re", self.m_ab.re),
            ("m_ab.im", self.m_ab.im),
            ("k_ab.re", self.k_ab.re),
            ("k_ab.im", self.k_ab.im),
        ];
        for (field, value) in fields {
            if !value.is_finite() {
                violations.push(Violation::NonFinite { field, value });
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }

        let v = self.to_quadrature_covariance();
        let asymmetry = (v - v.transpose()).amax();
        if asymmetry > ASYMMETRY_TOL * v.amax().max(1.0) {
            violations.push(Violation::Asymmetric { asymmetry });
        }
        let min_eigenvalue = uncertainty_min_eigenvalue(&v);
        if min_eigenvalue < -EPS_PHYS {
            violations.push(Violation::Uncertainty { min_eigenvalue });
        }
        ValidationReport { violations }
    }

    /// Returns the state if physical, otherwise the violated invariants.
    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_ok() {
            Ok(self)
        } else {
            Err(Error::Unphysical(report))
        }
    }

    /// `⟨δX²(θ)⟩ = n + 2 Re(c e^{-2iθ})`.
    pub fn quadrature_variance(&self, mode: Mode, theta: QuadratureAngle) -> f64 {
        let phase = Complex64::from_polar(1.0, -2.0 * theta.0);
        self.n(mode) + 2.0 * (self.c(mode) * phase).re
    }

    pub fn min_max_variance(&self, mode: Mode) -> MinMaxVariance {
        let n = self.n(mode);
        let c = self.c(mode);
        let abs = c.norm();
        let theta_min = if abs < EPS_DEG {
            QuadratureAngle(0.0)
        } else {
            QuadratureAngle(0.5 * (c.arg() + PI)).reduced()
        };
        MinMaxVariance {
            v_min: n - 2.0 * abs,
            v_max: n + 2.0 * abs,
            theta_min,
        }
    }

    /// Multiplies each mode operator by a phase: `A_a → e^{iχ_a} A_a`.
    pub fn with_local_phases(&self, chi_a: f64, chi_b: f64) -> Self {
        let ea = Complex64::from_polar(1.0, chi_a);
        let eb = Complex64::from_polar(1.0, chi_b);
        TwoModeState {
            n_a: self.n_a,
            n_b: self.n_b,
            c_a: self.c_a * ea * ea,
            c_b: self.c_b * eb * eb,
            m_ab: self.m_ab * ea * eb,
            k_ab: self.k_ab * ea * eb.conj(),
            labels: self.labels.clone(),
        }
    }

    /// Exchanges the roles of modes a and b.
    pub fn swapped(&self) -> Self {
        TwoModeState {
            n_a: self.n_b,
            n_b: self.n_a,
            c_a: self.c_b,
            c_b: self.c_a,
            m_ab: self.m_ab,
            k_ab: self.k_ab.conj(),
            labels: [self.labels[1].clone(), self.labels[0].clone()],
        }
    }

    /// Largest componentwise difference to another state.
    pub fn max_abs_diff(&self, other: &TwoModeState) -> f64 {
        [
            (self.n_a - other.n_a).abs(),
            (self.n_b - other.n_b).abs(),
            (self.c_a - other.c_a).norm(),
            (self.c_b - other.c_b).norm(),
            (self.m_ab - other.m_ab).norm(),
            (self.k_ab - other.k_ab).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinMaxVariance {
    pub v_min: f64,
    pub v_max: f64,
    pub theta_min: QuadratureAngle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonFinite { field: &'static str, value: f64 },
    Asymmetric { asymmetry: f64 },
    Uncertainty { min_eigenvalue: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite { field, value } => write!(f, "{field} is not finite ({value})"),
            Violation::Asymmetric { asymmetry } => {
                write!(f, "covariance asymmetry {asymmetry:.3e}")
            }
            Violation::Uncertainty { min_eigenvalue } => write!(
                f,
                "uncertainty relation violated: V + iΩ has eigenvalue {min_eigenvalue:.6e}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "physical");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Symplectic form for `[X, Y] = 2i` in the ordering `(X_a, Y_a, X_b, Y_b)`.
pub fn symplectic_form() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    )
}

/// Smallest eigenvalue of the Hermitian matrix `V + iΩ`.
pub fn uncertainty_min_eigenvalue(v: &Matrix4<f64>) -> f64 {
    let omega = symplectic_form();
    let h = Matrix4::from_fn(|i, j| Complex64::new(0.5 * (v[(i, j)] + v[(j, i)]), omega[(i, j)]));
    h.symmetric_eigenvalues().min()
}

/// Coefficients `r` such that the quadrature `w·A e^{-iθ} + h.c.` equals
/// `r · (X_a, Y_a, X_b, Y_b)`.
pub fn quadrature_functional(w: [Complex64; 2], theta: f64) -> Vector4<f64> {
    let rot = Complex64::from_polar(1.0, -theta);
    let z0 = w[0] * rot;
    let z1 = w[1] * rot;
    Vector4::new(z0.re, -z0.im, z1.re, -z1.im)
}

/// Real representation of a passive transformation `A' = U A` acting on
/// `(X_a, Y_a, X_b, Y_b)`; it is orthogonal and symplectic.
pub fn realify(u: &Matrix2<Complex64>) -> Matrix4<f64> {
    let mut r = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let z = u[(i, j)];
            r[(2 * i, 2 * j)] = z.re;
            r[(2 * i, 2 * j + 1)] = -z.im;
            r[(2 * i + 1, 2 * j)] = z.im;
            r[(2 * i + 1, 2 * j + 1)] = z.re;
        }
    }
    r
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    #[serde(default = "default_labels")]
    labels: [String; 2],
    n_a: f64,
    n_b: f64,
    c_a: [f64; 2],
    c_b: [f64; 2],
    m_ab: [f64; 2],
    k_ab: [f64; 2],
}

fn default_labels() -> [String; 2] {
    ["a".into(), "b".into()]
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl TwoModeState {
    /// Parses the JSON state format
    /// `{"labels":[..],"n_a":..,"n_b":..,"c_a":[re,im],"c_b":..,"m_ab":..,"k_ab":..}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("state file: {e}")))?;
        let values = [
            ("n_a", file.n_a),
            ("n_b", file.n_b),
            ("c_a[0]", file.c_a[0]),
            ("c_a[1]", file.c_a[1]),
            ("c_b[0]", file.c_b[0]),
            ("c_b[1]", file.c_b[1]),
            ("m_ab[0]", file.m_ab[0]),
            ("m_ab[1]", file.m_ab[1]),
            ("k_ab[0]", file.k_ab[0]),
            ("k_ab[1]", file.k_ab[1]),
        ];
        if let Some((name, v)) = values.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Parse(format!("state file: field {name} is not finite ({v})")));
        }
        let [la, lb] = file.labels;
        Ok(TwoModeState::new(
            file.n_a,
            file.n_b,
            complex(file.c_a),
            complex(file.c_b),
            complex(file.m_ab),
            complex(file.k_ab),
        )
        .with_labels(la, lb))
    }

    pub fn to_json(&self) -> String {
        let file = StateFile {
            labels: self.labels.clone(),
            n_a: self.n_a,
            n_b: self.n_b,
            c_a: pair(self.c_a),
            c_b: pair(self.c_b),
            m_ab: pair(self.m_ab),
            k_ab: pair(self.k_ab),
        };
        serde_json::to_string_pretty(&file).expect("state serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vacuum_is_physical_with_identity_covariance() {
        let vac = TwoModeState::vacuum();
        assert!(vac.validate().is_ok());
        assert_eq!(vac.to_quadrature_covariance(), Matrix4::identity());
    }

    #[test]
    fn sub_vacuum_occupation_is_rejected() {
        let s = TwoModeState::product(0.5, c(0.0, 0.0), 1.0, c(0.0, 0.0));
        let report = s.validate();
        assert!(matches!(
            report.violations.as_slice(),
            [Violation::Uncertainty { min_eigenvalue }] if *min_eigenvalue < -0.4
        ));
    }

    #[test]
    fn mildly_squeezed_pair_passes() {
        let s = TwoModeState::product(1.025, c(0.025, 0.0), 1.025, c(0.025, 0.0));
        assert!(s.validate().is_ok());
        let mm = s.min_max_variance(Mode::A);
        assert!((mm.v_min - 0.975).abs() < 1e-15);
        assert!((mm.v_max - 1.075).abs() < 1e-15);
        assert!(mm.v_min * mm.v_max >= 1.0);
    }

    #[test]
    fn non_finite_fields_are_reported() {
        let s = TwoModeState::product(f64::NAN, c(0.0, 0.0), 1.0, c(0.0, 0.0));
        assert!(matches!(
            s.validate().violations[0],
            Violation::NonFinite { field: "n_a", .. }
        ));
    }

    #[test]
    fn variance_formula_examples() {
        let vac = TwoModeState::vacuum();
        for k in 0..10 {
            let t = QuadratureAngle(0.37 * k as f64);
            assert_eq!(vac.quadrature_variance(Mode::B, t), 1.0);
        }
        let s = TwoModeState::product(1.025, c(0.025, 0.0), 1.0, c(0.0, 0.0));
        let v = s.quadrature_variance(Mode::A, QuadratureAngle(PI / 2.0));
        assert!((v - 0.975).abs() < 1e-15);
    }

    #[test]
    fn min_max_for_vacuum_uses_zero_angle() {
        let mm = TwoModeState::vacuum().min_max_variance(Mode::A);
        assert_eq!((mm.v_min, mm.v_max, mm.theta_min.0), (1.0, 1.0, 0.0));
    }

    #[test]
    fn theta_min_attains_minimum() {
        let s = TwoModeState::product(1.3, c(-0.1, 0.2), 1.0, c(0.0, 0.0));
        let mm = s.min_max_variance(Mode::A);
        let at = s.quadrature_variance(Mode::A, mm.theta_min);
        assert!((at - mm.v_min).abs() < 1e-14);
        assert!((0.0..PI).contains(&mm.theta_min.0));
    }

    #[test]
    fn mode_tags_parse() {
        assert_eq!("a".parse::<Mode>().unwrap(), Mode::A);
        assert_eq!("B".parse::<Mode>().unwrap(), Mode::B);
        assert!(matches!("c".parse::<Mode>(), Err(Error::InvalidMode(_))));
    }

    #[test]
    fn anomalous_cross_moment_lands_in_off_diagonal_blocks() {
        // m_ab = i/2: only the X_a Y_b and Y_a X_b entries carry 2 Im m.
        let s = TwoModeState::new(1.5, 1.5, c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.5), c(0.0, 0.0));
        let v = s.to_quadrature_covariance();
        assert_eq!(v[(0, 3)], 1.0);
        assert_eq!(v[(1, 2)], 1.0);
        assert_eq!(v[(0, 2)], 0.0);
        assert_eq!(v[(1, 3)], 0.0);
    }

    #[test]
    fn non_symmetric_matrix_is_rejected() {
        let mut v = Matrix4::identity();
        v[(0, 1)] = 0.1;
        assert!(matches!(
            TwoModeState::from_quadrature_covariance(&v),
            Err(Error::NonSymmetric { .. })
        ));
    }

    #[test]
    fn json_rejects_missing_field() {
        let text = r#"{"labels":["x","y"],"n_a":1.0,"c_a":[0,0],"c_b":[0,0],"m_ab":[0,0],"k_ab":[0,0]}"#;
        let err = TwoModeState::from_json(text).unwrap_err().to_string();
        assert!(err.contains("n_b"), "{err}");
    }

    #[test]
    fn json_rejects_overflowing_number() {
        let text = r#"{"labels":["x","y"],"n_a":1e999,"n_b":1.0,"c_a":[0,0],"c_b":[0,0],"m_ab":[0,0],"k_ab":[0,0]}"#;
        assert!(TwoModeState::from_json(text).is_err());
    }

    #[test]
    fn json_round_trip_keeps_labels() {
        let s = TwoModeState::new(1.2, 1.1, c(0.1, 0.0), c(0.0, -0.05), c(0.01, 0.02), c(0.0, 0.03))
            .with_labels("x", "y");
        let back = TwoModeState::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn swap_and_local_phase_are_consistent_with_covariance() {
        let s = TwoModeState::new(1.2, 1.1, c(0.1, 0.0), c(0.0, -0.05), c(0.01, 0.02), c(0.0, 0.03));
        let u = Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let r = realify(&u);
        let v = r * s.to_quadrature_covariance() * r.transpose();
        let via_cov = TwoModeState::from_quadrature_covariance(&v).unwrap();
        assert!(via_cov.max_abs_diff(&s.swapped()) < 1e-15);

        let (ca, cb) = (0.3, -1.1);
        let u = Matrix2::new(
            Complex64::from_polar(1.0, ca),
            c(0.0, 0.0),
            c(0.0, 0.0),
            Complex64::from_polar(1.0, cb),
        );
        let r = realify(&u);
        let v = r * s.to_quadrature_covariance() * r.transpose();
        let via_cov = TwoModeState::from_quadrature_covariance(&v).unwrap();
        assert!(via_cov.max_abs_diff(&s.with_local_phases(ca, cb)) < 1e-15);
    }
}
