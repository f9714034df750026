//! Seeded generation of random physical two-mode states.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gaussian::{realify, TwoModeState};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-distributed 2×2 unitary.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> Matrix2<Complex64> {
    let alpha = rng.random::<f64>().sqrt();
    let beta = (1.0 - alpha * alpha).sqrt();
    let [p0, p1, p2] = [0, 1, 2].map(|_| Complex64::from_polar(1.0, 2.0 * PI * rng.random::<f64>()));
    Matrix2::new(p0 * beta, -p0 * p1 * alpha, p2 * alpha, p2 * p1 * beta)
}

/// Thermal occupation in `[1, thermal_max]`, then a random passive mix,
/// single-mode squeezing up to `r_max` on each mode and a second mix.
pub fn random_physical_state_with<R: Rng + ?Sized>(
    rng: &mut R,
    thermal_max: f64,
    r_max: f64,
) -> TwoModeState {
    let nu_a = 1.0 + (thermal_max - 1.0) * rng.random::<f64>();
    let nu_b = 1.0 + (thermal_max - 1.0) * rng.random::<f64>();
    let mut v = Matrix4::from_diagonal(&nalgebra::Vector4::new(nu_a, nu_a, nu_b, nu_b));
    let o1 = realify(&random_unitary(rng));
    v = o1 * v * o1.transpose();
    let ra = r_max * rng.random::<f64>();
    let rb = r_max * rng.random::<f64>();
    let (ea, eb) = ((-ra).exp(), (-rb).exp());
    let sq = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0 / ea, ea, 1.0 / eb, eb));
    v = sq * v * sq;
    let o2 = realify(&random_unitary(rng));
    v = o2 * v * o2.transpose();
    let v = (v + v.transpose()) * 0.5;
    TwoModeState::from_quadrature_covariance(&v).expect("symmetrized covariance")
}

pub fn random_physical_state<R: Rng + ?Sized>(rng: &mut R) -> TwoModeState {
    random_physical_state_with(rng, 1.5, 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_states_are_physical_and_reproducible() {
        let mut r1 = seeded_rng(7);
        let mut r2 = seeded_rng(7);
        for _ in 0..50 {
            let a = random_physical_state(&mut r1);
            let b = random_physical_state(&mut r2);
            assert_eq!(a, b);
            assert!(a.validate().is_ok());
        }
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = seeded_rng(1);
        for _ in 0..20 {
            let u = random_unitary(&mut rng);
            let r = (u * u.adjoint() - Matrix2::identity()).map(|z| z.norm()).max();
            assert!(r < 1e-14);
        }
    }
}
