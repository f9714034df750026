//! One circular mode squeezed, the other in vacuum: every equally weighted
//! pair carries half the squeezing and the noise sum is the same in every
//! basis.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use twomode::entanglement::{inseparability_min, sigma_extrema};
use twomode::model::{circular_case_state, KerrSpectrumParams};
use twomode::{Mode, PolarizationRotation, QuadratureAngle};

fn main() -> twomode::Result<()> {
    let params = KerrSpectrumParams {
        squeeze_depth: 0.10,
        ..Default::default()
    };
    let s = circular_case_state(&params, params.band_center_mhz)?;
    let ex = sigma_extrema(&s);
    println!("v_min(σ+) = {:.4}", s.min_max_variance(Mode::A).v_min);
    println!("Σ_min = {:.6}, Σ_max = {:.6}", ex.sigma_min, ex.sigma_max);
    println!("{:>6} {:>10} {:>10} {:>8}", "φ", "v_min", "½(1+V)", "I_min");
    for k in 0..8 {
        let phi = PI * k as f64 / 4.0;
        let pair = PolarizationRotation::from_alpha_beta_phi(FRAC_1_SQRT_2, FRAC_1_SQRT_2, phi)?.apply(&s);
        let v = pair.min_max_variance(Mode::A);
        let half = 0.5 * (1.0 + s.quadrature_variance(Mode::A, QuadratureAngle(v.theta_min.radians())));
        println!("{phi:>6.3} {:>10.6} {half:>10.6} {:>8.4}", v.v_min, inseparability_min(&pair).i_min);
    }
    Ok(())
}
