//! Quadrature entanglement of the ±45° pair mapped onto Stokes-parameter
//! entanglement of two beams, in the strong-LO limit and sampled with a
//! finite local amplitude.

use num_complex::Complex64;
use twomode::entanglement::maximal_entanglement;
use twomode::stokes::{
    lock_phase, polarization_inseparability, polarization_inseparability_sampled, SampledStokesConfig,
};
use twomode::TwoModeState;

fn main() -> twomode::Result<()> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/calibrated_5mhz_096.json"))?;
    let raw = TwoModeState::from_json(&text)?;
    let s = maximal_entanglement(&raw).basis_star.apply(&raw);
    let theta = lock_phase(&s);
    let r = polarization_inseparability(&s, 100.0, theta)?;
    println!("θ_B = {:.4}: S2 {:.4}  S3 {:.4}  sum {:.4}  entangled {}", theta.radians(), r.s_s2, r.s_s3, r.i_s_normalized, r.entangled);

    let cfg = SampledStokesConfig {
        seed: 1,
        samples: 50_000,
        alpha_a: Complex64::new(1.0, 0.0),
        ..Default::default()
    };
    println!("{:>8} {:>8} {:>8}", "α_B/α_a", "sum", "bound");
    for alpha_b in [3.0, 10.0, 30.0, 100.0] {
        let r = polarization_inseparability_sampled(&s, alpha_b, theta, &cfg)?;
        println!("{alpha_b:>8} {:>8.4} {:>8.4}", r.i_s_normalized, r.bound);
    }
    Ok(())
}
