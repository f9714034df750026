//! Find the pair with no cross-correlation for random states and show that
//! its inseparability trace is flat.

use std::f64::consts::PI;

use twomode::entanglement::{find_uncorrelated_basis, inseparability_at};
use twomode::random::{random_physical_state, seeded_rng};
use twomode::QuadratureAngle;

fn main() {
    let mut rng = seeded_rng(1);
    println!("{:>10} {:>10} {:>8} {:>8} {:>10} {:>9}", "|m_ab|", "|m_uv|", "c_u", "c_v", "mix", "I spread");
    for _ in 0..8 {
        let s = random_physical_state(&mut rng);
        let uv = find_uncorrelated_basis(&s);
        let trace: Vec<f64> = (0..32)
            .map(|k| inseparability_at(&uv.state, QuadratureAngle(PI * k as f64 / 32.0)))
            .collect();
        let spread = trace.iter().cloned().fold(f64::MIN, f64::max) - trace.iter().cloned().fold(f64::MAX, f64::min);
        println!(
            "{:>10.4} {:>10.1e} {:>8.4} {:>8.4} {:>10.4} {:>9.1e}{}",
            s.m_ab().norm(),
            uv.state.m_ab().norm(),
            uv.c_u,
            uv.c_v,
            uv.mixing_angle,
            spread,
            if uv.degenerate { "  (degenerate)" } else { "" }
        );
    }
}
