//! Entanglement report for a state file.
//!
//!     cargo run --example analyze_state -- data/calibrated_5mhz.json

use std::error::Error;

use twomode::entanglement::{
    best_single_mode_squeezing, find_uncorrelated_basis, inseparability_min, maximal_entanglement,
};
use twomode::{Mode, TwoModeState};

fn main() -> Result<(), Box<dyn Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/calibrated_5mhz.json").into());
    let state = TwoModeState::from_json(&std::fs::read_to_string(&path)?)?.validated()?;
    let [a, b] = state.labels().clone();

    for (mode, name) in [(Mode::A, &a), (Mode::B, &b)] {
        let v = state.min_max_variance(mode);
        println!("{name:>8}: v_min {:.4}  v_max {:.4}  at θ = {:.4}", v.v_min, v.v_max, v.theta_min.radians());
    }

    let r = inseparability_min(&state);
    println!("I_{{{a},{b}}}(θ) = {:.4} + {:.4} cos(2θ − {:.4})", r.mean, r.amplitude, r.phase);
    println!("  min {:.6} at θ* = {:.4}, entangled: {}", r.i_min, r.theta_star.radians(), r.entangled);
    println!("  Σ = {:.6}", r.sigma);

    let uv = find_uncorrelated_basis(&state);
    let best = maximal_entanglement(&state);
    println!("uncorrelated pair: c_u {:.4}  c_v {:.4}  I_uv {:.6}", uv.c_u, uv.c_v, uv.i_uv());
    println!("Σ range [{:.6}, {:.6}]", uv.sigma_min(), uv.sigma_max());
    println!("maximal entanglement I* = {:.6} in {}", best.report.i_min, twomode::cli::basis_label(&best.basis_star));
    println!("best single-mode squeezing {:.6}", best_single_mode_squeezing(&state));
    Ok(())
}
