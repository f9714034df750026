//! Character map of I_min over the sphere of polarization bases, in the
//! frame of the uncorrelated pair. Rows run from the S'3 pole at the top to
//! the other pole; columns are longitude around S'3 starting at S'1.

use twomode::entanglement::{find_uncorrelated_basis, poincare_sweep};
use twomode::TwoModeState;

fn main() -> twomode::Result<()> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/calibrated_5mhz.json"))?;
    let state = TwoModeState::from_json(&text)?;
    let (n_lat, n_lon) = (13, 48);
    let sweep = poincare_sweep(&state, n_lat, n_lon)?;
    let (lo, hi) = (sweep.argmin().i_min, sweep.argmax().i_min);
    let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    for lat in (0..n_lat).rev() {
        let row: String = (0..n_lon)
            .map(|lon| {
                let x = (sweep.at(lat, lon).i_min - lo) / (hi - lo).max(1e-300);
                shades[((x * 9.0).round() as usize).min(9)]
            })
            .collect();
        println!("|{row}|");
    }
    let uv = find_uncorrelated_basis(&state);
    println!("' ' = {lo:.4} (Σ_min {:.4}),  '@' = {hi:.4} (I_uv {:.4})", uv.sigma_min(), uv.i_uv());
    println!("I at S'2 = {:.4} (Σ_max {:.4})", sweep.at(n_lat / 2, n_lon / 4).i_min, uv.sigma_max());
    Ok(())
}
