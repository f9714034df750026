//! Basis changes built from waveplates and their beamsplitter picture.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use twomode::entanglement::find_uncorrelated_basis;
use twomode::{PolarizationRotation, TwoModeState, Waveplate};

fn main() -> twomode::Result<()> {
    let hwp = PolarizationRotation::waveplate(Waveplate::Half, PI / 8.0);
    let qwp = PolarizationRotation::waveplate(Waveplate::Quarter, 0.0);
    let measured = qwp.compose(&hwp);
    println!("HWP(22.5°) gives ±45°: {}", twomode::cli::basis_label(&hwp));
    println!(
        "QWP(0°)·HWP(22.5°) is the detection pair: {}",
        measured.same_modes_as(&PolarizationRotation::homodyne_pair(), 1e-12)
    );
    println!(
        "two half-wave plates cancel: {}",
        hwp.compose(&hwp).same_modes_as(&PolarizationRotation::identity(), 1e-12)
    );

    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/calibrated_5mhz.json"))?;
    let uv = find_uncorrelated_basis(&TwoModeState::from_json(&text)?).state;
    for (t, dephase) in [(1.0, 0.0), (0.5, 0.0), (0.5, PI / 2.0), (0.8, 1.0)] {
        let bs = PolarizationRotation::beamsplitter_equivalence(t, dephase)?;
        let pair = bs.apply(&uv);
        println!(
            "T = {t:.1}, dephase {dephase:.3}: |m| {:.4}  I_min {:.4}",
            pair.m_ab().norm(),
            twomode::entanglement::inseparability_min(&pair).i_min
        );
    }
    let check = PolarizationRotation::from_alpha_beta_phi(FRAC_1_SQRT_2, FRAC_1_SQRT_2, PI / 2.0)?;
    println!("T = 0.5 with π/2 dephasing is the circular pair: {}", check.same_modes_as(&PolarizationRotation::circular(), 1e-12));
    Ok(())
}
