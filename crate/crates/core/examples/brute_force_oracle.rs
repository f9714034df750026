//! Closed-form optima against exhaustive searches over bases and phases.

use twomode::entanglement::{best_single_mode_squeezing, maximal_entanglement, sigma_extrema};
use twomode::oracle::{grid_min_inseparability, grid_min_single_mode, random_sigma_bracket, GridSpec};
use twomode::random::{random_physical_state, seeded_rng};

fn main() {
    let mut states = seeded_rng(10);
    let mut rng = seeded_rng(11);
    println!("{:>9} {:>9} {:>9} {:>9} {:>21}", "I*", "grid", "squeeze", "grid", "Σ sampled ⊂ [min, max]");
    for _ in 0..5 {
        let s = random_physical_state(&mut states);
        let best = maximal_entanglement(&s).report.i_min;
        let grid = grid_min_inseparability(&s, GridSpec { points: 31, ..Default::default() });
        let ex = sigma_extrema(&s);
        let b = random_sigma_bracket(&s, 2000, &mut rng);
        println!(
            "{best:>9.5} {:>9.5} {:>9.5} {:>9.5}   [{:.4}, {:.4}] ⊂ [{:.4}, {:.4}]",
            grid.value,
            best_single_mode_squeezing(&s),
            grid_min_single_mode(&s, 91),
            b.min,
            b.max,
            ex.sigma_min,
            ex.sigma_max
        );
    }
}
