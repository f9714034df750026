//! Closed forms against brute-force grids on random physical states.

use twomode::entanglement::{
    best_single_mode_squeezing, equatorial_entanglement, find_uncorrelated_basis,
    maximal_entanglement, sigma_extrema, single_mode_closed_form,
};
use twomode::oracle::{
    grid_min_inseparability, grid_min_single_mode, random_sigma_bracket, trial_inseparability,
    GridSpec,
};
use twomode::random::{random_physical_state, seeded_rng};

#[test]
fn maximal_entanglement_matches_grid_search() {
    let mut rng = seeded_rng(2024);
    for _ in 0..6 {
        let s = random_physical_state(&mut rng);
        let best = maximal_entanglement(&s);
        let grid = grid_min_inseparability(&s, GridSpec::default());
        assert!((best.report.i_min - grid.value).abs() < 5e-3);
        // Refinement rounds bring the grid well below its coarse spacing.
        assert!(
            (best.report.i_min - grid.value).abs() < 1e-6,
            "closed form {} vs grid {}",
            best.report.i_min,
            grid.value
        );
        assert!(grid.value >= best.report.i_min - 1e-12);
    }
}

#[test]
fn single_mode_squeezing_matches_grid_search() {
    let mut rng = seeded_rng(99);
    for _ in 0..20 {
        let s = random_physical_state(&mut rng);
        let eig = best_single_mode_squeezing(&s);
        let grid = grid_min_single_mode(&s, 181);
        assert!(grid >= eig - 1e-12);
        assert!((grid - eig).abs() < 5e-4, "eig {eig} grid {grid}");
        let uv = find_uncorrelated_basis(&s);
        if let Some(cf) = single_mode_closed_form(&uv) {
            assert!((cf - eig).abs() < 1e-12);
        }
    }
}

#[test]
fn sigma_range_brackets_random_bases() {
    let mut rng = seeded_rng(5);
    for _ in 0..10 {
        let s = random_physical_state(&mut rng);
        let ex = sigma_extrema(&s);
        let br = random_sigma_bracket(&s, 10_000, &mut rng);
        assert!(br.min >= ex.sigma_min - 1e-12 && br.max <= ex.sigma_max + 1e-12);
        assert!(br.min - ex.sigma_min < 1e-3 && ex.sigma_max - br.max < 1e-3);
        assert!((equatorial_entanglement(&s) - ex.sigma_max).abs() < 1e-12);
    }
}

#[test]
fn basis_star_realizes_the_optimum_directly() {
    let mut rng = seeded_rng(11);
    for _ in 0..20 {
        let s = random_physical_state(&mut rng);
        let best = maximal_entanglement(&s);
        let pair = best.basis_star.apply(&s);
        let direct = twomode::inseparability_min(&pair).i_min;
        assert!((direct - best.report.i_min).abs() < 1e-12);
        let grid_point = [0.0, 0.0, 0.0, best.report.theta_star.0];
        assert!((trial_inseparability(&pair, grid_point) - best.report.i_min).abs() < 1e-12);
    }
}
