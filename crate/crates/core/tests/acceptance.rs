//! One pass/fail line per acceptance criterion. Exits non-zero if any fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::Rng;
use serde_json::Value;
use twomode::entanglement::{
    evaluate_direction, find_uncorrelated_basis, inseparability_min, maximal_entanglement,
    poincare_sweep, poincare_sweep_in_frame, sigma, sigma_extrema, SphereFrame,
};
use twomode::gaussian::QuadratureAngle;
use twomode::homodyne::{estimate_inseparability_trace, simulate, RunConfig};
use twomode::model::{diagonal_rotation, frequency_sweep, KerrSpectrumParams, PolarizationCase};
use twomode::oracle::{grid_min_inseparability, GridSpec};
use twomode::random::{random_physical_state, random_unitary, seeded_rng};
use twomode::{Mode, PolarizationRotation, TwoModeState};

const TOL_CALIBRATED: f64 = 1e-10;
const TOL_STOKES_CLASS: f64 = 0.01;
const TOL_ORACLE: f64 = 5e-3;
const TOL_M_UV: f64 = 1e-10;
const TOL_SPHERE: f64 = 1e-8;
const TOL_CIRCULAR: f64 = 1e-12;
const TOL_S1_ROTATION: f64 = 1e-10;
const TOL_HIGH_FREQ_GAP: f64 = 1e-3;
const TOL_PHI_C: f64 = 1e-3;
const TOL_INVARIANCE: f64 = 1e-10;
const COVERAGE: f64 = 0.99;

const BIN: &str = env!("CARGO_BIN_EXE_twomode");

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn load(name: &str) -> TwoModeState {
    TwoModeState::from_json(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

fn cli(args: &[&str]) -> String {
    let out = Command::new(BIN)
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("TWOMODE_SEED")
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&cli(args)).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn calibrated_maximal_entanglement() -> Outcome {
    let t = Instant::now();
    let v = json(&["analyze", "-i", "data/calibrated_5mhz.json"]);
    let secs = t.elapsed().as_secs_f64();
    let best = &v["report"]["maximal_entanglement"];
    let i_star = best["i_min"].as_f64().unwrap();
    let basis = best["basis"].as_str().unwrap().to_string();
    let state = load("calibrated_5mhz.json");
    let vx = state.min_max_variance(Mode::A).v_min;
    let vy = state.min_max_variance(Mode::B).v_min;
    check(
        (i_star - 1.90).abs() < TOL_CALIBRATED
            && basis == "+45,-45"
            && (vx - 0.95).abs() < TOL_CALIBRATED
            && (vy - 0.95).abs() < TOL_CALIBRATED
            && secs < 1.0,
        format!("I* = {i_star:.12}, basis {basis}, v_min(x) = {vx:.6}, v_min(y) = {vy:.6}, {secs:.3} s"),
    )
}

fn calibrated_polarization_entanglement() -> Outcome {
    let t = Instant::now();
    let a = json(&["stokes", "-i", "data/calibrated_5mhz.json", "--lock"]);
    let b = json(&["stokes", "-i", "data/calibrated_5mhz_096.json", "--lock"]);
    let secs = t.elapsed().as_secs_f64() / 2.0;
    let get = |v: &Value, k: &str| v["report"][k].as_f64().unwrap();
    let (s2, s3) = (get(&a, "s_s2"), get(&a, "s_s3"));
    let i_ab = a["i_ab_at_theta_b"].as_f64().unwrap();
    let sum096 = get(&b, "i_s_normalized");
    let ok = (s2 - 0.95).abs() < TOL_STOKES_CLASS
        && (s3 - 0.95).abs() < TOL_STOKES_CLASS
        && (s2 + s3 - i_ab).abs() < TOL_CALIBRATED
        && (sum096 - 1.92).abs() < TOL_CALIBRATED
        && b["report"]["entangled"] == true
        && secs < 1.0;
    check(
        ok,
        format!(
            "s_s2 = {s2:.6}, s_s3 = {s3:.6}, I_ab(θ_B) = {i_ab:.6}; variant sum = {sum096:.12}; {secs:.3} s per run"
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let mut rng = seeded_rng(3);
    let (mut worst, mut worst_m) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let s = random_physical_state(&mut rng);
        let uv = find_uncorrelated_basis(&s);
        let closed = maximal_entanglement(&s).report.i_min;
        let grid = grid_min_inseparability(&s, GridSpec::default()).value;
        worst = worst.max((closed - grid).abs());
        worst_m = worst_m.max(uv.state.m_ab().norm());
    }
    let secs = t.elapsed().as_secs_f64();
    check(
        worst <= TOL_ORACLE && worst_m < TOL_M_UV && secs < 300.0,
        format!("200 states: max |closed − grid| = {worst:.2e}, max |m_uv| = {worst_m:.2e}, {secs:.1} s"),
    )
}

fn poincare_geometry() -> Outcome {
    let (n_lat, n_lon) = (9, 16);
    let (eq, s1p, s1m, s2p) = (4, 0, 8, 4);
    let mut rng = seeded_rng(4);
    let mut worst = [0.0f64; 4];
    let mut min_iuv = f64::INFINITY;
    for _ in 0..50 {
        let s = random_physical_state(&mut rng);
        let uv = find_uncorrelated_basis(&s);
        let ex = uv.sigma_extrema();
        let sw = poincare_sweep(&s, n_lat, n_lon).unwrap();
        let poles = [sw.at(0, 0).i_min, sw.at(n_lat - 1, 0).i_min];
        worst[0] = worst[0].max(poles.iter().map(|p| (p - ex.sigma_min).abs()).fold(0.0, f64::max));
        let top = sw.argmax().i_min;
        for lon in [s1p, s1m] {
            let i = sw.at(eq, lon).i_min;
            worst[1] = worst[1].max((i - top).abs()).max((i - uv.i_uv()).abs());
        }
        for lon in 0..n_lon {
            worst[2] = worst[2].max((sw.at(eq, lon).sigma - ex.sigma_min).abs());
        }
        worst[3] = worst[3].max((sw.at(eq, s2p).i_min - ex.sigma_max).abs());
        min_iuv = min_iuv.min(uv.i_uv());
    }
    check(
        worst.iter().all(|w| *w < TOL_SPHERE) && min_iuv >= 2.0,
        format!(
            "50 states: poles {:.1e}, S'1 max {:.1e}, equator Σ {:.1e}, S'2 {:.1e}; min I_uv = {min_iuv:.6}",
            worst[0], worst[1], worst[2], worst[3]
        ),
    )
}

fn circular_identities() -> Outcome {
    let s = load("circular_case.json");
    let vu_min = s.min_max_variance(Mode::A).v_min;
    let ex = sigma_extrema(&s);
    let sig = (ex.sigma_min - (vu_min + 1.0)).abs().max((ex.sigma_max - (vu_min + 1.0)).abs());
    let mut eq = 0.0f64;
    for j in 0..16 {
        let phi = 2.0 * PI * j as f64 / 16.0;
        let pair = PolarizationRotation::from_alpha_beta_phi(FRAC_1_SQRT_2, FRAC_1_SQRT_2, phi)
            .unwrap()
            .apply(&s);
        for k in 0..36 {
            let t = QuadratureAngle(PI * k as f64 / 36.0);
            let want = 0.5 * (1.0 + s.quadrature_variance(Mode::A, t));
            for m in [Mode::A, Mode::B] {
                eq = eq.max((pair.quadrature_variance(m, t) - want).abs());
            }
        }
    }
    let mut rot = 0.0f64;
    let base = poincare_sweep_in_frame(&s, 9, 16, SphereFrame::Input).unwrap();
    let mut rng = seeded_rng(5);
    for _ in 0..20 {
        let chi: f64 = rng.random_range(-PI..PI);
        let turned = poincare_sweep_in_frame(&s.with_local_phases(0.0, chi), 9, 16, SphereFrame::Input).unwrap();
        for (a, b) in base.points.iter().zip(&turned.points) {
            rot = rot.max((a.i_min - b.i_min).abs()).max((a.sigma - b.sigma).abs());
        }
        let p = base.points[rng.random_range(0..base.points.len())].s;
        let (c, sn) = (chi.cos(), chi.sin());
        let q = [p[0], c * p[1] - sn * p[2], sn * p[1] + c * p[2]];
        let (ea, eb) = (evaluate_direction(&s, p).unwrap(), evaluate_direction(&s, q).unwrap());
        rot = rot.max((ea.i_min - eb.i_min).abs()).max((ea.sigma - eb.sigma).abs());
    }
    check(
        sig < TOL_CIRCULAR && eq < TOL_CIRCULAR && rot < TOL_S1_ROTATION,
        format!("Σ extrema vs v_min(u)+1 {sig:.1e}, equatorial variances {eq:.1e}, S1 rotation {rot:.1e}"),
    )
}

fn frequency_behavior() -> Outcome {
    let p = KerrSpectrumParams::default();
    let gamma = p.pump_rate_mhz();
    let freqs: Vec<f64> = (0..=400).map(|k| 0.01 * 1e4f64.powf(k as f64 / 400.0)).collect();
    let sweep = frequency_sweep(&p, PolarizationCase::Linear, &freqs).unwrap();
    let ordered = sweep.rows.iter().all(|r| r.i45 >= r.istar - 1e-12);
    let high_gap = sweep
        .rows
        .iter()
        .filter(|r| r.freq_mhz > 10.0 * gamma)
        .map(|r| r.i45 - r.istar)
        .fold(0.0, f64::max);
    let low_gap = sweep
        .rows
        .iter()
        .filter(|r| r.freq_mhz < gamma)
        .map(|r| r.i45 - r.istar)
        .fold(f64::INFINITY, f64::min);
    let above: Vec<f64> = sweep
        .rows
        .iter()
        .filter(|r| r.freq_mhz >= p.band_center_mhz)
        .map(|r| r.phi_c)
        .collect();
    let monotone = above.windows(2).all(|w| w[1] <= w[0]);
    let at_100 = frequency_sweep(&p, PolarizationCase::Linear, &[100.0 * gamma]).unwrap().rows[0].phi_c;
    check(
        ordered && high_gap < TOL_HIGH_FREQ_GAP && low_gap > 0.0 && monotone && at_100.abs() < TOL_PHI_C,
        format!(
            "max gap above 10γ_p {high_gap:.1e}, min gap below γ_p {low_gap:.1e}, φ_C monotone {monotone}, φ_C(100γ_p) = {at_100:.1e}"
        ),
    )
}

fn homodyne_statistics() -> Outcome {
    let t = Instant::now();
    let samples = 100_000;
    let vac = RunConfig {
        seed: 7,
        bins: 100,
        samples,
        ..Default::default()
    };
    let trace = estimate_inseparability_trace(&simulate(&TwoModeState::vacuum(), &vac).unwrap()).unwrap();
    let sd = (2.0 / samples as f64).sqrt();
    let det_ok = trace
        .points
        .iter()
        .flat_map(|p| [p.var1, p.var2])
        .filter(|v| (v - 1.0).abs() <= 3.0 * sd)
        .count() as f64
        / (2 * trace.points.len()) as f64;
    let sum_ok = trace
        .points
        .iter()
        .filter(|p| (p.i_est - 2.0).abs() <= 3.0 * p.stderr)
        .count() as f64
        / trace.points.len() as f64;
    let diag = diagonal_rotation().apply(&load("calibrated_5mhz.json"));
    let cfg = RunConfig {
        seed: 8,
        bins: 36,
        samples,
        ..Default::default()
    };
    let run = estimate_inseparability_trace(&simulate(&diag, &cfg).unwrap()).unwrap();
    let low = run.min();
    let secs = t.elapsed().as_secs_f64();
    check(
        det_ok >= COVERAGE && sum_ok >= COVERAGE && (low.i_est - 1.90).abs() <= 3.0 * low.stderr && secs < 30.0,
        format!(
            "vacuum coverage {:.1}% per detector, {:.1}% summed; ±45 minimum {:.4} ± {:.4} at θ = {:.3}; {secs:.1} s",
            100.0 * det_ok,
            100.0 * sum_ok,
            low.i_est,
            low.stderr,
            low.theta
        ),
    )
}

fn invariance_suite() -> Outcome {
    let mut rng = seeded_rng(9);
    let (mut phase, mut trace) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let s = random_physical_state(&mut rng);
        let (i0, s0) = (inseparability_min(&s).i_min, sigma(&s));
        let best0 = maximal_entanglement(&s).report.i_min;
        for _ in 0..100 {
            let (xa, xb): (f64, f64) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
            let t = s.with_local_phases(xa, xb);
            phase = phase
                .max((inseparability_min(&t).i_min - i0).abs())
                .max((sigma(&t) - s0).abs())
                .max((maximal_entanglement(&t).report.i_min - best0).abs());
            let r = PolarizationRotation::from_matrix(random_unitary(&mut rng)).unwrap();
            trace = trace.max((r.apply(&s).total_noise() - s.total_noise()).abs());
        }
    }
    let runs: [&[&str]; 4] = [
        &["simulate", "-i", "data/calibrated_5mhz.json", "--config", "data/run_config.json", "--seed", "3"],
        &["stokes", "-i", "data/calibrated_5mhz.json", "--mode", "sampled", "--samples", "5000", "--seed", "3"],
        &["oracle", "--random", "2", "--points", "21", "--seed", "3"],
        &["sweep", "-i", "data/calibrated_5mhz.json", "--resolution", "5x8"],
    ];
    let identical = runs.iter().all(|a| cli(a) == cli(a));
    check(
        phase < TOL_INVARIANCE && trace < TOL_INVARIANCE && identical,
        format!("local phases {phase:.1e}, n_a+n_b under rotation {trace:.1e}, repeated runs identical {identical}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("maximal entanglement of the calibrated state", calibrated_maximal_entanglement),
        ("polarization entanglement", calibrated_polarization_entanglement),
        ("oracle equivalence", oracle_equivalence),
        ("Poincaré geometry", poincare_geometry),
        ("circular-case identities", circular_identities),
        ("frequency behavior", frequency_behavior),
        ("homodyne statistics", homodyne_statistics),
        ("invariance suite", invariance_suite),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += usize::from(!o.pass);
        println!(
            "criterion {}: {} {name}: {}",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {} of 8 passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
