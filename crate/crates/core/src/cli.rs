//! Command-line front end. Every output starts with metadata: crate version,
//! seed and a SHA-256 of the inputs and options (file paths excluded, so the
//! hash only changes when the content does).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::basis::{PolarizationRotation, RotationSpec};
use crate::entanglement::{
    best_single_mode_squeezing, equatorial_entanglement, find_uncorrelated_basis,
    inseparability_min, maximal_entanglement_from, poincare_sweep_in_frame,
    single_mode_closed_form, SphereFrame,
};
use crate::error::{Error, Result};
use crate::gaussian::{QuadratureAngle, TwoModeState};
use crate::homodyne::{estimate_inseparability_trace, simulate, RunConfig};
use crate::model::{frequency_sweep, parse_freq_range, KerrSpectrumParams, PolarizationCase};
use crate::oracle::{
    grid_min_inseparability, grid_min_single_mode, random_sigma_bracket, GridSpec,
};
use crate::random::{random_physical_state, seeded_rng};
use crate::stokes::{
    lock_phase, polarization_inseparability, polarization_inseparability_sampled,
    SampledStokesConfig, StokesMode,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "twomode", version, about = "Entanglement and squeezing of two-mode Gaussian states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Io {
    /// Input file (JSON).
    #[arg(long, short)]
    pub input: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisChoice {
    /// The pair as given.
    Input,
    /// Maximally entangled pair.
    Best,
    /// Uncorrelated pair.
    Uncorrelated,
    /// Modes at ±45° to the input pair.
    Diagonal,
    /// Circular modes of the input pair.
    Circular,
}

#[derive(Debug, Args, Clone)]
pub struct BasisArgs {
    #[arg(long, value_enum)]
    pub basis: Option<BasisChoice>,
    /// Rotation JSON applied to the input pair (overrides --basis).
    #[arg(long)]
    pub rotation: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entanglement report of a state.
    Analyze {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        basis: BasisArgs,
    },
    /// Poincaré-sphere map as CSV.
    Sweep {
        #[command(flatten)]
        io: Io,
        /// Grid size as LATxLON.
        #[arg(long, default_value = "19x36")]
        resolution: String,
        #[arg(long, value_enum, default_value = "uncorrelated")]
        frame: FrameArg,
    },
    /// Kerr-model frequency table as CSV.
    Model {
        #[command(flatten)]
        io: Io,
        #[arg(long = "case", value_enum, default_value = "linear")]
        case: CaseArg,
        /// start:stop:step in MHz.
        #[arg(long, default_value = "3:12:0.5")]
        freqs: String,
    },
    /// Stokes-parameter entanglement report.
    Stokes {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long = "alpha-b", default_value_t = 100.0)]
        alpha_b: f64,
        #[arg(long = "theta-b", conflicts_with = "lock")]
        theta_b: Option<f64>,
        /// Lock θ_B at the minimum of I(θ).
        #[arg(long)]
        lock: bool,
        #[arg(long, value_enum, default_value = "analytic")]
        mode: ModeArg,
        #[arg(long, env = "TWOMODE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Homodyne measurement simulation; writes the trace CSV.
    Simulate {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        basis: BasisArgs,
        /// Run-configuration JSON.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the seed of the run configuration.
        #[arg(long, env = "TWOMODE_SEED")]
        seed: Option<u64>,
    },
    /// Closed forms against brute-force grids, as JSON.
    Oracle {
        #[arg(long, short, required_unless_present = "random", conflicts_with = "random")]
        input: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Number of seeded random states.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, env = "TWOMODE_SEED", default_value_t = 0)]
        seed: u64,
        /// Points per axis of the 4-D grid.
        #[arg(long, default_value_t = 61)]
        points: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FrameArg {
    Uncorrelated,
    Input,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Linear,
    Circular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Analytic,
    Sampled,
}

/// Oracle agreement required for a passing report.
pub const ORACLE_TOLERANCE: f64 = 5e-3;

#[derive(Debug, Clone)]
pub struct Meta {
    pub command: &'static str,
    pub seed: Option<u64>,
    pub config_hash: String,
}

impl Meta {
    fn new(command: &'static str, seed: Option<u64>, parts: &[&str]) -> Self {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        for p in parts {
            h.update([0u8]);
            h.update(p.as_bytes());
        }
        let config_hash = h.finalize().iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        Meta {
            command,
            seed,
            config_hash,
        }
    }

    fn json(&self) -> Value {
        json!({
            "tool": "twomode",
            "version": VERSION,
            "command": self.command,
            "seed": self.seed,
            "config_sha256": self.config_hash,
        })
    }

    fn csv_header(&self) -> String {
        let mut s = format!("# twomode {VERSION}\n# command: {}\n", self.command);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "# seed: {seed}");
        }
        let _ = writeln!(s, "# config_sha256: {}", self.config_hash);
        s
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn matrix_json(r: &PolarizationRotation) -> Value {
    let u = r.matrix();
    let row = |i: usize| json!([[u[(i, 0)].re, u[(i, 0)].im], [u[(i, 1)].re, u[(i, 1)].im]]);
    json!([row(0), row(1)])
}

/// Name of a pair of modes relative to the input pair, ignoring mode order
/// and per-mode phases.
pub fn basis_label(r: &PolarizationRotation) -> &'static str {
    let tol = 1e-9;
    let named = [
        ("a,b", PolarizationRotation::identity()),
        ("+45,-45", PolarizationRotation::diagonal()),
        ("circular", PolarizationRotation::circular()),
    ];
    for (label, n) in named {
        if r.same_modes_as(&n, tol) || r.same_modes_as(&PolarizationRotation::swap().compose(&n), tol) {
            return label;
        }
    }
    "general"
}

fn choose_rotation(
    state: &TwoModeState,
    args: &BasisArgs,
    default: BasisChoice,
    hash_parts: &mut Vec<String>,
) -> Result<(PolarizationRotation, String)> {
    if let Some(path) = &args.rotation {
        let text = read(path)?;
        hash_parts.push(text.clone());
        return Ok((RotationSpec::from_json(&text)?, "file".into()));
    }
    let choice = args.basis.unwrap_or(default);
    hash_parts.push(format!("{choice:?}"));
    let rot = match choice {
        BasisChoice::Input => PolarizationRotation::identity(),
        BasisChoice::Best => {
            maximal_entanglement_from(&find_uncorrelated_basis(state)).basis_star
        }
        BasisChoice::Uncorrelated => find_uncorrelated_basis(state).rotation,
        BasisChoice::Diagonal => PolarizationRotation::diagonal(),
        BasisChoice::Circular => PolarizationRotation::circular(),
    };
    Ok((rot, format!("{choice:?}").to_lowercase()))
}

fn load_state(path: &Path) -> Result<(TwoModeState, String)> {
    let text = read(path)?;
    let state = TwoModeState::from_json(&text)?.validated()?;
    Ok((state, text))
}

pub fn analyze_report(state: &TwoModeState) -> Value {
    let report = inseparability_min(state);
    let uv = find_uncorrelated_basis(state);
    let best = maximal_entanglement_from(&uv);
    json!({
        "labels": state.labels(),
        "inseparability": report,
        "uncorrelated_basis": {
            "c_u": uv.c_u,
            "c_v": uv.c_v,
            "n_u": uv.n_u,
            "n_v": uv.n_v,
            "k_uv": [uv.k_uv.re, uv.k_uv.im],
            "mixing_angle": uv.mixing_angle,
            "omega": uv.omega,
            "swapped": uv.swapped,
            "degenerate": uv.degenerate,
            "i_uv": uv.i_uv(),
            "rotation": matrix_json(&uv.rotation),
        },
        "sigma_extrema": uv.sigma_extrema(),
        "equatorial_inseparability": equatorial_entanglement(state),
        "best_single_mode_squeezing": best_single_mode_squeezing(state),
        "single_mode_closed_form": single_mode_closed_form(&uv),
        "maximal_entanglement": {
            "i_min": best.report.i_min,
            "theta_star": best.report.theta_star,
            "entangled": best.report.entangled,
            "basis": basis_label(&best.basis_star),
            "rotation": matrix_json(&best.basis_star),
        },
    })
}

pub fn analyze(input: &Path, basis: &BasisArgs) -> Result<String> {
    let (state, text) = load_state(input)?;
    let mut parts = vec![text];
    let (rot, name) = choose_rotation(&state, basis, BasisChoice::Input, &mut parts)?;
    let pair = rot.apply(&state);
    let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
    let meta = Meta::new("analyze", None, &refs);
    let mut out = analyze_report(&pair);
    out["basis"] = json!(name);
    let mut root = json!({ "meta": meta.json() });
    root["report"] = out;
    Ok(pretty(&root))
}

pub fn parse_resolution(spec: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("resolution `{spec}`, expected LATxLON"));
    let (a, b) = spec.split_once(['x', 'X']).ok_or_else(bad)?;
    let lat = a.trim().parse::<usize>().map_err(|_| bad())?;
    let lon = b.trim().parse::<usize>().map_err(|_| bad())?;
    Ok((lat, lon))
}

pub fn sweep(input: &Path, resolution: &str, frame: FrameArg) -> Result<String> {
    let (state, text) = load_state(input)?;
    let (lat, lon) = parse_resolution(resolution)?;
    let frame = match frame {
        FrameArg::Uncorrelated => SphereFrame::Uncorrelated,
        FrameArg::Input => SphereFrame::Input,
    };
    let sw = poincare_sweep_in_frame(&state, lat, lon, frame)?;
    let meta = Meta::new("sweep", None, &[&text, &format!("{lat}x{lon}"), &format!("{frame:?}")]);
    Ok(meta.csv_header() + &sw.to_csv())
}

pub fn model(input: &Path, case: CaseArg, freqs: &str) -> Result<String> {
    let text = read(input)?;
    let params = KerrSpectrumParams::from_json(&text)?;
    let f = parse_freq_range(freqs)?;
    let case = match case {
        CaseArg::Linear => PolarizationCase::Linear,
        CaseArg::Circular => PolarizationCase::Circular,
    };
    let table = frequency_sweep(&params, case, &f)?;
    let meta = Meta::new("model", None, &[&text, &format!("{case:?}"), freqs]);
    Ok(meta.csv_header() + &table.to_csv())
}

#[allow(clippy::too_many_arguments)]
pub fn stokes(
    input: &Path,
    basis: &BasisArgs,
    alpha_b: f64,
    theta_b: Option<f64>,
    lock: bool,
    mode: ModeArg,
    seed: u64,
    samples: usize,
) -> Result<String> {
    let (state, text) = load_state(input)?;
    let mut parts = vec![text];
    let (rot, name) = choose_rotation(&state, basis, BasisChoice::Best, &mut parts)?;
    let pair = rot.apply(&state);
    let theta = match (theta_b, lock) {
        (Some(t), false) => QuadratureAngle(t),
        (None, _) => lock_phase(&pair),
        (Some(_), true) => {
            return Err(Error::InvalidConfig("--theta-b and --lock are exclusive".into()))
        }
    };
    parts.push(format!("{alpha_b:?} {:?} {mode:?} {samples}", theta.0));
    let (report, seed) = match mode {
        ModeArg::Analytic => (polarization_inseparability(&pair, alpha_b, theta)?, None),
        ModeArg::Sampled => {
            let cfg = SampledStokesConfig {
                seed,
                samples,
                ..Default::default()
            };
            (
                polarization_inseparability_sampled(&pair, alpha_b, theta, &cfg)?,
                Some(seed),
            )
        }
    };
    let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
    let meta = Meta::new("stokes", seed, &refs);
    debug_assert!(report.mode == StokesMode::Analytic || seed.is_some());
    Ok(pretty(&json!({
        "meta": meta.json(),
        "basis": name,
        "basis_label": basis_label(&rot),
        "report": report,
        "i_ab_at_theta_b": crate::entanglement::inseparability_at(&pair, theta),
    })))
}

pub fn simulate_cmd(
    input: &Path,
    basis: &BasisArgs,
    config: Option<&Path>,
    seed: Option<u64>,
) -> Result<String> {
    let (state, text) = load_state(input)?;
    let mut parts = vec![text];
    let mut cfg = match config {
        Some(p) => {
            let t = read(p)?;
            let c = RunConfig::from_json(&t)?;
            parts.push(t);
            c
        }
        None => RunConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    parts.push(format!("seed {}", cfg.seed));
    let (rot, _) = choose_rotation(&state, basis, BasisChoice::Input, &mut parts)?;
    let run = simulate(&rot.apply(&state), &cfg)?;
    let trace = estimate_inseparability_trace(&run)?;
    let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
    let meta = Meta::new("simulate", Some(cfg.seed), &refs);
    Ok(meta.csv_header() + &trace.to_csv())
}

pub fn oracle_entry(state: &TwoModeState, spec: GridSpec, rng: &mut rand_chacha::ChaCha8Rng) -> Value {
    let uv = find_uncorrelated_basis(state);
    let best = maximal_entanglement_from(&uv);
    let grid = grid_min_inseparability(state, spec);
    let single = best_single_mode_squeezing(state);
    let single_grid = grid_min_single_mode(state, 181);
    let bracket = random_sigma_bracket(state, 10_000, rng);
    let ex = uv.sigma_extrema();
    json!({
        "i_star_closed_form": best.report.i_min,
        "i_star_grid": grid.value,
        "i_star_diff": (best.report.i_min - grid.value).abs(),
        "grid_argmin": grid.at,
        "single_mode_closed_form": single,
        "single_mode_grid": single_grid,
        "single_mode_diff": (single - single_grid).abs(),
        "sigma_min": ex.sigma_min,
        "sigma_max": ex.sigma_max,
        "sigma_sampled_min": bracket.min,
        "sigma_sampled_max": bracket.max,
        "sigma_bracketed": bracket.min >= ex.sigma_min - 1e-12 && bracket.max <= ex.sigma_max + 1e-12,
        "m_uv_residual": uv.state.m_ab().norm(),
    })
}

pub fn oracle(input: Option<&Path>, random: Option<usize>, seed: u64, points: usize) -> Result<String> {
    let spec = GridSpec {
        points,
        ..GridSpec::default()
    };
    let mut rng = seeded_rng(seed);
    let (states, parts) = match (input, random) {
        (Some(p), None) => {
            let (s, text) = load_state(p)?;
            (vec![s], vec![text])
        }
        (None, Some(n)) => {
            if n == 0 {
                return Err(Error::InvalidConfig("--random needs at least one state".into()));
            }
            let mut gen = seeded_rng(seed ^ 0x5eed);
            ((0..n).map(|_| random_physical_state(&mut gen)).collect(), vec![format!("random {n}")])
        }
        _ => return Err(Error::InvalidConfig("give exactly one of --input or --random".into())),
    };
    let mut entries = Vec::with_capacity(states.len());
    let (mut max_i, mut max_single, mut max_m, mut all_bracketed) = (0.0f64, 0.0f64, 0.0f64, true);
    for s in &states {
        let e = oracle_entry(s, spec, &mut rng);
        max_i = max_i.max(e["i_star_diff"].as_f64().unwrap_or(f64::INFINITY));
        max_single = max_single.max(e["single_mode_diff"].as_f64().unwrap_or(f64::INFINITY));
        max_m = max_m.max(e["m_uv_residual"].as_f64().unwrap_or(f64::INFINITY));
        all_bracketed &= e["sigma_bracketed"].as_bool().unwrap_or(false);
        entries.push(e);
    }
    let mut p: Vec<&str> = parts.iter().map(String::as_str).collect();
    let pts = points.to_string();
    p.push(&pts);
    let meta = Meta::new("oracle", Some(seed), &p);
    Ok(pretty(&json!({
        "meta": meta.json(),
        "grid_points": points,
        "tolerance": ORACLE_TOLERANCE,
        "states": entries.len(),
        "max_i_star_diff": max_i,
        "max_single_mode_diff": max_single,
        "max_m_uv_residual": max_m,
        "sigma_bracketed": all_bracketed,
        "pass": max_i <= ORACLE_TOLERANCE && max_single <= ORACLE_TOLERANCE && max_m < 1e-10 && all_bracketed,
        "entries": entries,
    })))
}

/// Runs one command and returns its output text.
pub fn execute(cli: &Cli) -> Result<(String, Option<PathBuf>)> {
    match &cli.command {
        Command::Analyze { io, basis } => Ok((analyze(&io.input, basis)?, io.output.clone())),
        Command::Sweep {
            io,
            resolution,
            frame,
        } => Ok((sweep(&io.input, resolution, *frame)?, io.output.clone())),
        Command::Model { io, case, freqs } => Ok((model(&io.input, *case, freqs)?, io.output.clone())),
        Command::Stokes {
            io,
            basis,
            alpha_b,
            theta_b,
            lock,
            mode,
            seed,
            samples,
        } => Ok((
            stokes(&io.input, basis, *alpha_b, *theta_b, *lock, *mode, *seed, *samples)?,
            io.output.clone(),
        )),
        Command::Simulate {
            io,
            basis,
            config,
            seed,
        } => Ok((
            simulate_cmd(&io.input, basis, config.as_deref(), *seed)?,
            io.output.clone(),
        )),
        Command::Oracle {
            input,
            output,
            random,
            seed,
            points,
        } => Ok((oracle(input.as_deref(), *random, *seed, *points)?, output.clone())),
    }
}

/// Parses `args`, runs the command and writes its output. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|(text, out)| match out {
        Some(path) => std::fs::write(&path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_parsing() {
        assert_eq!(parse_resolution("19x36").unwrap(), (19, 36));
        assert!(parse_resolution("19").is_err());
        assert!(parse_resolution("ax3").is_err());
    }

    #[test]
    fn labels_for_named_bases() {
        assert_eq!(basis_label(&PolarizationRotation::identity()), "a,b");
        assert_eq!(basis_label(&PolarizationRotation::swap()), "a,b");
        assert_eq!(
            basis_label(&PolarizationRotation::mixing(std::f64::consts::FRAC_1_SQRT_2, 0.0)),
            "+45,-45"
        );
        assert_eq!(basis_label(&PolarizationRotation::circular()), "circular");
        assert_eq!(basis_label(&PolarizationRotation::mixing(0.3, 0.1)), "general");
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert!(Cli::try_parse_from(["twomode", "analyze", "--input", "x.json", "--bogus"]).is_err());
        assert!(Cli::try_parse_from(["twomode", "stokes", "-i", "x", "--lock", "--theta-b", "1"]).is_err());
    }

    #[test]
    fn hash_ignores_nothing_but_paths() {
        let a = Meta::new("x", None, &["abc"]);
        let b = Meta::new("x", None, &["abd"]);
        assert_ne!(a.config_hash, b.config_hash);
        assert_eq!(a.config_hash.len(), 64);
    }
}
