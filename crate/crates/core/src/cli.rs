//! Command-line front end: `solve`, `bench`, `synth` and `dump`.
//!
//! Machine-readable output goes to stdout, diagnostics to stderr. Exit
//! codes: 0 success, 1 usage or input error, 2 no solution.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::constraints::{build_system, exact_points};
use crate::eliminate::{eliminate, int_coeff_strings};
use crate::error::{Error, Result};
use crate::normalize::{apply_normalization, ProblemInstance};
use crate::poly::MPoly;
use crate::recover::{solve, PoseSolution};
use crate::synth::{
    add_noise, generate_scene, run_benchmark, summarize, trial_rng, write_csv, SceneKind, ScenarioConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NO_SOLUTION: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "collinear4p3v", version, about = "Four-point three-view pose for collinear camera centres")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one instance file and print the pose as JSON.
    Solve {
        path: PathBuf,
        #[arg(long)]
        pretty: bool,
    },
    /// Run a noise sweep and write one CSV row per trial.
    Bench {
        #[arg(long, default_value = "generic")]
        config: Kind,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1.0)]
        sigma_max: f64,
        #[arg(long, default_value_t = 0.1)]
        sigma_step: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        baseline: f64,
        /// Fill the runtime column (makes the output run-dependent).
        #[arg(long)]
        timing: bool,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a synthetic instance file.
    Synth {
        #[arg(long, default_value = "generic")]
        config: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        trial: u64,
        /// Pixel noise added to the image points.
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0.3)]
        baseline: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the ground truth here.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Print exact integer coefficients of intermediate polynomials.
    Dump {
        path: PathBuf,
        #[arg(long, default_value = "s")]
        stage: Stage,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Generic,
    Planar,
}

impl From<Kind> for SceneKind {
    fn from(k: Kind) -> SceneKind {
        match k {
            Kind::Generic => SceneKind::Generic,
            Kind::Planar => SceneKind::Planar,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Stage {
    S,
    S2,
    S3,
    System,
}

/// Reads an instance file, naming the offending count when the shape is
/// wrong.
pub fn read_instance(path: &Path) -> Result<ProblemInstance> {
    let text = fs::read_to_string(path)?;
    parse_instance(&text)
}

pub fn parse_instance(text: &str) -> Result<ProblemInstance> {
    let v: Value = serde_json::from_str(text)?;
    let bad = |m: String| Error::InvalidInstance(m);
    let views = v.get("views").and_then(Value::as_array).ok_or_else(|| bad("missing \"views\" array".into()))?;
    if views.len() != 3 {
        return Err(bad(format!("expected 3 views, found {}", views.len())));
    }
    for (j, view) in views.iter().enumerate() {
        let pts = view.as_array().ok_or_else(|| bad(format!("view {} is not an array", j + 1)))?;
        if pts.len() != 4 {
            return Err(bad(format!("expected 4 points per view, view {} has {}", j + 1, pts.len())));
        }
    }
    let inst: ProblemInstance = serde_json::from_value(v)?;
    inst.validate()?;
    Ok(inst)
}

fn rows(m: &nalgebra::Matrix3<f64>) -> [[f64; 3]; 3] {
    std::array::from_fn(|r| std::array::from_fn(|c| m[(r, c)]))
}

fn vec3(v: &nalgebra::Vector3<f64>) -> [f64; 3] {
    [v.x, v.y, v.z]
}

#[derive(Serialize)]
#[allow(non_snake_case)]
pub struct SolveOutput {
    pub R2: [[f64; 3]; 3],
    pub R3: [[f64; 3]; 3],
    pub t: [f64; 3],
    pub sigma: i32,
    pub O2: [f64; 3],
    pub O3: [f64; 3],
    pub points: [[f64; 3]; 4],
    pub reproj_error: f64,
    pub n_real_roots: usize,
    pub s0: f64,
    pub runner_up_gap: Option<f64>,
}

impl From<&PoseSolution> for SolveOutput {
    fn from(s: &PoseSolution) -> SolveOutput {
        SolveOutput {
            R2: rows(&s.r2),
            R3: rows(&s.r3),
            t: vec3(&s.t),
            sigma: s.sigma,
            O2: vec3(&s.o2),
            O3: vec3(&s.o3),
            points: s.points.each_ref().map(vec3),
            reproj_error: s.reproj_error,
            n_real_roots: s.n_real_roots,
            s0: s.s0,
            runner_up_gap: s.runner_up_gap,
        }
    }
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct TruthOutput {
    R2: [[f64; 3]; 3],
    R3: [[f64; 3]; 3],
    t: [f64; 3],
    centers: [[f64; 3]; 3],
    points: [[f64; 3]; 4],
}

#[derive(Serialize)]
struct PolyDump {
    vars: Vec<String>,
    /// `(exponents, integer coefficient)` pairs.
    terms: Vec<(Vec<u32>, String)>,
}

fn mpoly_dump(p: &MPoly) -> PolyDump {
    let prim = p.primitive().1;
    PolyDump {
        vars: prim.vars().to_vec(),
        terms: prim.terms().map(|(e, c)| (e, c.numer().to_string())).collect(),
    }
}

fn to_json<T: Serialize>(v: &T, pretty: bool) -> Result<String> {
    Ok(if pretty { serde_json::to_string_pretty(v)? } else { serde_json::to_string(v)? })
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => io::stdout().write_all(bytes)?,
    }
    Ok(())
}

/// Exit code for a failure while handling a well-formed command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInstance(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::Csv(_)
        | Error::DegenerateView { .. }
        | Error::BehindCamera => EXIT_INPUT,
        _ => EXIT_NO_SOLUTION,
    }
}

fn cmd_solve(path: &Path, pretty: bool) -> Result<i32> {
    let inst = read_instance(path)?;
    let sol = solve(&inst)?;
    let mut s = to_json(&SolveOutput::from(&sol), pretty)?;
    s.push('\n');
    io::stdout().write_all(s.as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_bench(cfg: &ScenarioConfig, out: Option<&Path>) -> Result<i32> {
    cfg.validate()?;
    let rows = run_benchmark(cfg)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    write_out(out, &buf)?;
    let mut err = io::stderr().lock();
    writeln!(err, "{:>8} {:>7} {:>5} {:>12} {:>12} {:>12} {:>12}", "config", "sigma", "ok", "rot_mean", "rot_med", "tr_mean", "tr_med")?;
    for s in summarize(&rows) {
        writeln!(
            err,
            "{:>8} {:>7.2} {:>5} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            s.config, s.sigma_px, s.ok, s.rot_mean, s.rot_median, s.transl_mean, s.transl_median
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_synth(cfg: &ScenarioConfig, trial: u64, out: Option<&Path>, truth: Option<&Path>) -> Result<i32> {
    let (inst, gt) = generate_scene(cfg, trial)?;
    let mut rng = trial_rng(cfg.seed, trial, u64::MAX);
    let inst = add_noise(&inst, cfg.noise_sigma, cfg.focal_px(), &mut rng);
    let mut s = to_json(&inst, true)?;
    s.push('\n');
    write_out(out, s.as_bytes())?;
    if let Some(p) = truth {
        let t = TruthOutput {
            R2: rows(&gt.rotations[0]),
            R3: rows(&gt.rotations[1]),
            t: vec3(&gt.t),
            centers: gt.centers.each_ref().map(vec3),
            points: gt.points.each_ref().map(vec3),
        };
        fs::write(p, to_json(&t, true)? + "\n")?;
    }
    Ok(EXIT_OK)
}

fn cmd_dump(path: &Path, stage: Stage) -> Result<i32> {
    let inst = read_instance(path)?;
    let n = apply_normalization(&inst)?;
    let pts = exact_points(&n);
    let sys = build_system(&pts)?;
    let json = match stage {
        Stage::System => {
            let r = &sys.reduced;
            let m = [("h2", &r.h2), ("h3", &r.h3), ("hmix", &r.hmix)];
            let map: serde_json::Map<String, Value> =
                m.iter().map(|(k, p)| Ok((k.to_string(), serde_json::to_value(mpoly_dump(p))?))).collect::<Result<_>>()?;
            serde_json::to_string(&map)?
        }
        _ => {
            let e = eliminate(&sys.reduced, &pts)?;
            let p = match stage {
                Stage::S => &e.s,
                Stage::S2 => &e.s2,
                _ => &e.s3,
            };
            serde_json::to_string(&int_coeff_strings(p))?
        }
    };
    io::stdout().write_all((json + "\n").as_bytes())?;
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve { path, pretty } => cmd_solve(&path, pretty),
        Command::Bench { config, trials, sigma_max, sigma_step, seed, baseline, timing, out } => {
            let cfg = ScenarioConfig {
                kind: config.into(),
                trials,
                noise_sigma: sigma_max,
                sigma_step,
                seed,
                baseline,
                timing,
                ..ScenarioConfig::default()
            };
            cmd_bench(&cfg, out.as_deref())
        }
        Command::Synth { config, seed, trial, sigma, baseline, out, truth } => {
            let cfg = ScenarioConfig {
                kind: config.into(),
                noise_sigma: sigma,
                seed,
                baseline,
                trials: 1,
                ..ScenarioConfig::default()
            };
            cmd_synth(&cfg, trial, out.as_deref(), truth.as_deref())
        }
        Command::Dump { path, stage } => cmd_dump(&path, stage),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_count_is_named() {
        let text = r#"{"baseline": 1.0, "views": [[[0,0],[0,1],[1,1]], [[0,0],[0,1],[1,1],[2,2]], [[0,0],[0,1],[1,1],[2,2]]]}"#;
        let e = parse_instance(text).unwrap_err();
        assert!(e.to_string().contains("view 1 has 3"), "{e}");
        assert_eq!(exit_code(&e), EXIT_INPUT);
        let two = r#"{"baseline": 1.0, "views": [[], []]}"#;
        assert!(parse_instance(two).unwrap_err().to_string().contains("found 2"));
        let neg = r#"{"baseline": -1.0, "views": [[[0,0],[0,1],[1,1],[2,2]], [[0,0],[0,1],[1,1],[2,2]], [[0,0],[0,1],[1,1],[2,2]]]}"#;
        assert!(matches!(parse_instance(neg), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn usage_errors_exit_with_one() {
        assert_eq!(run(["collinear4p3v", "dump", "x.json", "--stage", "q"]), EXIT_INPUT);
        assert_eq!(run(["collinear4p3v", "frobnicate"]), EXIT_INPUT);
        assert_eq!(run(["collinear4p3v", "bench", "--trials", "0"]), EXIT_INPUT);
        assert_eq!(run(["collinear4p3v", "solve", "/nonexistent/instance.json"]), EXIT_INPUT);
    }

    #[test]
    fn no_solution_maps_to_two() {
        assert_eq!(exit_code(&Error::NoSolution), EXIT_NO_SOLUTION);
        assert_eq!(exit_code(&Error::NoCheiralConfig), EXIT_NO_SOLUTION);
    }
}
