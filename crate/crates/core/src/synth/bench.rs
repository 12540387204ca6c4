//! Noise sweeps over random scenes, one CSV row per trial.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{add_noise, generate_scene, rot_error, transl_error, trial_rng, ScenarioConfig};
use crate::error::{Error, Result};
use crate::recover::solve;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "COLLINEAR4P3V_THREADS";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub config: &'static str,
    pub sigma_px: f64,
    pub trial: u64,
    /// Mean over cameras 2 and 3.
    pub rot_err_deg: Option<f64>,
    pub transl_err_deg: Option<f64>,
    pub reproj_err: Option<f64>,
    pub n_real_roots: Option<usize>,
    pub runtime_ms: Option<f64>,
    pub status: String,
}

/// `0, step, 2 step, ..` up to `noise_sigma` inclusive.
pub fn noise_levels(cfg: &ScenarioConfig) -> Vec<f64> {
    let n = (cfg.noise_sigma / cfg.sigma_step + 1e-9).floor() as usize;
    // Multiplying rather than accumulating keeps 0.3 as 0.3.
    (0..=n).map(|k| (k as f64 * cfg.sigma_step * 1e9).round() / 1e9).collect()
}

fn status_name(e: &Error) -> String {
    let s = format!("{e:?}");
    s.split(['(', ' ', '{']).next().unwrap_or("error").to_string()
}

fn run_trial(cfg: &ScenarioConfig, level: usize, sigma: f64, trial: u64) -> BenchRow {
    let mut row = BenchRow {
        config: cfg.kind.name(),
        sigma_px: sigma,
        trial,
        rot_err_deg: None,
        transl_err_deg: None,
        reproj_err: None,
        n_real_roots: None,
        runtime_ms: None,
        status: String::new(),
    };
    let (inst, truth) = match generate_scene(cfg, trial) {
        Ok(s) => s,
        Err(e) => {
            row.status = status_name(&e);
            return row;
        }
    };
    let mut rng = trial_rng(cfg.seed, trial, 1 + level as u64);
    let noisy = add_noise(&inst, sigma, cfg.focal_px(), &mut rng);
    let start = Instant::now();
    let result = solve(&noisy);
    if cfg.timing {
        row.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    match result.and_then(|sol| Ok((transl_error(&sol.t, &truth.t)?, sol))) {
        Ok((te, sol)) => {
            let re = (rot_error(&sol.r2, &truth.rotations[0]) + rot_error(&sol.r3, &truth.rotations[1])) / 2.0;
            row.rot_err_deg = Some(re);
            row.transl_err_deg = Some(te);
            row.reproj_err = Some(sol.reproj_error);
            row.n_real_roots = Some(sol.n_real_roots);
            row.status = "ok".into();
        }
        Err(e) => row.status = status_name(&e),
    }
    row
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInstance(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        b = b.num_threads(n.max(1));
    }
    b.build().map_err(|e| Error::Precondition(e.to_string()))
}

/// Every `(noise level, trial)` pair; rows come back in that order
/// regardless of the thread count. Each trial solves the same scene at every
/// noise level.
pub fn run_benchmark(cfg: &ScenarioConfig) -> Result<Vec<BenchRow>> {
    cfg.validate()?;
    let levels = noise_levels(cfg);
    let jobs: Vec<(usize, f64, u64)> = levels
        .iter()
        .enumerate()
        .flat_map(|(l, &s)| (0..cfg.trials as u64).map(move |t| (l, s, t)))
        .collect();
    let pool = thread_pool()?;
    Ok(pool.install(|| jobs.par_iter().map(|&(l, s, t)| run_trial(cfg, l, s, t)).collect()))
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub config: &'static str,
    pub sigma_px: f64,
    pub trials: usize,
    pub ok: usize,
    pub rot_mean: f64,
    pub rot_median: f64,
    pub transl_mean: f64,
    pub transl_median: f64,
}

fn mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.iter().sum::<f64>() / v.len() as f64
}

pub fn median(v: &[f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let m = s.len() / 2;
    if s.len() % 2 == 1 {
        s[m]
    } else {
        (s[m - 1] + s[m]) / 2.0
    }
}

/// Mean and median errors per noise level over the successful trials.
pub fn summarize(rows: &[BenchRow]) -> Vec<SummaryRow> {
    let mut out: Vec<SummaryRow> = Vec::new();
    let mut i = 0;
    while i < rows.len() {
        let (config, sigma) = (rows[i].config, rows[i].sigma_px);
        let group: Vec<&BenchRow> =
            rows[i..].iter().take_while(|r| r.config == config && r.sigma_px == sigma).collect();
        i += group.len();
        let rot: Vec<f64> = group.iter().filter_map(|r| r.rot_err_deg).collect();
        let tr: Vec<f64> = group.iter().filter_map(|r| r.transl_err_deg).collect();
        out.push(SummaryRow {
            config,
            sigma_px: sigma,
            trials: group.len(),
            ok: rot.len(),
            rot_mean: mean(&rot),
            rot_median: median(&rot),
            transl_mean: mean(&tr),
            transl_median: median(&tr),
        });
    }
    out
}
