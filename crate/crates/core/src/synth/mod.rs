//! Synthetic scenes, image noise, error metrics and the benchmark driver.

pub mod bench;
pub mod exact;

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normalize::ProblemInstance;

pub use bench::{noise_levels, run_benchmark, summarize, write_csv, BenchRow, SummaryRow};
pub use exact::ExactScene;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SceneKind {
    /// Points between the planes `z = 1` and `z = 2`.
    Generic,
    /// Points on the plane `z = 2`.
    Planar,
}

impl SceneKind {
    pub fn name(self) -> &'static str {
        match self {
            SceneKind::Generic => "generic",
            SceneKind::Planar => "planar",
        }
    }
}

impl std::str::FromStr for SceneKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SceneKind> {
        match s {
            "generic" => Ok(SceneKind::Generic),
            "planar" => Ok(SceneKind::Planar),
            _ => Err(Error::InvalidInstance(format!("unknown configuration {s:?}, expected generic or planar"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub kind: SceneKind,
    pub baseline: f64,
    /// Noise level in pixels; the benchmark sweeps `0, step, ..` up to it.
    pub noise_sigma: f64,
    pub sigma_step: f64,
    pub image_size: f64,
    /// Full field of view in degrees.
    pub fov: f64,
    pub trials: usize,
    pub seed: u64,
    /// Fill the `runtime_ms` column. Off by default so that output files
    /// are reproducible byte for byte.
    pub timing: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            kind: SceneKind::Generic,
            baseline: 0.3,
            noise_sigma: 1.0,
            sigma_step: 0.1,
            image_size: 512.0,
            fov: 45.0,
            trials: 100,
            seed: 0,
            timing: false,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInstance(m.into()));
        if !(self.baseline > 0.0) {
            return bad("baseline must be positive");
        }
        if !(self.noise_sigma >= 0.0) || !(self.sigma_step > 0.0) {
            return bad("noise levels must be nonnegative with a positive step");
        }
        if self.trials == 0 {
            return bad("at least one trial is required");
        }
        if !(self.fov > 0.0 && self.fov < 180.0) || !(self.image_size > 0.0) {
            return bad("field of view and image size must be positive");
        }
        Ok(())
    }

    /// Focal length in pixels.
    pub fn focal_px(&self) -> f64 {
        (self.image_size / 2.0) / (self.fov.to_radians() / 2.0).tan()
    }

    fn half_width(&self) -> f64 {
        (self.fov.to_radians() / 2.0).tan()
    }
}

/// The true configuration, in the frame of the first camera.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundTruth {
    /// Camera-to-world rotations of cameras 2 and 3.
    pub rotations: [Matrix3<f64>; 2],
    /// `O1 O2`.
    pub t: Vector3<f64>,
    pub centers: [Vector3<f64>; 3],
    pub points: [Vector3<f64>; 4],
    /// `O3 = lambda O2`.
    pub lambda: f64,
}

/// Random stream for one trial; independent of how trials are scheduled.
pub fn trial_rng(seed: u64, trial: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(stream);
    rng
}

const MAX_ATTEMPTS: usize = 10_000;
const MAX_TILT_DEG: f64 = 10.0;

fn unit_vector(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::from_fn(|_, _| StandardNormal.sample(rng));
        let n: f64 = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}

/// Camera-to-world rotation whose optical axis points from `eye` to
/// `target`.
fn look_at(eye: &Vector3<f64>, target: &Vector3<f64>) -> Option<Matrix3<f64>> {
    let z = (target - eye).try_normalize(1e-12)?;
    let x = Vector3::y().cross(&z).try_normalize(1e-9)?;
    let y = z.cross(&x);
    Some(Matrix3::from_columns(&[x, y, z]))
}

fn project(r: &Matrix3<f64>, o: &Vector3<f64>, p: &Vector3<f64>, half: f64) -> Option<[f64; 2]> {
    let q = r.transpose() * (p - o);
    if q.z <= 0.0 {
        return None;
    }
    let (x, y) = (q.x / q.z, q.y / q.z);
    (x.abs() < half && y.abs() < half).then_some([x, y])
}

/// A random collinear scene and its noiseless images. Deterministic in
/// `(cfg.seed, trial)`.
pub fn generate_scene(cfg: &ScenarioConfig, trial: u64) -> Result<(ProblemInstance, GroundTruth)> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.seed, trial, 0);
    let half = cfg.half_width();
    for _ in 0..MAX_ATTEMPTS {
        if let Some(scene) = attempt(cfg, half, &mut rng) {
            return Ok(scene);
        }
    }
    Err(Error::InvalidInstance(format!("no visible scene after {MAX_ATTEMPTS} attempts")))
}

fn attempt(cfg: &ScenarioConfig, half: f64, rng: &mut ChaCha8Rng) -> Option<(ProblemInstance, GroundTruth)> {
    let mut points = [Vector3::zeros(); 4];
    for p in points.iter_mut() {
        *p = loop {
            let z = match cfg.kind {
                SceneKind::Generic => rng.random_range(1.0..=2.0),
                SceneKind::Planar => 2.0,
            };
            let (x, y) = (rng.random_range(-2.0 * half..2.0 * half), rng.random_range(-2.0 * half..2.0 * half));
            if x.abs() < z * half && y.abs() < z * half {
                break Vector3::new(x, y, z);
            }
        };
    }
    let o2 = unit_vector(rng) * cfg.baseline;
    let lambda = rng.random_range(1.0 / 3.0..=2.0 / 3.0);
    let o3 = o2 * lambda;
    let centroid = points.iter().sum::<Vector3<f64>>() / 4.0;
    let mut rotations = [Matrix3::identity(); 2];
    for (r, o) in rotations.iter_mut().zip([&o2, &o3]) {
        let aim = look_at(o, &centroid)?;
        let axis = Unit::new_normalize(unit_vector(rng));
        let tilt = Rotation3::from_axis_angle(&axis, rng.random_range(0.0..=MAX_TILT_DEG).to_radians());
        *r = aim * tilt.into_inner();
    }
    let centers = [Vector3::zeros(), o2, o3];
    let cams = [Matrix3::identity(), rotations[0], rotations[1]];
    let mut views = [[[0.0; 2]; 4]; 3];
    for j in 0..3 {
        for i in 0..4 {
            views[j][i] = project(&cams[j], &centers[j], &points[i], half)?;
        }
    }
    let inst = ProblemInstance::new(views, cfg.baseline).ok()?;
    Some((inst, GroundTruth { rotations, t: o2, centers, points, lambda }))
}

/// Adds i.i.d. Gaussian noise of `sigma_px` pixels to every coordinate.
pub fn add_noise(inst: &ProblemInstance, sigma_px: f64, focal_px: f64, rng: &mut ChaCha8Rng) -> ProblemInstance {
    let mut out = inst.clone();
    if sigma_px == 0.0 {
        return out;
    }
    let normal = Normal::new(0.0, sigma_px / focal_px).expect("finite standard deviation");
    for c in out.views.iter_mut().flatten().flatten() {
        *c += normal.sample(rng);
    }
    out
}

/// Angle in degrees of `R_true^T R_est`, i.e.
/// `acos((tr(R_true^T R_est) - 1) / 2)`, evaluated through the half-angle
/// form `2 asin(|R_est - R_true|_F / sqrt 8)`, which stays accurate near
/// zero where the arccosine loses half the digits.
pub fn rot_error(r_est: &Matrix3<f64>, r_true: &Matrix3<f64>) -> f64 {
    let h = (r_est - r_true).norm() / 8f64.sqrt();
    (2.0 * h.clamp(0.0, 1.0).asin()).to_degrees()
}

/// Angle in degrees between two translation directions.
pub fn transl_error(t_est: &Vector3<f64>, t_true: &Vector3<f64>) -> Result<f64> {
    if t_est.norm() == 0.0 || t_true.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(t_est.cross(t_true).norm().atan2(t_est.dot(t_true)).to_degrees())
}
