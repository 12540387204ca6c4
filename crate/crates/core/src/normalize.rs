//! Canonical rotation of the image data.
//!
//! Each view is rotated about its camera centre so that the first point
//! lies on the optical axis and the second point on the `y`-axis of the
//! image plane, i.e. `x1 = y1 = x2 = 0` afterwards.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Normalised image coordinates of four points seen by three calibrated
/// cameras, plus the length of the baseline `O1 O2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemInstance {
    /// `views[j][i] = (x_ji, y_ji)` on the `z = 1` plane of camera `j`.
    pub views: [[[f64; 2]; 4]; 3],
    pub baseline: f64,
}

impl ProblemInstance {
    pub fn new(views: [[[f64; 2]; 4]; 3], baseline: f64) -> Result<ProblemInstance> {
        let inst = ProblemInstance { views, baseline };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.baseline > 0.0 && self.baseline.is_finite()) {
            return Err(Error::InvalidInstance(format!("baseline must be positive, got {}", self.baseline)));
        }
        if self.views.iter().flatten().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInstance("image coordinates must be finite".into()));
        }
        Ok(())
    }

    pub fn point(&self, view: usize, i: usize) -> Vector3<f64> {
        let [x, y] = self.views[view][i];
        Vector3::new(x, y, 1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angles {
    pub psi: f64,
    pub theta: f64,
    pub phi: f64,
}

#[derive(Clone, Debug)]
pub struct NormalizedProblem {
    /// Rotated coordinates; `points[j][0] = (0, 0)` and `points[j][1].x = 0`.
    pub points: [[[f64; 2]; 4]; 3],
    /// `rho[j]` maps original to rotated homogeneous coordinates of view `j`.
    pub rho: [Matrix3<f64>; 3],
    pub angles: [Angles; 3],
    pub baseline: f64,
}

impl NormalizedProblem {
    pub fn x(&self, j: usize, i: usize) -> f64 {
        self.points[j][i][0]
    }

    pub fn y(&self, j: usize, i: usize) -> f64 {
        self.points[j][i][1]
    }
}

pub fn rot_x(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c)
}

/// Rotation about `y` with the sign for which `tan(theta) = x1 / sqrt(1 + y1^2)`
/// zeroes `x1`, i.e. `R_y(-theta)` in the right-handed convention.
pub fn rot_y_tilt(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(c, 0.0, -s, 0.0, 1.0, 0.0, s, 0.0, c)
}

pub fn rot_z(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

/// `rho = R_z(phi) R_y(theta) R_x(psi)`.
pub fn rho_from_angles(a: &Angles) -> Matrix3<f64> {
    rot_z(a.phi) * rot_y_tilt(a.theta) * rot_x(a.psi)
}

const DEGENERATE_EPS: f64 = 1e-12;

/// Angles `(psi, theta, phi)` bringing the first point of the view onto the
/// optical axis and the second onto the `y`-axis.
pub fn normalization_angles(view: &[[f64; 2]; 4]) -> Result<Angles> {
    normalization_angles_of(view, 0)
}

fn normalization_angles_of(view: &[[f64; 2]; 4], index: usize) -> Result<Angles> {
    let [x1, y1] = view[0];
    let [x2, y2] = view[1];
    let r = (1.0 + y1 * y1).sqrt();
    let rho = (1.0 + x1 * x1 + y1 * y1).sqrt();
    let psi = y1.atan();
    let theta = (x1 / r).atan();
    let num = x2 * (1.0 + y1 * y1) - x1 * (1.0 + y1 * y2);
    let den = (y2 - y1) * rho;
    if den.abs() < DEGENERATE_EPS {
        return Err(Error::DegenerateView { view: index });
    }
    // Principal branch; the rotated y2 then has the sign of y2 - y1.
    let phi = (num / den).atan();
    Ok(Angles { psi, theta, phi })
}

/// Rotates every view into canonical position.
pub fn apply_normalization(inst: &ProblemInstance) -> Result<NormalizedProblem> {
    inst.validate()?;
    let mut points = [[[0.0; 2]; 4]; 3];
    let mut rho = [Matrix3::identity(); 3];
    let mut angles = [Angles { psi: 0.0, theta: 0.0, phi: 0.0 }; 3];
    for j in 0..3 {
        let a = normalization_angles_of(&inst.views[j], j)?;
        let r = rho_from_angles(&a);
        for i in 0..4 {
            let q = r * inst.point(j, i);
            if q.z <= 0.0 {
                return Err(Error::BehindCamera);
            }
            points[j][i] = [q.x / q.z, q.y / q.z];
        }
        // These vanish up to rounding; make them exactly zero as the
        // constraint construction relies on it.
        debug_assert!(points[j][0][0].abs() < 1e-9 && points[j][0][1].abs() < 1e-9 && points[j][1][0].abs() < 1e-9);
        points[j][0] = [0.0, 0.0];
        points[j][1][0] = 0.0;
        rho[j] = r;
        angles[j] = a;
    }
    Ok(NormalizedProblem { points, rho, angles, baseline: inst.baseline })
}
