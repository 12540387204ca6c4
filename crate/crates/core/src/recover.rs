//! Pose and structure recovery from the real roots of the eliminant.
//!
//! For every real root `s0` the pair `(ut2, ut3)` is taken from the real
//! roots of the two sextics that minimises the mixed polynomial, each `ut`
//! is inverted to a Cayley triple, the twisted-pair alternative is formed,
//! and the cheirality of the first point picks one of the four
//! configurations per camera. Structure follows by triangulation and the
//! root with the smallest reprojection error wins.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::constraints::{
    build_system, cam_vars, cayley_rotation, exact_points, translation_from_rotation, CamVars, ReducedSystem,
    WQuadratic, S,
};
use crate::eliminate::{eliminate, Eliminant};
use crate::error::{Error, Result};
use crate::normalize::{apply_normalization, NormalizedProblem, ProblemInstance};
use crate::poly::{rat_from_f64, real_roots, UniPoly};

/// Bisection tolerance for the roots of `S` and of the sextics.
const ROOT_TOL: f64 = 1e-15;
/// Reprojection errors closer than this are treated as tied.
const TIE_EPS: f64 = 1e-14;

/// Cayley parameters of one rotation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cayley {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl Cayley {
    pub fn rotation(&self) -> Matrix3<f64> {
        cayley_rotation(self.u, self.v, self.w)
    }
}

/// Back-substituted values for one real root of `S`.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateRoot {
    pub s0: f64,
    pub u2t: f64,
    pub u3t: f64,
    /// Cameras 2 and 3.
    pub cayley: [Cayley; 2],
    pub twisted: [Cayley; 2],
    /// `|hmix(ut2, ut3, s0)|` with the coefficients scaled to unit size.
    pub mix_residual: f64,
}

/// Relative pose of the three cameras and the four scene points, in the
/// frame of the first camera.
#[derive(Clone, Debug, PartialEq)]
pub struct PoseSolution {
    /// Maps camera-2 coordinates to world coordinates.
    pub r2: Matrix3<f64>,
    pub r3: Matrix3<f64>,
    /// Direction of `O1 O2` with length `d`, i.e. equal to `o2`.
    pub t: Vector3<f64>,
    /// `O1 O3` points along `sigma t`.
    pub sigma: i32,
    pub o2: Vector3<f64>,
    pub o3: Vector3<f64>,
    pub points: [Vector3<f64>; 4],
    pub reproj_error: f64,
    pub s0: f64,
    pub n_real_roots: usize,
    /// Difference in reprojection error to the second-best candidate.
    pub runner_up_gap: Option<f64>,
}

/// The `(ut2, ut3)` over the real roots of `h2(., s0)` and `h3(., s0)` that
/// minimises `|hmix|`, with that minimum. `None` if either sextic has no
/// real root.
pub fn back_substitute(s0: f64, sys: &ReducedSystem) -> Option<(f64, f64, f64)> {
    let s = rat_from_f64(s0)?;
    let roots = |h: &crate::poly::MPoly, ut: &str| -> Vec<f64> {
        match h.eval_var(S, &s).to_unipoly(ut) {
            Some(p) if !p.is_zero() => real_roots(&p, ROOT_TOL).into_iter().map(|r| r.value).collect(),
            _ => Vec::new(),
        }
    };
    let (r2, r3) = (roots(&sys.h2, "ut2"), roots(&sys.h3, "ut3"));
    let mut best: Option<(f64, f64, f64)> = None;
    for &a in &r2 {
        for &b in &r3 {
            let m = sys.hmix.eval_scaled_f64(&[("ut2", a), ("ut3", b), (S, s0)]).abs();
            if best.is_none_or(|(_, _, bm)| m < bm) {
                best = Some((a, b, m));
            }
        }
    }
    best
}

/// Inverts `ut = u - 1/u` on the branch `|u| <= 1`; `sign(0) = +1`.
pub fn u_from_tilde(ut: f64) -> f64 {
    let h = ut / 2.0;
    let sign = if ut >= 0.0 { 1.0 } else { -1.0 };
    // ut/2 - sign * sqrt(h^2 + 1) without the cancellation.
    -sign / (h.abs() + h.hypot(1.0))
}

/// `(u, v, w)` for one camera from `ut` and `s0`, taking `w` from the linear
/// combination of two constraints that removes `w^2`.
pub fn cayley_from_tilde(ut: f64, s0: f64, f: &[WQuadratic; 3], cv: &CamVars) -> Result<Cayley> {
    let u = u_from_tilde(ut);
    let den = 1.0 + s0 * u;
    if den.abs() < 1e-14 * (1.0 + s0.abs()) {
        return Err(Error::DegenerateV);
    }
    let v = (s0 - u) / den;
    let rows = f.each_ref().map(|q| q.eval_f64(&[(cv.u, u), (cv.v, v)]));
    for (p, q) in [(0, 1), (0, 2), (1, 2)] {
        let ([a1, b1, c1], [a2, b2, c2]) = (rows[p], rows[q]);
        let d = a1 * b2 - b1 * a2;
        if d.abs() > 1e-12 * ((a1 * b2).abs() + (b1 * a2).abs()) {
            return Ok(Cayley { u, v, w: -(a1 * c2 - c1 * a2) / d });
        }
    }
    Err(Error::WDenominatorZero)
}

/// The second rotation with the same essential matrix up to sign.
pub fn twisted_counterpart(c: Cayley, y12: f64, yj2: f64) -> Result<Cayley> {
    let Cayley { u, v, w } = c;
    if u == 0.0 || v == 0.0 {
        return Err(Error::DegenerateTwist);
    }
    let num = y12 * w * (v + u) + yj2 * w * (v - u) - 2.0 * y12 * yj2 * u;
    let den = y12 * (v + u) - yj2 * (v - u) + 2.0 * y12 * yj2 * v * w;
    let scale = (y12 * (v + u)).abs() + (yj2 * (v - u)).abs() + (2.0 * y12 * yj2 * v * w).abs();
    if den.abs() <= 1e-14 * scale {
        return Err(Error::DegenerateTwist);
    }
    Ok(Cayley { u: -1.0 / u, v: -1.0 / v, w: -(v / u) * num / den })
}

/// Whether the first point, on the optical axis of both cameras, lies in
/// front of camera 1 and of a camera at `t` with orientation `r`.
fn first_point_in_front(r: &Matrix3<f64>, t: &Vector3<f64>) -> bool {
    let c1 = t.x / r[(0, 2)];
    c1.is_finite() && c1 < 0.0 && c1 * r[(2, 2)] < t.z
}

/// One of `(R+, t)`, `(R+, -t)`, `(R-, t)`, `(R-, -t)`, tried in that order.
pub fn cheirality_select(
    r_plus: &Matrix3<f64>,
    r_minus: &Matrix3<f64>,
    t_plus: &Vector3<f64>,
) -> Result<(Matrix3<f64>, Vector3<f64>)> {
    for r in [r_plus, r_minus] {
        for t in [*t_plus, -t_plus] {
            if first_point_in_front(r, &t) {
                return Ok((*r, t));
            }
        }
    }
    Err(Error::NoCheiralConfig)
}

/// Camera centres and points in the normalised frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Structure {
    pub o2: Vector3<f64>,
    pub o3: Vector3<f64>,
    pub points: [Vector3<f64>; 4],
}

fn ray(n: &NormalizedProblem, j: usize, i: usize) -> Vector3<f64> {
    Vector3::new(n.x(j, i), n.y(j, i), 1.0)
}

/// Scene points on the rays of camera 1, triangulated against camera 2 in
/// the least-squares sense over both image coordinates, and `O3` on the
/// baseline fitted to the rays of camera 3. On noiseless data this agrees
/// with the closed-form depth ratios.
pub fn recover_structure(
    r2: &Matrix3<f64>,
    r3: &Matrix3<f64>,
    t: &Vector3<f64>,
    sigma: i32,
    n: &NormalizedProblem,
) -> Result<Structure> {
    if t.z.abs() < 1e-12 * t.norm() {
        return Err(Error::DegenerateTz);
    }
    let o2 = t * (n.baseline / t.norm());
    let mut points = [Vector3::zeros(); 4];
    for (i, p) in points.iter_mut().enumerate() {
        let a = ray(n, 0, i);
        let b = r2 * ray(n, 1, i);
        // z a - mu b = o2
        let (aa, ab, bb) = (a.dot(&a), a.dot(&b), b.dot(&b));
        let det = aa * bb - ab * ab;
        if det <= 1e-14 * aa * bb {
            return Err(Error::ParallelRays);
        }
        let z = (bb * a.dot(&o2) - ab * b.dot(&o2)) / det;
        *p = a * z;
    }
    // (P_i - lambda o2) x r3 ray_3i = 0
    let (mut num, mut den) = (0.0, 0.0);
    for (i, p) in points.iter().enumerate() {
        let d = r3 * ray(n, 2, i);
        let (co, cp) = (o2.cross(&d), p.cross(&d));
        num += co.dot(&cp);
        den += co.dot(&co);
    }
    if den == 0.0 {
        return Err(Error::ParallelRays);
    }
    let lambda = num / den;
    if lambda * sigma as f64 <= 0.0 {
        return Err(Error::NoCheiralConfig);
    }
    Ok(Structure { o2, o3: o2 * lambda, points })
}

/// Sum of squared differences between the measured image points and the
/// reprojections of the solution, in the original image coordinates.
pub fn reprojection_error(sol: &PoseSolution, inst: &ProblemInstance) -> Result<f64> {
    let cams = [(Matrix3::identity(), Vector3::zeros()), (sol.r2, sol.o2), (sol.r3, sol.o3)];
    let mut eps = 0.0;
    for (j, (r, o)) in cams.iter().enumerate() {
        for (i, p) in sol.points.iter().enumerate() {
            let q = r.transpose() * (p - o);
            if !(q.z > 0.0) {
                return Err(Error::BehindCamera);
            }
            let [x, y] = inst.views[j][i];
            eps += (x - q.x / q.z).powi(2) + (y - q.y / q.z).powi(2);
        }
    }
    Ok(eps)
}

/// Everything recovered from one root, in the normalised frame.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub root: CandidateRoot,
    pub r2: Matrix3<f64>,
    pub r3: Matrix3<f64>,
    pub t: Vector3<f64>,
    pub sigma: i32,
    pub structure: Structure,
}

/// Back-substitution, twisted pairs and cheirality for one root of `S`.
pub fn candidate(s0: f64, sys: &crate::constraints::System, n: &NormalizedProblem) -> Result<Candidate> {
    let (u2t, u3t, mix_residual) = back_substitute(s0, &sys.reduced).ok_or(Error::NoSolution)?;
    let y12 = n.y(0, 1);
    let mut cay = [Cayley { u: 0.0, v: 0.0, w: 0.0 }; 2];
    let mut tw = cay;
    for (k, ut) in [u2t, u3t].into_iter().enumerate() {
        let j = k + 2;
        cay[k] = cayley_from_tilde(ut, s0, &sys.f[k], &cam_vars(j))?;
        tw[k] = twisted_counterpart(cay[k], y12, n.y(j - 1, 1))?;
    }
    let root = CandidateRoot { s0, u2t, u3t, cayley: cay, twisted: tw, mix_residual };
    let (rp, rm) = (cay[0].rotation(), tw[0].rotation());
    let t = translation_from_rotation(&rp, y12, n.y(1, 1))?;
    let (r2, t) = cheirality_select(&rp, &rm, &t)?;
    let (r3, t3) = cheirality_select(&cay[1].rotation(), &tw[1].rotation(), &t)?;
    let sigma = if t3 == t { 1 } else { -1 };
    let structure = recover_structure(&r2, &r3, &t, sigma, n)?;
    Ok(Candidate { root, r2, r3, t, sigma, structure })
}

/// Maps a normalised-frame candidate back to the original frames.
pub fn denormalize(c: &Candidate, n: &NormalizedProblem) -> PoseSolution {
    let r1t = n.rho[0].transpose();
    let o2 = r1t * c.structure.o2;
    PoseSolution {
        r2: r1t * c.r2 * n.rho[1],
        r3: r1t * c.r3 * n.rho[2],
        t: o2,
        sigma: c.sigma,
        o2,
        o3: r1t * c.structure.o3,
        points: c.structure.points.map(|p| r1t * p),
        reproj_error: f64::NAN,
        s0: c.root.s0,
        n_real_roots: 0,
        runner_up_gap: None,
    }
}

/// Full diagnostic output of [`solve`].
#[derive(Debug)]
pub struct SolveReport {
    pub solution: PoseSolution,
    pub eliminant: Eliminant,
    /// Real roots of `S`, ascending.
    pub roots: Vec<f64>,
    /// Per root: the de-normalised solution with its error, or why it failed.
    pub candidates: Vec<(f64, Result<PoseSolution>)>,
}

pub fn solve_detailed(inst: &ProblemInstance) -> Result<SolveReport> {
    let n = apply_normalization(inst)?;
    let pts = exact_points(&n);
    let sys = build_system(&pts)?;
    let elim = eliminate(&sys.reduced, &pts)?;
    let roots: Vec<f64> = real_roots(&elim.s, ROOT_TOL).into_iter().map(|r| r.value).collect();
    let candidates: Vec<(f64, Result<PoseSolution>)> = roots
        .iter()
        .map(|&s0| {
            let sol = candidate(s0, &sys, &n).and_then(|c| {
                let mut sol = denormalize(&c, &n);
                sol.reproj_error = reprojection_error(&sol, inst)?;
                sol.n_real_roots = roots.len();
                Ok(sol)
            });
            (s0, sol)
        })
        .collect();
    let solution = select(&candidates, &elim.s)?;
    Ok(SolveReport { solution, eliminant: elim, roots, candidates })
}

/// Smallest reprojection error; near-ties go to the root with the smaller
/// Newton step, i.e. the better conditioned one.
fn select(candidates: &[(f64, Result<PoseSolution>)], s: &UniPoly) -> Result<PoseSolution> {
    let mut ok: Vec<(&PoseSolution, f64)> =
        candidates.iter().filter_map(|(s0, r)| r.as_ref().ok().map(|sol| (sol, s.newton_step(*s0)))).collect();
    ok.sort_by(|a, b| a.0.reproj_error.total_cmp(&b.0.reproj_error));
    let best_eps = ok.first().ok_or(Error::NoSolution)?.0.reproj_error;
    let best = ok
        .iter()
        .take_while(|(sol, _)| sol.reproj_error - best_eps <= TIE_EPS)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    let mut sol = best.0.clone();
    sol.runner_up_gap = ok
        .iter()
        .filter(|(other, _)| !std::ptr::eq(*other, best.0))
        .map(|(other, _)| other.reproj_error - sol.reproj_error)
        .next();
    Ok(sol)
}

/// The reprojection-error minimising pose over all real roots of the
/// eliminant.
pub fn solve(inst: &ProblemInstance) -> Result<PoseSolution> {
    solve_detailed(inst).map(|r| r.solution)
}

#[cfg(test)]
mod tests;
