//! Epipolar constraints as polynomials in the Cayley parameters, and their
//! reduction to three polynomials in `(ut2, ut3, s)`.
//!
//! Camera numbers are `j = 2, 3` and points are indexed from 1 in public
//! signatures, to match the usual notation; arrays are 0-based.

use num_traits::Zero;

use super::cayley::CayleySymbolic;
use super::symmetric::symmetric_reduce;
use crate::error::{Error, Result};
use crate::normalize::NormalizedProblem;
use crate::poly::{rat_from_f64, MPoly, Rat};

/// Exact rational copy of normalised image data, `points[j][i] = [x, y]`.
pub type ExactPoints = [[[Rat; 2]; 4]; 3];

pub const S: &str = "s";

#[derive(Clone, Copy, Debug)]
pub struct CamVars {
    pub u: &'static str,
    pub v: &'static str,
    pub w: &'static str,
    pub ut: &'static str,
}

pub fn cam_vars(j: usize) -> CamVars {
    match j {
        2 => CamVars { u: "u2", v: "v2", w: "w2", ut: "ut2" },
        3 => CamVars { u: "u3", v: "v3", w: "w3", ut: "ut3" },
        _ => panic!("camera index must be 2 or 3, got {j}"),
    }
}

fn check_camera(j: usize) -> Result<()> {
    if j == 2 || j == 3 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("camera index must be 2 or 3, got {j}")))
    }
}

/// Converts floating-point data exactly (every `f64` is a dyadic rational).
pub fn exact_points(n: &NormalizedProblem) -> ExactPoints {
    n.points.map(|view| view.map(|p| p.map(|c| rat_from_f64(c).expect("finite coordinate"))))
}

/// Polynomial quadratic in one variable `w`: `a w^2 + b w + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct WQuadratic {
    pub a: MPoly,
    pub b: MPoly,
    pub c: MPoly,
}

impl WQuadratic {
    pub fn from_poly(f: &MPoly, w: &str) -> Result<WQuadratic> {
        let mut cs = f.coeffs_in(w);
        if cs.len() > 3 {
            return Err(Error::ClearingFailed);
        }
        cs.resize(3, MPoly::zero());
        let [c, b, a]: [MPoly; 3] = cs.try_into().expect("three coefficients");
        Ok(WQuadratic { a, b, c })
    }

    pub fn to_poly(&self, w: &str) -> MPoly {
        MPoly::from_coeffs_in(w, &[self.c.clone(), self.b.clone(), self.a.clone()])
    }

    pub fn eval_f64(&self, values: &[(&str, f64)]) -> [f64; 3] {
        [self.a.eval_f64(values), self.b.eval_f64(values), self.c.eval_f64(values)]
    }

    fn row(&self) -> [&MPoly; 3] {
        [&self.a, &self.b, &self.c]
    }
}

fn det3(m: [[&MPoly; 3]; 3]) -> MPoly {
    let minor = |a: &MPoly, b: &MPoly, c: &MPoly, d: &MPoly| &(a * d) - &(b * c);
    let t0 = m[0][0] * &minor(m[1][1], m[1][2], m[2][1], m[2][2]);
    let t1 = m[0][1] * &minor(m[1][0], m[1][2], m[2][0], m[2][2]);
    let t2 = m[0][2] * &minor(m[1][0], m[1][1], m[2][0], m[2][1]);
    &(&t0 - &t1) + &t2
}

/// Rows of the rank-deficient matrix for camera `j`, each multiplied by the
/// denominator `Delta * omega` of its directing vector, i.e. row `i` is
/// `(n_y - y1 n_z, x1 n_z - n_x, y1 n_x - x1 n_y)` with `n = N (x_ji, y_ji, 1)`.
pub fn build_q(j: usize, pts: &ExactPoints) -> Result<[[MPoly; 3]; 4]> {
    check_camera(j)?;
    let cv = cam_vars(j);
    let cay = CayleySymbolic::new(cv.u, cv.v, cv.w);
    Ok(q_rows(&cay, j - 1, pts))
}

fn q_rows(cay: &CayleySymbolic, view: usize, pts: &ExactPoints) -> [[MPoly; 3]; 4] {
    std::array::from_fn(|i| {
        let [x, y] = &pts[view][i];
        let [nx, ny, nz] = cay.apply(x, y);
        let [x1, y1] = &pts[0][i];
        let (x1, y1) = (MPoly::constant(x1), MPoly::constant(y1));
        [&ny - &(&y1 * &nz), &(&x1 * &nz) - &nx, &(&y1 * &nx) - &(&x1 * &ny)]
    })
}

const TRIPLES: [[usize; 3]; 3] = [[0, 1, 2], [0, 1, 3], [0, 2, 3]];

fn f_from_q(q: &[[MPoly; 3]; 4], cay: &CayleySymbolic, w: &str, i: usize) -> Result<WQuadratic> {
    let [a, b, c] = TRIPLES[i];
    let d = det3([
        [&q[a][0], &q[a][1], &q[a][2]],
        [&q[b][0], &q[b][1], &q[b][2]],
        [&q[c][0], &q[c][1], &q[c][2]],
    ]);
    let clear = &cay.delta * &MPoly::var(w);
    let f = d.exact_div(&clear).map_err(|_| Error::ClearingFailed)?;
    WQuadratic::from_poly(&f, w)
}

/// Constraint `i` (1..=3, for point triples 123, 124, 134) of camera `j`.
pub fn build_fji(j: usize, i: usize, pts: &ExactPoints) -> Result<WQuadratic> {
    check_camera(j)?;
    if !(1..=3).contains(&i) {
        return Err(Error::Precondition(format!("constraint index must be 1..=3, got {i}")));
    }
    let cv = cam_vars(j);
    let cay = CayleySymbolic::new(cv.u, cv.v, cv.w);
    f_from_q(&q_rows(&cay, j - 1, pts), &cay, cv.w, i - 1)
}

/// All three constraints of camera `j`.
pub fn build_f(j: usize, pts: &ExactPoints) -> Result<[WQuadratic; 3]> {
    check_camera(j)?;
    let cv = cam_vars(j);
    let cay = CayleySymbolic::new(cv.u, cv.v, cv.w);
    let q = q_rows(&cay, j - 1, pts);
    Ok([f_from_q(&q, &cay, cv.w, 0)?, f_from_q(&q, &cay, cv.w, 1)?, f_from_q(&q, &cay, cv.w, 2)?])
}

/// Collinearity constraint coupling both cameras through the first two
/// points: the determinant of rows 1, 2 of camera 2 and row 2 of camera 3,
/// divided by the numerator of the first directing vector's `x` component.
pub fn build_fmix(pts: &ExactPoints) -> Result<MPoly> {
    let (c2, c3) = (cam_vars(2), cam_vars(3));
    let cay2 = CayleySymbolic::new(c2.u, c2.v, c2.w);
    let cay3 = CayleySymbolic::new(c3.u, c3.v, c3.w);
    let q2 = q_rows(&cay2, 1, pts);
    let q3 = q_rows(&cay3, 2, pts);
    let d = det3([
        [&q2[0][0], &q2[0][1], &q2[0][2]],
        [&q2[1][0], &q2[1][1], &q2[1][2]],
        [&q3[1][0], &q3[1][1], &q3[1][2]],
    ]);
    let nx21 = &cay2.apply(&pts[1][0][0], &pts[1][0][1])[0];
    d.exact_div(nx21).map_err(|_| Error::ClearingFailed)
}

/// Determinant of the coefficient rows of three quadratics in the same
/// variable; it vanishes whenever they share a root.
pub fn det3_condition(rows: [&WQuadratic; 3]) -> MPoly {
    det3(rows.map(|r| r.row()))
}

/// `(y12^2 - yj2^2) u^2 + 2 (y12^2 + 2 y12^2 yj2^2 + yj2^2) u v + (y12^2 - yj2^2) v^2`
pub fn quadratic_divisor(j: usize, pts: &ExactPoints) -> MPoly {
    let cv = cam_vars(j);
    let a = &pts[0][1][1] * &pts[0][1][1];
    let b = &pts[j - 1][1][1] * &pts[j - 1][1][1];
    let two = Rat::from_integer(2.into());
    let diag = MPoly::constant(&(&a - &b));
    let mid = MPoly::constant(&(&two * &(&(&a + &(&two * &(&a * &b))) + &b)));
    let (u, v) = (MPoly::var(cv.u), MPoly::var(cv.v));
    &(&(&diag * &u.pow(2)) + &(&mid * &(&u * &v))) + &(&diag * &v.pow(2))
}

#[derive(Clone, Debug)]
pub struct MixedChain {
    /// `w2` eliminated; quadratic in `w3`.
    pub fhat: MPoly,
    /// Both `w` eliminated.
    pub gmix: MPoly,
}

pub fn mixed_chain(f2: &[WQuadratic; 3], f3: &[WQuadratic; 3], fmix: &MPoly, pts: &ExactPoints) -> Result<MixedChain> {
    let am = WQuadratic::from_poly(fmix, cam_vars(2).w)?;
    let fhat = det3_condition([&f2[0], &f2[1], &am]).exact_div(&quadratic_divisor(2, pts))?;
    let ah = WQuadratic::from_poly(&fhat, cam_vars(3).w)?;
    let gmix = det3_condition([&f3[0], &f3[1], &ah]).exact_div(&quadratic_divisor(3, pts))?;
    Ok(MixedChain { fhat, gmix })
}

/// `(1 + s u)^deg p(u, (s - u) / (1 + s u))` for one camera's `(u, v)`.
fn clear_v(p: &MPoly, cv: CamVars, deg: u32) -> Result<MPoly> {
    let cs = p.coeffs_in(cv.v);
    if cs.len() > deg as usize + 1 {
        return Err(Error::DegreeMismatch { expected: deg as usize, found: cs.len() - 1 });
    }
    let (u, s) = (MPoly::var(cv.u), MPoly::var(S));
    let num = &s - &u;
    let den = &MPoly::one() + &(&s * &u);
    let mut out = MPoly::zero();
    for (e, c) in cs.iter().enumerate() {
        if !c.is_zero() {
            out = &out + &(c * &(&num.pow(e as u32) * &den.pow(deg - e as u32)));
        }
    }
    Ok(out)
}

/// `h_j(u_j, s) = (1 + s u_j)^6 g_j(u_j, (s - u_j)/(1 + s u_j))`.
pub fn substitute_s(g: &MPoly, j: usize) -> Result<MPoly> {
    check_camera(j)?;
    clear_v(g, cam_vars(j), 6)
}

/// Mixed counterpart of [`substitute_s`], with the extra factors
/// `(1 + u2^2)(1 + u3^2)(x13 + y13 s)(x14 + y14 s)` divided out.
pub fn substitute_s_mix(gmix: &MPoly, pts: &ExactPoints) -> Result<MPoly> {
    let (c2, c3) = (cam_vars(2), cam_vars(3));
    let h = clear_v(&clear_v(gmix, c2, 3)?, c3, 3)?;
    let s = MPoly::var(S);
    let lin = |p: &[Rat; 2]| &MPoly::constant(&p[0]) + &(&MPoly::constant(&p[1]) * &s);
    let one = MPoly::one();
    let div = &(&(&one + &MPoly::var(c2.u).pow(2)) * &(&one + &MPoly::var(c3.u).pow(2)))
        * &(&lin(&pts[0][2]) * &lin(&pts[0][3]));
    h.exact_div(&div)
}

/// The three polynomials in `(ut2, ut3, s)` that the elimination runs on.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSystem {
    pub h2: MPoly,
    pub h3: MPoly,
    pub hmix: MPoly,
}

/// Degree profile of a [`ReducedSystem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub ut_degree: [u32; 2],
    /// `s`-degree of the leading `ut` coefficient of `h2`, `h3`.
    pub lead_s_degree: [u32; 2],
    /// Multiplicity of `s` in those leading coefficients.
    pub lead_s_valuation: [u32; 2],
    pub mix_ut_degree: [u32; 2],
    pub total_degree: [u32; 3],
}

fn s_valuation(p: &MPoly) -> u32 {
    p.coeffs_in(S).iter().position(|c| !c.is_zero()).unwrap_or(0) as u32
}

impl ReducedSystem {
    pub fn shape(&self) -> Shape {
        let (t2, t3) = (cam_vars(2).ut, cam_vars(3).ut);
        let l2 = self.h2.leading_coeff_in(t2);
        let l3 = self.h3.leading_coeff_in(t3);
        Shape {
            ut_degree: [self.h2.degree(t2), self.h3.degree(t3)],
            lead_s_degree: [l2.degree(S), l3.degree(S)],
            lead_s_valuation: [s_valuation(&l2), s_valuation(&l3)],
            mix_ut_degree: [self.hmix.degree(t2), self.hmix.degree(t3)],
            total_degree: [self.h2.total_degree(), self.h3.total_degree(), self.hmix.total_degree()],
        }
    }

    /// Leading `ut` coefficient of `h_j` as a polynomial in `s`.
    pub fn leading(&self, j: usize) -> MPoly {
        let cv = cam_vars(j);
        if j == 2 { &self.h2 } else { &self.h3 }.leading_coeff_in(cv.ut)
    }
}

/// Every intermediate polynomial of the construction.
#[derive(Clone, Debug)]
pub struct System {
    pub points: ExactPoints,
    /// `f[j - 2][i - 1]`
    pub f: [[WQuadratic; 3]; 2],
    pub fmix: MPoly,
    pub fhat: MPoly,
    pub g: [MPoly; 2],
    pub gmix: MPoly,
    pub h: [MPoly; 2],
    pub hmix: MPoly,
    pub reduced: ReducedSystem,
}

pub fn build_system(pts: &ExactPoints) -> Result<System> {
    if !(pts.iter().all(|v| v[0][0].is_zero() && v[0][1].is_zero() && v[1][0].is_zero())) {
        return Err(Error::Precondition("image data are not normalised".into()));
    }
    let f2 = build_f(2, pts)?;
    let f3 = build_f(3, pts)?;
    let fmix = build_fmix(pts)?;
    let chain = mixed_chain(&f2, &f3, &fmix, pts)?;
    let g2 = det3_condition([&f2[0], &f2[1], &f2[2]]);
    let g3 = det3_condition([&f3[0], &f3[1], &f3[2]]);
    let h2 = substitute_s(&g2, 2)?;
    let h3 = substitute_s(&g3, 3)?;
    let hmix = substitute_s_mix(&chain.gmix, pts)?;
    let (c2, c3) = (cam_vars(2), cam_vars(3));
    let reduced = ReducedSystem {
        h2: symmetric_reduce(&h2, c2.u, c2.ut, 6)?,
        h3: symmetric_reduce(&h3, c3.u, c3.ut, 6)?,
        hmix: symmetric_reduce(&symmetric_reduce(&hmix, c2.u, c2.ut, 2)?, c3.u, c3.ut, 2)?,
    };
    Ok(System {
        points: pts.clone(),
        f: [f2, f3],
        fmix,
        fhat: chain.fhat,
        g: [g2, g3],
        gmix: chain.gmix,
        h: [h2, h3],
        hmix,
        reduced,
    })
}

/// Convenience: normalised float data to the reduced system.
pub fn reduce(n: &NormalizedProblem) -> Result<System> {
    build_system(&exact_points(n))
}

impl System {
    /// `f_i` of camera `j` as a full polynomial.
    pub fn f_poly(&self, j: usize, i: usize) -> MPoly {
        self.f[j - 2][i - 1].to_poly(cam_vars(j).w)
    }
}
