//! Two-stage resultant elimination down to the univariate eliminant `S(s)`.

use num_traits::{One, Signed};
use serde::Serialize;

use crate::constraints::{cam_vars, ExactPoints, ReducedSystem, S};
use crate::error::{Error, Result};
use crate::poly::{content, poly_sqrt, resultant_multimodular, resultant_quotient, MPoly, Rat, UniPoly};

pub const S_DEGREE: usize = 36;
pub const SK_DEGREE: usize = 4;

#[derive(Clone, Debug)]
pub struct Eliminant {
    pub s: UniPoly,
    pub s2: UniPoly,
    pub s3: UniPoly,
    /// Cofactor of the first resultant, in `(ut3, s)`.
    pub r: MPoly,
}

/// Output of the first elimination for one camera.
#[derive(Clone, Debug)]
pub struct Stage1 {
    /// The resultant itself, before any division.
    pub resultant: MPoly,
    /// Its content with respect to the surviving `ut` variable.
    pub content: UniPoly,
    pub r: MPoly,
    pub sk: UniPoly,
}

fn s_poly(coeffs: &[i64]) -> UniPoly {
    UniPoly::from_ints(S, coeffs)
}

fn linear(p: &[Rat; 2]) -> UniPoly {
    UniPoly::new(S, &[p[0].clone(), p[1].clone()])
}

/// `(s^2 + 1)^a s^4 (x13 + y13 s)^4 (x14 + y14 s)^4`
fn known_factors(pts: &ExactPoints, a: u32) -> UniPoly {
    let mut d = s_poly(&[1, 0, 1]).pow(a);
    d = &d * &s_poly(&[0, 1]).pow(4);
    d = &d * &linear(&pts[0][2]).pow(4);
    &d * &linear(&pts[0][3]).pow(4)
}

/// Integer-primitive with positive leading coefficient.
fn normalized(p: &UniPoly) -> UniPoly {
    let q = p.primitive_part();
    if q.lc().is_negative() {
        q.scale(&-Rat::one())
    } else {
        q
    }
}

/// Eliminates `ut_camera` between `h_camera` and `hmix` and splits off the
/// square factor `S_camera^2` together with `(s^2 + 1)^6`.
pub fn stage1(sys: &ReducedSystem, camera: usize) -> Result<Stage1> {
    let (h, other) = match camera {
        2 => (&sys.h2, 3),
        3 => (&sys.h3, 2),
        _ => return Err(Error::Precondition(format!("camera must be 2 or 3, got {camera}"))),
    };
    let res = resultant_multimodular(h, &sys.hmix, cam_vars(camera).ut)?;
    if res.is_zero() {
        return Err(Error::ZeroInput);
    }
    let cont = content(&res, cam_vars(other).ut)?;
    let sq = cont.exact_div(&s_poly(&[1, 0, 1]).pow(6))?;
    let sk = poly_sqrt(&sq)?;
    if sk.degree() != SK_DEGREE {
        return Err(Error::DegreeMismatch { expected: SK_DEGREE, found: sk.degree() });
    }
    let r = res.exact_div(&MPoly::from_unipoly(&cont))?;
    Ok(Stage1 { resultant: res, content: cont, r, sk })
}

fn to_s(p: &MPoly) -> Result<UniPoly> {
    p.to_unipoly(S).ok_or_else(|| Error::Precondition("second resultant is not univariate in s".into()))
}

fn deflate(res: &UniPoly, div: &UniPoly) -> Result<UniPoly> {
    let q = normalized(&res.exact_div(div)?);
    if q.degree() != S_DEGREE {
        return Err(Error::DegreeMismatch { expected: S_DEGREE, found: q.degree() });
    }
    Ok(q)
}

fn stage2_divisor(s3: &UniPoly, pts: &ExactPoints) -> UniPoly {
    &known_factors(pts, 36) * &s3.pow(12)
}

/// `Res_ut3(h3, r)` with the known factors divided out, pointwise modulo
/// primes.
pub fn stage2(sys: &ReducedSystem, r: &MPoly, s3: &UniPoly, pts: &ExactPoints) -> Result<UniPoly> {
    let q = resultant_quotient(&sys.h3, r, cam_vars(3).ut, &stage2_divisor(s3, pts), S_DEGREE)?;
    let q = normalized(&q);
    if q.degree() != S_DEGREE {
        return Err(Error::DegreeMismatch { expected: S_DEGREE, found: q.degree() });
    }
    Ok(q)
}

/// [`stage2`] through the full resultant and an exact polynomial division.
pub fn stage2_exact(sys: &ReducedSystem, r: &MPoly, s3: &UniPoly, pts: &ExactPoints) -> Result<UniPoly> {
    let res = to_s(&resultant_multimodular(&sys.h3, r, cam_vars(3).ut)?)?;
    deflate(&res, &stage2_divisor(s3, pts))
}

/// The same eliminant from the undivided first resultant.
pub fn stage2_full(
    sys: &ReducedSystem,
    first: &MPoly,
    s2: &UniPoly,
    s3: &UniPoly,
    pts: &ExactPoints,
) -> Result<UniPoly> {
    let res = to_s(&resultant_multimodular(&sys.h3, first, cam_vars(3).ut)?)?;
    deflate(&res, &(&(&known_factors(pts, 72) * &s2.pow(12)) * &s3.pow(12)))
}

/// Full elimination through the cofactor route.
pub fn eliminate(sys: &ReducedSystem, pts: &ExactPoints) -> Result<Eliminant> {
    let first = stage1(sys, 2)?;
    let s3 = stage1(sys, 3)?.sk;
    let s = stage2(sys, &first.r, &s3, pts)?;
    Ok(Eliminant { s, s2: first.sk, s3, r: first.r })
}

/// Whether a real root of `S` extends to a solution of the reduced system:
/// the leading `ut` coefficients of `h2` and `h3` must not both vanish.
pub fn extension_check(s_root: f64, sys: &ReducedSystem, elim: &UniPoly) -> Result<bool> {
    let step = elim.newton_step(s_root);
    if !(step <= 1e-8 * (1.0 + s_root.abs())) {
        return Err(Error::Precondition(format!("{s_root} is not a root of S (Newton step {step:.2e})")));
    }
    Ok(!leading_coefficients_vanish(s_root, sys))
}

/// True when the leading `ut` coefficients of `h2` and `h3` both vanish at
/// `s` (relative tolerance 1e-10).
pub fn leading_coefficients_vanish(s: f64, sys: &ReducedSystem) -> bool {
    let vanish = |j: usize| -> bool {
        let lead = sys.leading(j).to_unipoly(S).expect("univariate leading coefficient");
        lead.is_zero() || lead.relative_residual(s) <= 1e-10
    };
    vanish(2) && vanish(3)
}

/// Closed-form constant term of `S_k`, up to a nonzero scalar.
pub fn sk_trailing_closed_form(k: usize, pts: &ExactPoints) -> Rat {
    let x = |j: usize, i: usize| pts[j - 1][i - 1][0].clone();
    let y = |j: usize, i: usize| pts[j - 1][i - 1][1].clone();
    let yk2 = y(k, 2);
    let a = &(&(&(&x(1, 4) * &x(k, 3)) * &(&y(1, 2) - &y(1, 3))) * &(&yk2 - &y(k, 4)))
        - &(&(&(&x(1, 3) * &x(k, 4)) * &(&y(1, 2) - &y(1, 4))) * &(&yk2 - &y(k, 3)));
    // x_kq^2 - x_k3 x_k4 - y_k3 y_k4 + y_kq^2
    let quad = |q: usize| {
        &(&(&(&x(k, q) * &x(k, q)) - &(&x(k, 3) * &x(k, 4))) - &(&y(k, 3) * &y(k, 4))) + &(&y(k, q) * &y(k, q))
    };
    let b = &(&(&x(1, 3) * &(&y(1, 2) - &y(1, 4))) * &quad(4)) + &(&(&x(1, 4) * &(&y(1, 2) - &y(1, 3))) * &quad(3));
    &(&(&yk2 * &yk2) * &a) * &b
}

/// The eliminant with cameras 2 and 3 exchanged, compared up to a positive
/// scalar. Reported only.
pub fn mirror_agrees(elim: &UniPoly, pts: &ExactPoints) -> Result<bool> {
    let swapped: ExactPoints = [pts[0].clone(), pts[2].clone(), pts[1].clone()];
    let sys = crate::constraints::build_system(&swapped)?;
    let other = eliminate(&sys.reduced, &swapped)?;
    Ok(&other.s == elim)
}

#[derive(Serialize)]
pub struct EliminantDump {
    pub s: Vec<String>,
    pub s2: Vec<String>,
    pub s3: Vec<String>,
}

/// Integer coefficients, constant term first, as decimal strings.
pub fn int_coeff_strings(p: &UniPoly) -> Vec<String> {
    p.primitive_part().int_coeffs().iter().map(|c| c.to_string()).collect()
}

impl Eliminant {
    pub fn dump(&self) -> EliminantDump {
        EliminantDump {
            s: int_coeff_strings(&self.s),
            s2: int_coeff_strings(&self.s2),
            s3: int_coeff_strings(&self.s3),
        }
    }
}
