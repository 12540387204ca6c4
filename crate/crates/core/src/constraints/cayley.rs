//! Rational rotation parameterisation `(u, v, w)` and its relation to Euler
//! angles, translations and essential matrices.
//!
//! `R = N(u, v, w) / delta` with `delta = 1 + u^2 + w^2 (1 + v^2)`; the
//! parameters correspond to the quaternion `(1, w, v w, u)`.

use nalgebra::{Matrix3, Vector3};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{MPoly, Rat};

/// Entries of `N(u, v, w)` for any ring-like scalar.
fn numerator<T>(u: &T, v: &T, w: &T, one: &T) -> [[T; 3]; 3]
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<Output = T>,
{
    let two = one.clone() + one.clone();
    let uu = u.clone() * u.clone();
    let vv = v.clone() * v.clone();
    let ww = w.clone() * w.clone();
    let vww = v.clone() * ww.clone();
    let uv = u.clone() * v.clone();
    let w2 = two.clone() * w.clone();
    [
        [
            one.clone() - uu.clone() + ww.clone() * (one.clone() - vv.clone()),
            two.clone() * (vww.clone() - u.clone()),
            w2.clone() * (u.clone() + v.clone()),
        ],
        [
            two.clone() * (vww + u.clone()),
            one.clone() - uu.clone() - ww.clone() * (one.clone() - vv.clone()),
            w2.clone() * (uv.clone() - one.clone()),
        ],
        [
            w2.clone() * (u.clone() - v.clone()),
            w2 * (uv + one.clone()),
            one.clone() + uu - ww * (one.clone() + vv),
        ],
    ]
}

fn delta<T>(u: &T, v: &T, w: &T, one: &T) -> T
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
{
    one.clone() + u.clone() * u.clone() + w.clone() * w.clone() * (one.clone() + v.clone() * v.clone())
}

pub fn cayley_rotation(u: f64, v: f64, w: f64) -> Matrix3<f64> {
    let n = numerator(&u, &v, &w, &1.0);
    let d = delta(&u, &v, &w, &1.0);
    Matrix3::from_fn(|r, c| n[r][c] / d)
}

pub fn cayley_rotation_exact(u: &Rat, v: &Rat, w: &Rat) -> [[Rat; 3]; 3] {
    let one = Rat::one();
    let d = delta(u, v, w, &one);
    numerator(u, v, w, &one).map(|row| row.map(|x| x / &d))
}

/// Symbolic numerator matrix and denominator in three named variables.
#[derive(Clone, Debug)]
pub struct CayleySymbolic {
    pub numerator: [[MPoly; 3]; 3],
    pub delta: MPoly,
}

impl CayleySymbolic {
    pub fn new(u: &str, v: &str, w: &str) -> CayleySymbolic {
        let (u, v, w, one) = (MPoly::var(u), MPoly::var(v), MPoly::var(w), MPoly::one());
        CayleySymbolic { numerator: numerator(&u, &v, &w, &one), delta: delta(&u, &v, &w, &one) }
    }

    /// `numerator * (x, y, 1)^T`.
    pub fn apply(&self, x: &Rat, y: &Rat) -> [MPoly; 3] {
        let (x, y) = (MPoly::constant(x), MPoly::constant(y));
        self.numerator.clone().map(|[a, b, c]| &(&(&a * &x) + &(&b * &y)) + &c)
    }
}

/// Inverse parameterisation; `None` for half-turns (`tr R = -1`) and for
/// rotations with `R32 = R23`, where `v` is undefined.
pub fn cayley_from_rotation(r: &Matrix3<f64>) -> Option<(f64, f64, f64)> {
    let t = 1.0 + r.trace();
    let q1 = r[(2, 1)] - r[(1, 2)];
    if t.abs() < 1e-14 || q1.abs() < 1e-300 {
        return None;
    }
    Some(((r[(1, 0)] - r[(0, 1)]) / t, (r[(0, 2)] - r[(2, 0)]) / q1, q1 / t))
}

/// Exact counterpart of [`cayley_from_rotation`] for rational rotations.
pub fn cayley_from_rotation_exact(r: &[[Rat; 3]; 3]) -> Option<(Rat, Rat, Rat)> {
    let t = Rat::one() + &r[0][0] + &r[1][1] + &r[2][2];
    let q1 = &r[2][1] - &r[1][2];
    if t.is_zero() || q1.is_zero() {
        return None;
    }
    Some((&(&r[1][0] - &r[0][1]) / &t, &(&r[0][2] - &r[2][0]) / &q1, q1 / t))
}

/// The shared variable `s = tan(phi) = (u + v) / (1 - u v)`.
pub fn s_of(u: f64, v: f64) -> f64 {
    (u + v) / (1.0 - u * v)
}

/// Euler angles `(phi, theta, psi)` of the composition
/// `R_z(phi) R_x(theta) R_z(psi)`:
/// `tan(phi) = (u+v)/(1-uv)`, `tan(psi) = (u-v)/(1+uv)`,
/// `tan(theta/2) = w sqrt((1+v^2)/(1+u^2))`.
pub fn euler_from_cayley(u: f64, v: f64, w: f64) -> Result<(f64, f64, f64)> {
    if (1.0 - u * v).abs() < 1e-14 || (1.0 + u * v).abs() < 1e-14 {
        return Err(Error::GimbalDegenerate);
    }
    // atan(u) +- atan(v) has the tangents above and selects the branch that
    // rebuilds the rotation with the positive theta sign.
    let (a, b) = (u.atan(), v.atan());
    let theta = 2.0 * (w * ((1.0 + v * v) / (1.0 + u * u)).sqrt()).atan();
    Ok((a + b, theta, a - b))
}

pub fn rotation_from_euler(phi: f64, theta: f64, psi: f64) -> Matrix3<f64> {
    use crate::normalize::{rot_x, rot_z};
    rot_z(phi) * rot_x(theta) * rot_z(psi)
}

/// `(t_x / t_z, t_y / t_x)` from the epipolar constraints of the first two
/// points of a normalised view pair.
pub fn translation_ratios(r: &Matrix3<f64>, y12: f64, yj2: f64) -> Result<(f64, f64)> {
    let (r13, r23) = (r[(0, 2)], r[(1, 2)]);
    let a = r[(0, 1)] * yj2 + r13;
    let den = (r23 * r[(0, 1)] - r13 * r[(1, 1)]) * yj2 + r13 * (r[(2, 1)] * yj2 + r[(2, 2)]) * y12;
    let scale = r.amax() * (1.0 + yj2.abs()) * (1.0 + y12.abs());
    if r13.abs() < 1e-14 || den.abs() < 1e-14 * scale {
        return Err(Error::DegenerateTranslation);
    }
    Ok((r13 * a * y12 / den, r23 / r13))
}

/// Translation direction with the gauge `t_z = 1`.
pub fn translation_from_rotation(r: &Matrix3<f64>, y12: f64, yj2: f64) -> Result<Vector3<f64>> {
    let (a, b) = translation_ratios(r, y12, yj2)?;
    Ok(Vector3::new(a, a * b, 1.0))
}

pub fn skew(t: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -t.z, t.y, t.z, 0.0, -t.x, -t.y, t.x, 0.0)
}

/// `E = [t]_x R`, so that `p1^T E pj = 0` for corresponding points.
pub fn essential(r: &Matrix3<f64>, t: &Vector3<f64>) -> Matrix3<f64> {
    skew(t) * r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn spec_examples() {
        assert_eq!(cayley_rotation(0.0, 0.0, 0.0), Matrix3::identity());
        for v in [0.0, 0.7, -3.0] {
            let r = cayley_rotation(1.0, v, 0.0);
            assert_eq!(r, Matrix3::new(0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0));
        }
        let r = cayley_rotation(0.0, 0.0, 1.0);
        assert_eq!(r, Matrix3::new(1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0));
        let (phi, theta, psi) = euler_from_cayley(1.0, 0.0, 0.0).unwrap();
        assert!((phi - FRAC_PI_4).abs() < 1e-15 && (psi - FRAC_PI_4).abs() < 1e-15 && theta == 0.0);
        assert_eq!(euler_from_cayley(0.0, 0.0, 0.0).unwrap(), (0.0, 0.0, 0.0));
        assert!(matches!(euler_from_cayley(1.0, 1.0, 0.3), Err(Error::GimbalDegenerate)));
    }

    #[test]
    fn random_rotations_are_orthonormal_and_rebuild_from_euler() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let (u, v, w) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let r = cayley_rotation(u, v, w);
            assert!((r.transpose() * r - Matrix3::identity()).amax() < 1e-12);
            assert!((r.determinant() - 1.0).abs() < 1e-12);
            let (phi, theta, psi) = euler_from_cayley(u, v, w).unwrap();
            assert!((phi.tan() - (u + v) / (1.0 - u * v)).abs() < 1e-8 * (1.0 + phi.tan().abs()));
            assert!((psi.tan() - (u - v) / (1.0 + u * v)).abs() < 1e-8 * (1.0 + psi.tan().abs()));
            assert!((rotation_from_euler(phi, theta, psi) - r).amax() < 1e-10);
            let (u2, v2, w2) = cayley_from_rotation(&r).unwrap();
            assert!((u2 - u).abs() < 1e-9 * (1.0 + u.abs()));
            assert!((v2 - v).abs() < 1e-9 * (1.0 + v.abs()));
            assert!((w2 - w).abs() < 1e-9 * (1.0 + w.abs()));
        }
    }

    #[test]
    fn symbolic_numerator_is_orthogonal() {
        let c = CayleySymbolic::new("u", "v", "w");
        let d2 = c.delta.pow(2);
        for i in 0..3 {
            for k in 0..3 {
                let mut acc = MPoly::zero();
                for m in 0..3 {
                    acc = &acc + &(&c.numerator[i][m] * &c.numerator[k][m]);
                }
                assert_eq!(acc, if i == k { d2.clone() } else { MPoly::zero() });
            }
        }
        let n = &c.numerator;
        let det = &(&(&n[0][0] * &(&(&n[1][1] * &n[2][2]) - &(&n[1][2] * &n[2][1])))
            - &(&n[0][1] * &(&(&n[1][0] * &n[2][2]) - &(&n[1][2] * &n[2][0]))))
            + &(&n[0][2] * &(&(&n[1][0] * &n[2][1]) - &(&n[1][1] * &n[2][0])));
        assert_eq!(det, c.delta.pow(3));
    }

    #[test]
    fn exact_inverse_parameterisation() {
        let (u, v, w) = (rat(2, 3), rat(-5, 7), rat(1, 4));
        let r = cayley_rotation_exact(&u, &v, &w);
        assert_eq!(cayley_from_rotation_exact(&r), Some((u, v, w)));
    }

    #[test]
    fn translation_examples() {
        let rz = cayley_rotation(0.4, 0.1, 0.0);
        assert!(matches!(translation_ratios(&rz, 0.3, 0.2), Err(Error::DegenerateTranslation)));
        let r = cayley_rotation(1.0, 0.0, 0.5);
        let (_, tyx) = translation_ratios(&r, 0.3, 0.2).unwrap();
        assert!((tyx + 1.0).abs() < 1e-15);
    }

    #[test]
    fn translation_satisfies_first_two_epipolar_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let r = cayley_rotation(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let (y12, yj2) = (rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5));
            let t = translation_from_rotation(&r, y12, yj2).unwrap();
            let e = essential(&r, &t);
            let scale = e.amax();
            let r1 = (Vector3::new(0.0, 0.0, 1.0).transpose() * e * Vector3::new(0.0, 0.0, 1.0))[0];
            let r2 = (Vector3::new(0.0, y12, 1.0).transpose() * e * Vector3::new(0.0, yj2, 1.0))[0];
            assert!(r1.abs() < 1e-12 * scale && r2.abs() < 1e-12 * scale);
        }
    }
}
