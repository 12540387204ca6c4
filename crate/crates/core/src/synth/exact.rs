//! Noiseless scenes with rational image data that are already in
//! normalised position, so that every constraint can be checked for exact
//! vanishing at the true parameters.
//!
//! The scene is built backwards from the cameras. With a shared `s` the
//! optical axes through the first point can meet one common baseline; the
//! second point needs the `x = 0` planes of the three cameras to share a
//! line, which fixes `u2` and `w2` up to a rational tangent construction.

use nalgebra::{Matrix3, Vector3};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constraints::{cayley_rotation_exact, ExactPoints};
use crate::normalize::{NormalizedProblem, ProblemInstance};
use crate::poly::rat::rat;
use crate::poly::{rat_to_f64, Rat};

type V3 = [Rat; 3];
type M3 = [[Rat; 3]; 3];

#[derive(Clone, Debug)]
pub struct ExactScene {
    /// Normalised image data: `x1 = y1 = x2 = 0` in every view.
    pub points: ExactPoints,
    /// Cayley parameters `(u, v, w)` of cameras 2 and 3.
    pub cayley: [(Rat, Rat, Rat); 2],
    pub rotations: [M3; 2],
    /// `tan(phi)`, shared by both cameras.
    pub s: Rat,
    pub centers: [V3; 3],
    pub world: [V3; 4],
}

fn col(m: &M3, c: usize) -> V3 {
    [m[0][c].clone(), m[1][c].clone(), m[2][c].clone()]
}

fn dot(a: &V3, b: &V3) -> Rat {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

fn sub(a: &V3, b: &V3) -> V3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn scaled(a: &V3, k: &Rat) -> V3 {
    [&a[0] * k, &a[1] * k, &a[2] * k]
}

fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rat::new(n, d))
}

fn small(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rat {
    rat(rng.random_range(lo..=hi), den)
}

impl ExactScene {
    /// Deterministic in `seed`.
    pub fn generate(seed: u64) -> ExactScene {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1_000_000 {
            if let Some(scene) = Self::attempt(&mut rng) {
                return scene;
            }
        }
        panic!("no exact scene found for seed {seed}");
    }

    fn attempt(rng: &mut ChaCha8Rng) -> Option<ExactScene> {
        let nz = |r: Rat| if r.is_zero() { None } else { Some(r) };
        let one = Rat::one();
        let s = small(rng, -12, 12, 8);
        let u3 = nz(small(rng, -6, 6, 20))?;
        let dv = &one + &(&s * &u3);
        let v3 = nz(&(&s - &u3) / &nz(dv)?)?;
        let w3 = nz(small(rng, -6, 6, 20))?;
        // The x = 0 planes of all three cameras must share a line, which is
        // quadratic in w2. Its discriminant, as a quartic in u2, has a square
        // constant term; the tangent there meets the quartic again at a
        // rational u2.
        let al = &w3 * &(&u3 - &v3);
        let be = &(&v3 * &(&w3 * &w3)) + &u3;
        let (al2, be2) = (&al * &al, &be * &be);
        let four = rat(4, 1);
        let q3 = &four * &(&s * &(&be2 + &al2));
        let q1 = -&q3;
        let q2 = &(&(&four - &(&rat(2, 1) * &(&s * &s))) * &be2) - &(&four * &(&(&(&s * &s) - &one) * &al2));
        let q4 = &(&be2 * &s) * &s;
        let c0 = if rng.random_bool(0.5) { &be * &s } else { -&(&be * &s) };
        let c0 = nz(c0)?;
        let a1 = &q1 / &(&rat(2, 1) * &c0);
        let a2 = &(&q2 - &(&a1 * &a1)) / &(&rat(2, 1) * &c0);
        let u2 = nz(&(&(&rat(2, 1) * &(&a1 * &a2)) - &q3) / &nz(&q4 - &(&a2 * &a2))?)?;
        let v2 = nz(&(&s - &u2) / &nz(&one + &(&s * &u2))?)?;
        let disc = &(&(&(&u2 - &v2) * &(&u2 - &v2)) * &be2) - &(&four * &(&(&u2 * &v2) * &al2));
        let root = rat_sqrt(&disc)?;
        let root = if rng.random_bool(0.5) { root } else { -root };
        let w2 = nz(&(&(&(&u2 - &v2) * &be) + &root) / &nz(&rat(2, 1) * &(&v2 * &al))?)?;
        if [&u2, &w2].iter().any(|x| rat_to_f64(x).abs() > 3.0) {
            return None;
        }
        let r2 = cayley_rotation_exact(&u2, &v2, &w2);
        let r3 = cayley_rotation_exact(&u3, &v3, &w3);
        let (c2, c3) = (col(&r2, 2), col(&r3, 2));
        if c2[0].is_zero() || c3[0].is_zero() {
            return None;
        }
        let a = small(rng, 6, 10, 5);
        let p1 = [Rat::zero(), Rat::zero(), a.clone()];
        let mu2 = small(rng, 3, 6, 4);
        let o2 = sub(&p1, &scaled(&c2, &mu2));
        // O3 = P1 - mu3 c3 parallel to O2.
        let k = &(&a - &(&mu2 * &c2[2])) / &(&mu2 * &c2[0]);
        let coef = &c3[2] + &(&c3[0] * &k);
        if coef.is_zero() {
            return None;
        }
        let mu3 = &a / &coef;
        if !mu3.is_positive() {
            return None;
        }
        let o3 = sub(&p1, &scaled(&c3, &mu3));
        // Second point along the common line of the three x = 0 planes.
        let x2 = col(&r2, 0);
        let m = [Rat::zero(), -&x2[2], x2[1].clone()];
        let x3 = col(&r3, 0);
        debug_assert!(dot(&x3, &m).is_zero());
        let lam = &small(rng, 1, 8, 4) / &nz(m[1].abs().max(m[2].abs()))?;
        let lam = if rng.random_bool(0.5) { lam } else { -lam };
        let p2 = [Rat::zero(), &p1[1] + &(&lam * &m[1]), &p1[2] + &(&lam * &m[2])];
        let mut world = vec![p1, p2];
        for _ in 0..2 {
            let z = small(rng, 10, 20, 10);
            let x = &small(rng, -4, 4, 10) * &z;
            let y = &small(rng, -4, 4, 10) * &z;
            world.push([x, y, z]);
        }
        let world: [V3; 4] = world.try_into().ok()?;
        let zero = [Rat::zero(), Rat::zero(), Rat::zero()];
        let centers = [zero, o2, o3];
        let rots = [None, Some(&r2), Some(&r3)];
        let mut points: Vec<[[Rat; 2]; 4]> = Vec::new();
        for j in 0..3 {
            let mut view = Vec::new();
            for p in &world {
                let d = sub(p, &centers[j]);
                let q = match rots[j] {
                    None => d,
                    Some(r) => [dot(&col(r, 0), &d), dot(&col(r, 1), &d), dot(&col(r, 2), &d)],
                };
                // Positive depth, and every point within a wide field of view.
                if !q[2].is_positive() || rat_to_f64(&(&q[2] / &q[0].abs().max(q[1].abs()).max(rat(1, 1000)))) < 0.5 {
                    return None;
                }
                view.push([&q[0] / &q[2], &q[1] / &q[2]]);
            }
            // Distinct y for the first two points.
            if view[1][1].abs() < rat(1, 50) {
                return None;
            }
            points.push(view.try_into().ok()?);
        }
        let points: ExactPoints = points.try_into().ok()?;
        // Generic: the other points must not lie on the camera-1 axis plane.
        if points[0][2][0].is_zero() || points[0][3][0].is_zero() {
            return None;
        }
        Some(ExactScene {
            points,
            cayley: [(u2, v2, w2), (u3, v3, w3)],
            rotations: [r2, r3],
            s,
            centers,
            world,
        })
    }

    /// Floating-point instance (rounded image data).
    pub fn instance(&self, baseline: f64) -> ProblemInstance {
        let views = self.points.clone().map(|v| v.map(|p| p.map(|c| rat_to_f64(&c))));
        ProblemInstance { views, baseline }
    }

    pub fn normalized(&self, baseline: f64) -> NormalizedProblem {
        let inst = self.instance(baseline);
        NormalizedProblem {
            points: inst.views,
            rho: [Matrix3::identity(); 3],
            angles: [crate::normalize::Angles { psi: 0.0, theta: 0.0, phi: 0.0 }; 3],
            baseline,
        }
    }

    pub fn rotation_f64(&self, j: usize) -> Matrix3<f64> {
        let r = &self.rotations[j - 2];
        Matrix3::from_fn(|a, b| rat_to_f64(&r[a][b]))
    }

    pub fn center_f64(&self, j: usize) -> Vector3<f64> {
        let c = &self.centers[j - 1];
        Vector3::new(rat_to_f64(&c[0]), rat_to_f64(&c[1]), rat_to_f64(&c[2]))
    }

    pub fn cayley_f64(&self, j: usize) -> (f64, f64, f64) {
        let (u, v, w) = &self.cayley[j - 2];
        (rat_to_f64(u), rat_to_f64(v), rat_to_f64(w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenes_are_normalised_and_collinear() {
        for seed in 0..20 {
            let sc = ExactScene::generate(seed);
            for v in &sc.points {
                assert!(v[0][0].is_zero() && v[0][1].is_zero() && v[1][0].is_zero());
            }
            let (o2, o3) = (&sc.centers[1], &sc.centers[2]);
            let cross = [
                &(&o2[1] * &o3[2]) - &(&o2[2] * &o3[1]),
                &(&o2[2] * &o3[0]) - &(&o2[0] * &o3[2]),
                &(&o2[0] * &o3[1]) - &(&o2[1] * &o3[0]),
            ];
            assert!(cross.iter().all(|c| c.is_zero()));
            for j in 0..2 {
                let (u, v, _) = &sc.cayley[j];
                assert_eq!(&(u + v) / &(&Rat::one() - &(u * v)), sc.s);
            }
        }
    }

    #[test]
    fn second_point_lies_on_all_three_axis_planes() {
        for seed in 0..10 {
            let sc = ExactScene::generate(seed);
            let p2 = &sc.world[1];
            assert!(p2[0].is_zero());
            assert_ne!(p2, &sc.world[0]);
            for j in 0..2 {
                let x = col(&sc.rotations[j], 0);
                assert!(dot(&x, &sub(p2, &sc.centers[j + 1])).is_zero());
            }
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(ExactScene::generate(4).points, ExactScene::generate(4).points);
    }
}
