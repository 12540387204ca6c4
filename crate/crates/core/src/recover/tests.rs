use nalgebra::{Matrix3, Rotation3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::constraints::{build_system, essential, System};
use crate::poly::rat_to_f64;
use crate::synth::ExactScene;

fn setup(seed: u64) -> (ExactScene, System, NormalizedProblem) {
    let sc = ExactScene::generate(seed);
    let n = sc.normalized(1.0);
    let sys = build_system(&exact_points(&n)).unwrap();
    (sc, sys, n)
}

fn ut_of(u: f64) -> f64 {
    u - 1.0 / u
}

fn rot_close(a: &Matrix3<f64>, b: &Matrix3<f64>, tol: f64) -> bool {
    (a - b).amax() < tol
}

#[test]
fn tilde_inversion() {
    assert_eq!(u_from_tilde(0.0), -1.0);
    assert_eq!(u_from_tilde(1.5), -0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let ut: f64 = rng.random_range(-50.0..50.0);
        let u = u_from_tilde(ut);
        assert!(u.abs() <= 1.0);
        assert!((u - 1.0 / u - ut).abs() <= 1e-12 * (1.0 + ut.abs()));
    }
}

#[test]
fn back_substitution_recovers_ground_truth() {
    for seed in 0..5 {
        let (sc, sys, _) = setup(seed);
        let s0 = rat_to_f64(&sc.s);
        let (a, b, m) = back_substitute(s0, &sys.reduced).unwrap();
        let (u2, u3) = (sc.cayley_f64(2).0, sc.cayley_f64(3).0);
        assert!((a - ut_of(u2)).abs() < 1e-8 * (1.0 + a.abs()), "seed {seed}");
        assert!((b - ut_of(u3)).abs() < 1e-8 * (1.0 + b.abs()), "seed {seed}");
        assert!(m < 1e-9, "seed {seed}: {m:.3e}");
        // Stable under a tiny shift of s0.
        let (a2, b2, _) = back_substitute(s0 + 1e-12, &sys.reduced).unwrap();
        assert!((a - a2).abs() < 1e-6 && (b - b2).abs() < 1e-6);
    }
}

#[test]
fn cayley_triple_reproduces_a_ground_truth_rotation() {
    for seed in 0..5 {
        let (sc, sys, n) = setup(seed);
        let s0 = rat_to_f64(&sc.s);
        for j in [2, 3] {
            let (u, _, _) = sc.cayley_f64(j);
            let c = cayley_from_tilde(ut_of(u), s0, &sys.f[j - 2], &cam_vars(j)).unwrap();
            assert!(c.u.abs() <= 1.0);
            let tw = twisted_counterpart(c, n.y(0, 1), n.y(j - 1, 1)).unwrap();
            let truth = sc.rotation_f64(j);
            // The |u| <= 1 branch is either the true rotation or its twin.
            assert!(
                rot_close(&c.rotation(), &truth, 1e-8) || rot_close(&tw.rotation(), &truth, 1e-8),
                "seed {seed} camera {j}"
            );
        }
    }
}

fn random_cayley(rng: &mut ChaCha8Rng) -> Cayley {
    Cayley { u: rng.random_range(-2.0..2.0), v: rng.random_range(-2.0..2.0), w: rng.random_range(-2.0..2.0) }
}

#[test]
fn twisted_pair_negates_the_essential_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    while checked < 1000 {
        let c = random_cayley(&mut rng);
        let (y12, yj2) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let Ok(tw) = twisted_counterpart(c, y12, yj2) else { continue };
        let (r, rt) = (c.rotation(), tw.rotation());
        let (Ok(t), Ok(tt)) = (translation_from_rotation(&r, y12, yj2), translation_from_rotation(&rt, y12, yj2))
        else {
            continue;
        };
        let (e, et) = (essential(&r, &t), essential(&rt, &tt));
        if e.amax() > 1e6 {
            continue;
        }
        assert!((e + et).amax() <= 1e-9 * e.amax(), "{c:?}");
        // Involution and invariance of s.
        let back = twisted_counterpart(tw, y12, yj2).unwrap();
        let rel = |a: f64, b: f64| (a - b).abs() / (1.0 + a.abs());
        assert!(rel(back.u, c.u) < 1e-12 && rel(back.v, c.v) < 1e-12 && rel(back.w, c.w) < 1e-9);
        let s = |c: Cayley| (c.u + c.v) / (1.0 - c.u * c.v);
        assert!(rel(s(tw), s(c)) < 1e-12 * (1.0 + s(c).abs()));
        checked += 1;
    }
}

#[test]
fn degenerate_twist() {
    let c = Cayley { u: 0.0, v: 0.5, w: 0.3 };
    assert!(matches!(twisted_counterpart(c, 0.2, 0.3), Err(Error::DegenerateTwist)));
}

#[test]
fn cheirality_selects_ground_truth() {
    for seed in 0..30 {
        let (sc, _, n) = setup(seed);
        let truth = sc.rotation_f64(2);
        let (u, v, w) = sc.cayley_f64(2);
        let c = Cayley { u, v, w };
        let tw = twisted_counterpart(c, n.y(0, 1), n.y(1, 1)).unwrap();
        let t = translation_from_rotation(&truth, n.y(0, 1), n.y(1, 1)).unwrap();
        let (rp, rm) = (c.rotation(), tw.rotation());
        let (r, tsel) = cheirality_select(&rp, &rm, &t).unwrap();
        assert!(rot_close(&r, &truth, 1e-10), "seed {seed}");
        assert!(tsel.normalize().dot(&sc.center_f64(2).normalize()) > 1.0 - 1e-10);
        // Exactly one of the four branches passes.
        let count = [(rp, t), (rp, -t), (rm, t), (rm, -t)]
            .iter()
            .filter(|(r, t)| first_point_in_front(r, t))
            .count();
        assert_eq!(count, 1, "seed {seed}");
    }
}

#[test]
fn first_point_behind_the_first_camera() {
    // Camera 2 at (1, 0, 0) looking at (0, 0, -1).
    let r = Rotation3::face_towards(&Vector3::new(-1.0, 0.0, -1.0), &Vector3::y()).into_inner();
    let t = Vector3::new(1.0, 0.0, 0.0);
    assert!(matches!(cheirality_select(&r, &r, &t), Err(Error::NoCheiralConfig)));
}

fn truth_structure(sc: &ExactScene) -> Structure {
    let v = |p: &[crate::poly::Rat; 3]| Vector3::new(rat_to_f64(&p[0]), rat_to_f64(&p[1]), rat_to_f64(&p[2]));
    Structure { o2: v(&sc.centers[1]), o3: v(&sc.centers[2]), points: sc.world.each_ref().map(v) }
}

#[test]
fn structure_matches_ground_truth_and_scales() {
    for seed in 0..10 {
        let sc = ExactScene::generate(seed);
        let truth = truth_structure(&sc);
        let d = truth.o2.norm();
        let n = sc.normalized(d);
        let (r2, r3) = (sc.rotation_f64(2), sc.rotation_f64(3));
        let sigma = if truth.o3.dot(&truth.o2) > 0.0 { 1 } else { -1 };
        let st = recover_structure(&r2, &r3, &truth.o2, sigma, &n).unwrap();
        assert!((st.o2 - truth.o2).amax() < 1e-9);
        assert!((st.o3 - truth.o3).amax() < 1e-8, "seed {seed}");
        for i in 0..4 {
            assert!((st.points[i] - truth.points[i]).amax() < 1e-8, "seed {seed} point {i}");
        }
        assert!(st.o2.cross(&st.o3).norm() <= 1e-10 * st.o2.norm() * st.o3.norm());
        let n2 = sc.normalized(2.0 * d);
        let st2 = recover_structure(&r2, &r3, &truth.o2, sigma, &n2).unwrap();
        assert_eq!(st2.o2, st.o2 * 2.0);
        for i in 0..4 {
            assert!((st2.points[i] - st.points[i] * 2.0).amax() <= 1e-15 * st.points[i].amax());
        }
        // Closed-form depths along the first camera's rays.
        let t = &truth.o2;
        for i in 0..4 {
            let rot = r2 * Vector3::new(n.x(1, i), n.y(1, i), 1.0);
            let xp = rot.x / rot.z;
            let z = (t.x - t.z * xp) / (n.x(0, i) - xp);
            if (n.x(0, i) - xp).abs() > 1e-3 {
                assert!((z - st.points[i].z).abs() < 1e-8 * z.abs(), "seed {seed} point {i}");
            }
        }
        assert!(matches!(recover_structure(&r2, &r3, &truth.o2, -sigma, &n), Err(Error::NoCheiralConfig)));
    }
}

#[test]
fn parallel_rays_are_rejected() {
    let sc = ExactScene::generate(0);
    let n = sc.normalized(1.0);
    let r = Matrix3::identity();
    // With no rotation and a baseline along the optical axis every ray of
    // camera 2 is parallel to the one of camera 1.
    let mut m = n.clone();
    for j in 0..3 {
        m.points[j] = n.points[0];
    }
    let err = recover_structure(&r, &r, &Vector3::new(0.0, 0.0, 1.0), 1, &m).unwrap_err();
    assert!(matches!(err, Error::ParallelRays));
}

fn truth_solution(sc: &ExactScene, d: f64) -> PoseSolution {
    let st = truth_structure(sc);
    let k = d / st.o2.norm();
    PoseSolution {
        r2: sc.rotation_f64(2),
        r3: sc.rotation_f64(3),
        t: st.o2 * k,
        sigma: 1,
        o2: st.o2 * k,
        o3: st.o3 * k,
        points: st.points.map(|p| p * k),
        reproj_error: 0.0,
        s0: rat_to_f64(&sc.s),
        n_real_roots: 0,
        runner_up_gap: None,
    }
}

#[test]
fn reprojection_error_definition() {
    let sc = ExactScene::generate(3);
    let sol = truth_solution(&sc, 1.0);
    let inst = sc.instance(1.0);
    let e0 = reprojection_error(&sol, &inst).unwrap();
    assert!(e0 <= 1e-16);
    let delta = 1e-3;
    let mut moved = inst.clone();
    moved.views[2][3][0] += delta;
    let e1 = reprojection_error(&sol, &moved).unwrap();
    assert!(((e1 - e0) - delta * delta).abs() <= 1e-9 * delta * delta);
    let mut behind = sol.clone();
    behind.points[2] = -behind.points[2];
    assert!(matches!(reprojection_error(&behind, &inst), Err(Error::BehindCamera)));
}

fn rot_err_deg(a: &Matrix3<f64>, b: &Matrix3<f64>) -> f64 {
    crate::synth::rot_error(a, b)
}

#[test]
fn solve_noiseless_exact_scenes() {
    let mut separation = f64::INFINITY;
    for seed in 0..6 {
        let sc = ExactScene::generate(seed);
        let inst = sc.instance(1.0);
        let rep = solve_detailed(&inst).unwrap();
        let sol = &rep.solution;
        let truth = truth_solution(&sc, 1.0);
        assert!(rot_err_deg(&sol.r2, &truth.r2) < 1e-6, "seed {seed}");
        assert!(rot_err_deg(&sol.r3, &truth.r3) < 1e-6, "seed {seed}");
        assert!(crate::synth::transl_error(&sol.t, &truth.t).unwrap() < 1e-6);
        assert!(sol.reproj_error <= 1e-16);
        assert!((sol.o2.norm() - 1.0).abs() < 1e-9);
        assert!(sol.o2.cross(&sol.o3).norm() < 1e-9);
        assert_eq!(sol.n_real_roots, rep.roots.len());
        // Epipolar constraints of the returned pose.
        for (r, o, j) in [(&sol.r2, &sol.o2, 1), (&sol.r3, &sol.o3, 2)] {
            let e = essential(r, o);
            for i in 0..4 {
                let res = (inst.point(0, i).transpose() * e * inst.point(j, i))[0];
                assert!(res.abs() <= 1e-8, "seed {seed}");
            }
        }
        for (s0, c) in &rep.candidates {
            if let Ok(c) = c {
                if (s0 - sol.s0).abs() > 1e-6 * (1.0 + s0.abs()) {
                    separation = separation.min(c.reproj_error);
                }
            }
        }
    }
    eprintln!("smallest reprojection error of a wrong root: {separation:.3e}");
    assert!(separation >= 1e-4);
}

#[test]
fn denormalisation_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..3 {
        let sc = ExactScene::generate(seed);
        let inst = sc.instance(1.0);
        let base = solve(&inst).unwrap();
        // Rotate each camera by a small random rotation.
        let q: [Matrix3<f64>; 3] = std::array::from_fn(|_| {
            let axis = Vector3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            Rotation3::new(axis.normalize() * rng.random_range(0.05..0.2)).into_inner()
        });
        let mut moved = inst.clone();
        for j in 0..3 {
            for i in 0..4 {
                let p = q[j] * inst.point(j, i);
                moved.views[j][i] = [p.x / p.z, p.y / p.z];
            }
        }
        let sol = solve(&moved).unwrap();
        let expect_r2 = q[0] * base.r2 * q[1].transpose();
        let expect_r3 = q[0] * base.r3 * q[2].transpose();
        assert!(rot_close(&sol.r2, &expect_r2, 1e-8), "seed {seed}");
        assert!(rot_close(&sol.r3, &expect_r3, 1e-8), "seed {seed}");
        assert!((sol.o2 - q[0] * base.o2).amax() < 1e-8);
        for i in 0..4 {
            assert!((sol.points[i] - q[0] * base.points[i]).amax() < 1e-8);
        }
    }
}

#[test]
fn non_collinear_input_is_reported() {
    let sc = ExactScene::generate(9);
    let mut inst = sc.instance(1.0);
    inst.views[2][3][0] += 0.05;
    inst.views[2][2][1] -= 0.04;
    match solve(&inst) {
        Ok(sol) => eprintln!("non-collinear input: reprojection error {:.3e}", sol.reproj_error),
        Err(e) => eprintln!("non-collinear input: {e}"),
    }
}
