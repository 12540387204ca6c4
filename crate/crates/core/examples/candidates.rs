//! Every real root of the eliminant and the pose it leads to.

use collinear4p3v::recover::solve_detailed;
use collinear4p3v::synth::{add_noise, generate_scene, rot_error, transl_error, trial_rng, ScenarioConfig};

fn main() -> collinear4p3v::Result<()> {
    let cfg = ScenarioConfig::default();
    let (clean, gt) = generate_scene(&cfg, 3)?;
    for sigma in [0.0, 0.001] {
        let inst = add_noise(&clean, sigma, cfg.focal_px(), &mut trial_rng(0, 3, 1));
        let rep = solve_detailed(&inst)?;
        println!("sigma = {sigma} px: {} real roots", rep.roots.len());
        for (s, cand) in &rep.candidates {
            match cand {
                Ok(c) => println!(
                    "  s = {s:>10.6}  eps = {:.2e}  rot {:.2e} deg  transl {:.2e} deg",
                    c.reproj_error,
                    rot_error(&c.r2, &gt.rotations[0]),
                    transl_error(&c.t, &gt.t)?
                ),
                Err(e) => println!("  s = {s:>10.6}  rejected: {e}"),
            }
        }
        println!("  selected s = {:.6}, runner-up gap {:?}", rep.solution.s0, rep.solution.runner_up_gap);
    }
    Ok(())
}
