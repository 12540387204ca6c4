//! Solve one instance and compare with the ground truth.
//!
//! `cargo run --example solve [instance.json]`; without an argument a random
//! noiseless scene is generated.

use collinear4p3v::cli::read_instance;
use collinear4p3v::synth::{generate_scene, rot_error, transl_error, ScenarioConfig};

fn main() -> collinear4p3v::Result<()> {
    let (inst, truth) = match std::env::args().nth(1) {
        Some(path) => (read_instance(path.as_ref())?, None),
        None => {
            let (inst, gt) = generate_scene(&ScenarioConfig::default(), 0)?;
            (inst, Some(gt))
        }
    };
    let sol = collinear4p3v::recover::solve(&inst)?;
    println!("R2 = {:.6}", sol.r2);
    println!("R3 = {:.6}", sol.r3);
    println!("t = {:.6?}  sigma = {}", sol.t.as_slice(), sol.sigma);
    println!("O3 = {:.6?}", sol.o3.as_slice());
    println!("reprojection error {:.3e}, {} real roots", sol.reproj_error, sol.n_real_roots);
    if let Some(gt) = truth {
        println!(
            "rotation error {:.2e} deg / {:.2e} deg, translation error {:.2e} deg",
            rot_error(&sol.r2, &gt.rotations[0]),
            rot_error(&sol.r3, &gt.rotations[1]),
            transl_error(&sol.t, &gt.t)?
        );
    }
    Ok(())
}
