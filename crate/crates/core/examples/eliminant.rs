//! The elimination pipeline step by step on an exact rational scene.

use collinear4p3v::constraints::build_system;
use collinear4p3v::eliminate::{eliminate, mirror_agrees};
use collinear4p3v::poly::{real_root_values, rat_to_f64};
use collinear4p3v::synth::ExactScene;

fn main() -> collinear4p3v::Result<()> {
    let scene = ExactScene::generate(1);
    let sys = build_system(&scene.points)?;
    let shape = sys.reduced.shape();
    println!("reduced system: {shape:?}");
    let e = eliminate(&sys.reduced, &scene.points)?;
    println!("S2: degree {}, S3: degree {}", e.s2.degree(), e.s3.degree());
    println!("S: degree {}, largest coefficient {} bits", e.s.degree(), e.s.max_coeff_bits());
    println!("S(s*) = {} at the true s* = {:.12}", e.s.eval(&scene.s), rat_to_f64(&scene.s));
    println!("real roots: {:?}", real_root_values(&e.s, 1e-15));
    println!("same eliminant with cameras 2 and 3 exchanged: {}", mirror_agrees(&e.s, &scene.points)?);
    Ok(())
}
