//! Random scenes: the float generator used by the benchmark and the exact
//! rational construction used by the algebraic tests.

use collinear4p3v::synth::{generate_scene, ExactScene, SceneKind, ScenarioConfig};

fn main() -> collinear4p3v::Result<()> {
    let cfg = ScenarioConfig { kind: SceneKind::Planar, seed: 9, ..Default::default() };
    let (inst, gt) = generate_scene(&cfg, 0)?;
    println!("{}", serde_json::to_string_pretty(&inst)?);
    println!("O2 = {:.4?}, O3 = {:.4} O2", gt.t.as_slice(), gt.lambda);

    let exact = ExactScene::generate(4);
    println!("exact scene: s* = {}", exact.s);
    for j in 2..=3 {
        let (u, v, w) = exact.cayley_f64(j);
        println!("camera {j}: Cayley ({u:.6}, {v:.6}, {w:.6})");
    }
    Ok(())
}
