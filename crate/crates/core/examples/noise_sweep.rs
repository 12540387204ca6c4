//! A small noise sweep; the full protocol is `collinear4p3v bench`.

use collinear4p3v::synth::{run_benchmark, summarize, SceneKind, ScenarioConfig};

fn main() -> collinear4p3v::Result<()> {
    for kind in [SceneKind::Generic, SceneKind::Planar] {
        let cfg = ScenarioConfig { kind, trials: 5, noise_sigma: 1.0, sigma_step: 0.5, seed: 1, ..Default::default() };
        let rows = run_benchmark(&cfg)?;
        for s in summarize(&rows) {
            println!(
                "{:<8} sigma {:.1} px  ok {}/{}  median rotation {:.3e} deg  median translation {:.3e} deg",
                s.config, s.sigma_px, s.ok, s.trials, s.rot_median, s.transl_median
            );
        }
    }
    Ok(())
}
