//! Cayley rotations, the twisted pair and the cheirality choice.

use collinear4p3v::constraints::{essential, translation_from_rotation};
use collinear4p3v::recover::{cheirality_select, twisted_counterpart, Cayley};

fn main() -> collinear4p3v::Result<()> {
    let c = Cayley { u: 0.3, v: -0.2, w: 0.15 };
    let (y12, y22) = (0.12, 0.25);
    let tw = twisted_counterpart(c, y12, y22)?;
    let (r, rt) = (c.rotation(), tw.rotation());
    let t = translation_from_rotation(&r, y12, y22)?;
    let tt = translation_from_rotation(&rt, y12, y22)?;
    println!("twin of {c:?} is {tw:?}");
    println!("E + E' = {:.2e} (max entry)", (essential(&r, &t) + essential(&rt, &tt)).amax());
    match cheirality_select(&r, &rt, &t) {
        Ok((r, t)) => println!("in front of both cameras: t = {:.4?}, R = {r:.4}", t.as_slice()),
        Err(e) => println!("no branch passes: {e}"),
    }
    Ok(())
}
