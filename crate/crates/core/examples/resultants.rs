//! The polynomial kernel on its own: resultants by three routes, content and
//! exact square roots.

use collinear4p3v::poly::{content, poly_sqrt, resultant, MPoly, ResultantMethod, UniPoly};

fn main() -> collinear4p3v::Result<()> {
    let (x, y, s) = (MPoly::var("x"), MPoly::var("y"), MPoly::var("s"));
    // x^2 + y^2 - s and x y - 1
    let p = &(&x * &x + &y * &y) - &s;
    let q = &(&x * &y) - &MPoly::one();
    for m in [ResultantMethod::Bareiss, ResultantMethod::Interpolation, ResultantMethod::MultiModular] {
        println!("{m:?}: Res_x = {}", resultant(&p, &q, "x", m)?);
    }
    let r = &(&(&s * &s) + &MPoly::one()) * &(&y - &s);
    println!("content of {r} in y: {}", content(&r, "y")?);
    let sq = UniPoly::from_ints("s", &[1, 2, 3, 2, 1]);
    println!("sqrt of {:?} = {:?}", sq.int_coeffs(), poly_sqrt(&sq)?.int_coeffs());
    Ok(())
}
