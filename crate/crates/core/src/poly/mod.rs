//! Exact polynomial arithmetic over the rationals: scalars, dense univariate
//! and sparse multivariate polynomials, resultants, GCD/content, square
//! roots and real-root isolation.

pub mod gcd;
pub(crate) mod modular;
pub(crate) mod mono;
pub mod mpoly;
pub mod rat;
pub mod resultant;
pub mod roots;
pub mod unipoly;

pub use gcd::{content, is_squarefree, poly_sqrt, squarefree_decomposition, uni_gcd};
pub use mpoly::{exact_div, mpoly_mul, MPoly};
pub use rat::{rat_from_f64, rat_to_f64, Rat};
pub use resultant::{
    bareiss_det, resultant, resultant_interpolated, resultant_multimodular, resultant_quotient, sylvester_matrix,
    sylvester_resultant, ResultantMethod,
};
pub use roots::{real_root_values, real_roots, RealRoot};
pub use unipoly::UniPoly;
