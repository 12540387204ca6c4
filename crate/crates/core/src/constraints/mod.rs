//! Symbolic constraint system in the Cayley parameters of cameras 2 and 3.

pub mod cayley;
pub mod symmetric;
pub mod system;

pub use cayley::{
    cayley_from_rotation, cayley_from_rotation_exact, cayley_rotation, cayley_rotation_exact, essential,
    euler_from_cayley, rotation_from_euler, s_of, skew, translation_from_rotation, translation_ratios,
    CayleySymbolic,
};
pub use symmetric::{chebyshev_like, kappa, symmetric_reduce};
pub use system::{
    build_f, build_fji, build_fmix, build_q, build_system, cam_vars, det3_condition, exact_points, mixed_chain,
    quadratic_divisor, reduce, substitute_s, substitute_s_mix, CamVars, ExactPoints, MixedChain, ReducedSystem,
    Shape, System, WQuadratic, S,
};
