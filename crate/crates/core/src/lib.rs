//! Non-iterative solver for the four-point three-view relative pose problem
//! with collinear camera centres.
//!
//! The image data are rotated into a canonical position, the epipolar
//! constraints are turned into three polynomials in three unknowns using a
//! Cayley parameterisation of the rotations, and two resultants eliminate
//! all but one unknown, leaving a univariate polynomial of degree 36. Poses
//! and structure are recovered from its real roots and the candidate with
//! the smallest reprojection error is returned.
//!
//! All elimination runs in exact rational arithmetic; floating point enters
//! only after the roots are isolated.

pub mod cli;
pub mod constraints;
pub mod eliminate;
pub mod error;
pub mod normalize;
pub mod poly;
pub mod recover;
pub mod synth;

pub use error::{Error, Result};
