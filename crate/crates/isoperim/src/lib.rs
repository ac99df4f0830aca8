//! Planar shape functionals around the isoperimetric deficit and the
//! barycentric asymmetry: evaluation, explicit competitor families,
//! first-order optimality conditions, boundary reconstruction by ODE
//! shooting, and constrained shape optimization.

pub mod constructions;
pub mod error;
pub mod functionals;
pub mod geometry;
pub mod optimality;
pub mod optimizer;
pub mod svg;

pub use error::{Error, Result};
