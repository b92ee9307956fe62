//! Exact arithmetic for integral hyperbolic lattices: local invariants,
//! Vinberg's algorithm, Coxeter diagram analysis and the classification of
//! (1,2)-reflective anisotropic lattices of rank 4.

pub mod arith;
pub mod coxeter;
pub mod edge_bounds;
mod error;
pub mod hyperbolic;
pub mod lattice;
pub mod linalg;
pub mod local;
pub mod pipeline;
pub mod report;
mod shell;
pub mod surd;
pub mod vinberg;

pub use error::{Error, Result};
