//! Tools for testing Manin's conjecture on the cubic surface
//! x0 (x1^2 + x2^2) = x3^3: toric geometry of its resolution, rational point
//! counts by height, and the local densities entering the leading constant.

pub mod arith;
pub mod counting;
pub mod densities;
pub mod error;
pub mod linalg;
pub mod surface;
pub mod toric;

pub use error::{Error, Result};
