//! Quasi-interpolation projectors for Catmull-Clark, Loop and modified Loop
//! subdivision surfaces.
//!
//! Each control vertex gets a point-evaluation functional
//! `lambda_i(f) = sum_k w_k f(x_k)` whose samples lie on the limit surface of
//! the once-refined local net. Applying all functionals to a function that
//! already lies in the subdivision space returns its control net exactly.

pub mod analysis;
pub mod error;
pub mod mesh;
pub mod numeric;
pub mod projector;
pub mod schemes;

pub use error::{Error, Result};

pub type Point3 = nalgebra::Vector3<f64>;
