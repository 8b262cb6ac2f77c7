//! Point-evaluation functionals and the global quasi-interpolant.

mod build;
mod engine;
mod solve;
pub mod tables;
mod weights;

pub use build::{build, build_with, preferred_targets, Builder, Functional, Provenance, QuasiInterpolant, Sample};
pub use engine::{bfs, Engine, LocalProblem};
pub use solve::{select_rows, solve_row, InverseRows, MAX_CONDITION, MAX_RESIDUAL};
pub use weights::{
    cc_weights, loop_weights, mloop_weights, slot_orbits, weights_cc, weights_for, weights_loop, weights_mloop,
    Orbit, WeightProfile,
};

use crate::error::Result;
use crate::mesh::VertexTag;

/// Limit positions of the interpolation slots around interior vertex `v`,
/// in slot order.
pub fn sample_points(engine: &Engine, v: usize) -> Result<Vec<crate::Point3>> {
    Ok(engine.star_points(v)?.into_iter().map(|x| engine.limit[x]).collect())
}

/// The host chosen for a regular vertex near an extraordinary one, or
/// `None` if `v` is not such a vertex or no host exists.
pub fn target_point(engine: &Engine, v: usize) -> Option<usize> {
    match Builder::new(engine).functional_for(v).ok()?.provenance {
        Provenance::TargetPoint(t) if matches!(engine.class.tag(v), VertexTag::RegularAdjacentToEp { .. }) => Some(t),
        _ => None,
    }
}
