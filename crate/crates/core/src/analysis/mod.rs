//! Dense sampling of limit functions, error norms and convergence studies.

mod convergence;
mod sampling;

pub use convergence::{
    convergence_on, convergence_study, fitted_order, make_test_mesh, make_test_mesh_sized, order, test_function,
    ConvergenceReport, LevelError, TEST_LAYERS,
};
pub use sampling::{dense_samples, errors, relative_errors, Hierarchy, SampleSet};
