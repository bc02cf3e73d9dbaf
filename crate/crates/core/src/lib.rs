pub mod body;
pub mod error;
pub mod geometry;
pub mod inequalities;
pub mod measure;
pub mod mixed;
pub mod oracles;
pub mod solver;

pub use body::{co_sum_all, support_value, wulff_shape, CFullBody, Constraint};
pub use error::{Error, Result};
pub use inequalities::{bm_check, minkowski_first_check, InequalityVerdict, Tolerances};
pub use measure::{Atom, DiscreteMeasure};
pub use mixed::{mixed_area_measure, mixed_volume, mixed_volume_by_integral};
pub use solver::{
    exhaustion_experiment, solve_cone_volume, solve_surface, volume_functional, volume_gradient,
    SolverConfig, SolverReport,
};
