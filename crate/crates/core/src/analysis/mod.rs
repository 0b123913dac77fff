//! Box families, box distance, holes left by a walk, and the experiments
//! built from them.

mod avoidance;
mod experiment;
mod family;
mod holes;
mod svg;

pub use avoidance::{avoidance_probability, link_factor, theta_walks, AvoidanceReport};
pub use experiment::{
    experiment_disk, mean_geodesic_distance, rows_to_csv, space_filling_experiment, SpaceFilling, SpaceFillingRow,
    CSV_HEADER,
};
pub use family::{bdist, box_family, BoxFamily};
pub use holes::{holes, holes_in, HoleReport};
pub use svg::{line_plot, Series};
