//! Exact counters. Every search here is exponential, so each entry point takes
//! a [`Budget`] and fails with [`crate::Error::ResourceLimit`] instead of
//! running away.

mod animals;
mod boxes;
mod budget;
mod partitions;
pub(crate) mod paths;
mod polygons;
mod saw;
mod weighted;

pub use animals::{count_animals, lambda_estimate};
pub use boxes::{BoxSpec, FamilyEdges};
pub use budget::Budget;
pub use partitions::{count_partitions_distinct, partitions_distinct_table};
pub use polygons::{
    count_domain_walks, count_pm, count_sf, enumerate_domain_walks, enumerate_pm, enumerate_sf, for_each_pm,
    for_each_sf, partition_function, zf, zm,
};
pub use saw::{
    bridges, count_bridges, count_rectangle_walks, count_saws, count_squared_walks, count_strict_bridges, mu_bounds,
    rectangle_walks, saws, squared_walks, MuBounds, SquaredCounts,
};
pub use weighted::{ln_count, WeightedCount};
