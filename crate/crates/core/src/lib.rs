//! Self-avoiding walks on the square lattice.
//!
//! The crate is organised around five layers:
//!
//! * [`lattice`]: points, walks, edge sets, polygons and discretised domains.
//! * [`enumerate`]: exact, parallel counters for walks, bridges, squared
//!   walks, constrained polygons, integer partitions and lattice animals.
//! * [`constructions`]: the surgery maps used to compare these families
//!   (bridge unfolding, rectangle-to-square gluing, four-walk polygons,
//!   family merges, link polygons and splicing).
//! * [`sampler`]: exact and Markov-chain sampling of walks weighted by
//!   `x^|walk|` between two marked sites of a domain.
//! * [`analysis`]: box families, box distance, holes left by a walk and the
//!   space-filling experiments built on top of them.
//!
//! Counts are exact integers; floating point only appears when a count is
//! evaluated as a partition function at some `x`.

pub mod analysis;
pub mod constructions;
pub mod enumerate;
mod error;
pub mod lattice;
pub mod sampler;

pub use error::{Error, Result};

pub use analysis::{BoxFamily, HoleReport};
pub use enumerate::{BoxSpec, Budget, WeightedCount};
pub use lattice::{Dir, Edge, EdgeSet, GridDomain, Point, Polygon, Walk};
pub use sampler::SamplerConfig;
