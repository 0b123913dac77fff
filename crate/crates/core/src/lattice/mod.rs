//! Lattice primitives: points, walks, edges, polygons and domains.

mod domain;
mod edges;
mod point;
mod walk;

pub use domain::{components, dilate, GridDomain, Mesh, SiteGraph};
pub use edges::{edge_set_to_walk, Edge, EdgeSet, Polygon};
pub use point::{Dir, Point};
pub use walk::Walk;
