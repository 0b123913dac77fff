//! The surgery maps that relate walk and polygon families: bridge
//! unfolding, rectangle pairs to squared walks, four squared walks to a
//! polygon, merging family polygons, link polygons and splicing.

mod bridge;
mod family;
mod link;
mod square;

pub use bridge::{decompose_bridge, fold_bridge, in_rectangle_class, is_bridge, unfold_bridge, BridgeDecomposition};
pub use family::{facing_edges, merge_family_polygons, removable_box};
pub use link::{
    avoids_family, choose_cardinal_edge, eligible_cardinal_edges, extended_link_bound, find_link_polygon,
    find_link_polygon_within, link_length_bound, link_overlap,
    recover_splice_preimages, splice, splice_into_family, Preimage, Spliced,
};
pub use square::{four_to_polygon, is_squared, rectangle_pair_to_square};
