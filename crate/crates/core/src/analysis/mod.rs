//! Statistics computed on observed graphs and null samples.

mod assortativity;
mod census;
mod enumerate;
mod profile;
mod triangles;

pub use assortativity::{assortativity, AttributeTable};
pub use census::{four_node_census, Pattern, SubgraphCensus};
pub use enumerate::{
    enumerate_core_space, enumerate_labeled_core_space, realized_core_sequences,
    MAX_ENUMERATION_NODES,
};
pub use profile::{mean, sample_std, srp, z_score, SrpProfile, DEFAULT_SRP_EPSILON};
pub use triangles::{count_triangles, edge_triangles, triangle_degrees};
