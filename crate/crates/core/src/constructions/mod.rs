//! Bridge, spoke and edge-join operations, and recipes that chain them.

mod ops;
mod random;
mod recipe;

pub use ops::{
    bridge, bridge_pairs, bridge_trusted, degree3_vertices, edge_join, edge_join_sites,
    edge_join_trusted, neighbor_triple, spoke, spoke_sites, spoke_trusted, BridgeLayout,
    Matching, OperationKind,
};
pub use random::random_recipe;
pub use recipe::{
    parse_steps, replay, replay_trusted, AppliedStep, OperationCounts, Recipe, RecipeBuilder,
    Replay, Step,
};
