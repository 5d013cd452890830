//! Constructions and structural certificates for uniformly 3-connected
//! graphs: graphs in which every vertex pair is joined by exactly three
//! internally disjoint paths.
//!
//! The crate builds such graphs from K4 by bridge, spoke and edge-join
//! operations ([`constructions`]), counts and enumerates the extremal ones
//! ([`extremal`]), and certifies their crossing number ([`planar`]) and
//! treewidth ([`treewidth`]). Everything works on small dense graphs
//! ([`graph::Graph`], at most 64 vertices).

pub mod canon;
pub mod connectivity;
pub mod constructions;
pub mod error;
pub mod extremal;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod planar;
pub mod report;
pub mod treewidth;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexId};
pub use graph6::Graph6;
