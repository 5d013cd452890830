//! Standard graph families and the line-graph transform.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg.to_string()))
    }
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    require(n >= 1, "complete graph needs n >= 1")?;
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Parts are `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    require(a >= 1 && b >= 1, "complete bipartite graph needs a, b >= 1")?;
    Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// Cycle `0-1-...-(n-1)-0`.
pub fn cycle(n: usize) -> Result<Graph> {
    require(n >= 3, "cycle needs n >= 3")?;
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph> {
    require(n >= 1, "path needs n >= 1")?;
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Result<Graph> {
    require(leaves >= 1, "star needs at least one leaf")?;
    Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

/// Wheel on `n` vertices: rim cycle on `0..n-1`, hub `n-1`.
pub fn wheel(n: usize) -> Result<Graph> {
    require(n >= 4, "wheel needs n >= 4")?;
    let rim = n - 1;
    let hub = n - 1;
    Graph::new(
        n,
        (0..rim)
            .map(|i| (i, (i + 1) % rim))
            .chain((0..rim).map(|i| (i, hub))),
    )
}

/// The triangular prism (the "envelope" graph): triangles `0,1,2` and
/// `3,4,5` joined by `i - i+3`.
pub fn prism() -> Graph {
    Graph::new(
        6,
        [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap()
}

/// Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
}

/// Line graph of `g` together with the edge behind each of its vertices.
#[derive(Debug, Clone)]
pub struct LineGraph {
    pub graph: Graph,
    /// `edges[i]` is the edge of the source graph represented by vertex `i`;
    /// equal to the source's `edges()` order.
    pub edges: Vec<Edge>,
}

impl LineGraph {
    /// Line-graph vertex of a source edge.
    pub fn vertex_of(&self, e: Edge) -> Option<VertexId> {
        self.edges.binary_search(&e).ok()
    }
}

/// Vertices are the edges of `g`, adjacent iff they share an endpoint.
pub fn line_graph(g: &Graph) -> Result<LineGraph> {
    let edges = g.edges().to_vec();
    let m = edges.len();
    if m > crate::graph::MAX_VERTICES {
        return Err(Error::TooManyVertices(m));
    }
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if edges[i].touches(edges[j]) {
                pairs.push((i, j));
            }
        }
    }
    Ok(LineGraph {
        graph: Graph::new(m, pairs)?,
        edges,
    })
}
