use std::fmt;

use serde::{Deserialize, Serialize};

use crate::connectivity::{check_uniformly_k_connected, is_k_connected, is_regular};
use crate::error::{Error, Result};
use crate::graph::{bit, Edge, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OperationKind {
    Bridge,
    PrimarySpoke,
    SecondarySpoke,
    EdgeJoin,
}

impl fmt::Display for OperationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperationKind::Bridge => "bridge",
            OperationKind::PrimarySpoke => "primary spoke",
            OperationKind::SecondarySpoke => "secondary spoke",
            OperationKind::EdgeJoin => "edge join",
        })
    }
}

/// Pairs the neighbors of the two bridged vertices: with both neighborhoods
/// sorted ascending, the `i`-th neighbor of `v1` is joined to neighbor
/// `m[i]` of `v2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching([u8; 3]);

impl Matching {
    pub const IDENTITY: Matching = Matching([0, 1, 2]);

    pub fn new(m: [usize; 3]) -> Result<Matching> {
        let mut seen = [false; 3];
        for &i in &m {
            if i > 2 || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!(
                    "matching {m:?} is not a permutation of 0, 1, 2"
                )));
            }
        }
        Ok(Matching([m[0] as u8, m[1] as u8, m[2] as u8]))
    }

    /// All six matchings in lexicographic order.
    pub fn all() -> [Matching; 6] {
        [
            Matching([0, 1, 2]),
            Matching([0, 2, 1]),
            Matching([1, 0, 2]),
            Matching([1, 2, 0]),
            Matching([2, 0, 1]),
            Matching([2, 1, 0]),
        ]
    }

    pub fn target(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn as_array(self) -> [usize; 3] {
        [self.0[0] as usize, self.0[1] as usize, self.0[2] as usize]
    }

    pub fn inverse(self) -> Matching {
        let mut inv = [0u8; 3];
        for i in 0..3 {
            inv[self.0[i] as usize] = i as u8;
        }
        Matching(inv)
    }
}

/// Vertex numbering of a bridge result: the vertices of `G1 - v1` in their
/// original order, followed by those of `G2 - v2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BridgeLayout {
    pub n1: usize,
    pub v1: VertexId,
    pub n2: usize,
    pub v2: VertexId,
}

impl BridgeLayout {
    pub fn left(&self, old: VertexId) -> Option<VertexId> {
        match old {
            _ if old == self.v1 || old >= self.n1 => None,
            _ if old < self.v1 => Some(old),
            _ => Some(old - 1),
        }
    }

    pub fn right(&self, old: VertexId) -> Option<VertexId> {
        let shift = self.n1 - 1;
        match old {
            _ if old == self.v2 || old >= self.n2 => None,
            _ if old < self.v2 => Some(old + shift),
            _ => Some(old - 1 + shift),
        }
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2 - 2
    }
}

/// The three neighbors of a degree-3 vertex, ascending.
pub fn neighbor_triple(g: &Graph, v: VertexId) -> Result<[VertexId; 3]> {
    g.check_vertex(v)?;
    let ns: Vec<VertexId> = g.neighbors(v).collect();
    <[VertexId; 3]>::try_from(ns).map_err(|ns| {
        Error::precondition(format!("vertex {v} has degree {}, expected 3", ns.len()))
    })
}

/// The neighbor pairs `(x_i, y_{m(i)})` joined by a bridge, in the input
/// graphs' own numbering.
pub fn bridge_pairs(
    g1: &Graph,
    v1: VertexId,
    g2: &Graph,
    v2: VertexId,
    matching: Matching,
) -> Result<[(VertexId, VertexId); 3]> {
    let a = neighbor_triple(g1, v1)?;
    let b = neighbor_triple(g2, v2)?;
    Ok([0, 1, 2].map(|i| (a[i], b[matching.target(i)])))
}

fn require_uniform3(g: &Graph, what: &str) -> Result<()> {
    check_uniformly_k_connected(g, 3)
        .map_err(|e| Error::precondition(format!("{what} is not uniformly 3-connected: {e:?}")))
}

/// `(G1 - v1) ∪ (G2 - v2)` plus the three matching edges. Both inputs must be
/// uniformly 3-connected and `v1`, `v2` must have degree 3.
pub fn bridge(
    g1: &Graph,
    v1: VertexId,
    g2: &Graph,
    v2: VertexId,
    matching: Matching,
) -> Result<Graph> {
    let out = bridge_trusted(g1, v1, g2, v2, matching)?;
    require_uniform3(g1, "first bridge input")?;
    require_uniform3(g2, "second bridge input")?;
    Ok(out)
}

/// [`bridge`] without the uniform-connectivity check on the inputs; degrees
/// are still checked.
pub fn bridge_trusted(
    g1: &Graph,
    v1: VertexId,
    g2: &Graph,
    v2: VertexId,
    matching: Matching,
) -> Result<Graph> {
    let pairs = bridge_pairs(g1, v1, g2, v2, matching)?;
    let (left, _) = g1.delete_vertex(v1)?;
    let (right, _) = g2.delete_vertex(v2)?;
    let layout = BridgeLayout {
        n1: g1.n(),
        v1,
        n2: g2.n(),
        v2,
    };
    let mut adj = left.disjoint_union(&right)?.adjacency_masks().to_vec();
    for (a, b) in pairs {
        let (a, b) = (layout.left(a).unwrap(), layout.right(b).unwrap());
        adj[a] |= bit(b);
        adj[b] |= bit(a);
    }
    Ok(Graph::from_adjacency(adj))
}

/// Subdivides `vw` with a new vertex `y = n` and joins `y` to `x`.
/// Every vertex other than `x` must have degree 3 and `G` must be uniformly
/// 3-connected. The result is classified by the degree of `x` beforehand.
pub fn spoke(g: &Graph, v: VertexId, w: VertexId, x: VertexId) -> Result<(Graph, OperationKind)> {
    let out = spoke_trusted(g, v, w, x)?;
    require_uniform3(g, "spoke input")?;
    Ok(out)
}

/// [`spoke`] without the uniform-connectivity check.
pub fn spoke_trusted(
    g: &Graph,
    v: VertexId,
    w: VertexId,
    x: VertexId,
) -> Result<(Graph, OperationKind)> {
    for z in [v, w, x] {
        g.check_vertex(z)?;
    }
    if x == v || x == w || v == w {
        return Err(Error::precondition(format!(
            "spoke vertices {v}, {w}, {x} are not distinct"
        )));
    }
    if !g.has_edge(v, w) {
        return Err(Error::MissingEdge(v, w));
    }
    if let Some(z) = g.vertices().find(|&z| z != x && g.degree(z) != 3) {
        return Err(Error::precondition(format!(
            "spoke needs degree 3 away from x = {x}, but vertex {z} has degree {}",
            g.degree(z)
        )));
    }
    let kind = if g.degree(x) == 3 {
        OperationKind::PrimarySpoke
    } else {
        OperationKind::SecondarySpoke
    };
    let y = g.n();
    let mut adj = g.add_vertices(1)?.adjacency_masks().to_vec();
    adj[v] &= !bit(w);
    adj[w] &= !bit(v);
    for z in [v, w, x] {
        adj[z] |= bit(y);
        adj[y] |= bit(z);
    }
    Ok((Graph::from_adjacency(adj), kind))
}

/// Subdivides `st` by `x = n` and `vw` by `y = n + 1`, then adds `xy`.
/// Requires a 3-regular 3-connected input and two distinct edges.
pub fn edge_join(g: &Graph, st: Edge, vw: Edge) -> Result<Graph> {
    if !is_regular(g, 3) || !is_k_connected(g, 3) {
        return Err(Error::precondition(
            "edge join needs a 3-regular 3-connected graph",
        ));
    }
    edge_join_trusted(g, st, vw)
}

/// [`edge_join`] without the regularity and connectivity checks.
pub fn edge_join_trusted(g: &Graph, st: Edge, vw: Edge) -> Result<Graph> {
    for e in [st, vw] {
        if !g.has_edge(e.u(), e.v()) {
            return Err(Error::MissingEdge(e.u(), e.v()));
        }
    }
    if st == vw {
        return Err(Error::precondition(format!("edge join of {st} with itself")));
    }
    let (x, y) = (g.n(), g.n() + 1);
    let mut adj = g.add_vertices(2)?.adjacency_masks().to_vec();
    for (e, mid) in [(st, x), (vw, y)] {
        let (a, b) = e.endpoints();
        adj[a] &= !bit(b);
        adj[b] &= !bit(a);
        for z in [a, b] {
            adj[z] |= bit(mid);
            adj[mid] |= bit(z);
        }
    }
    adj[x] |= bit(y);
    adj[y] |= bit(x);
    Ok(Graph::from_adjacency(adj))
}

/// Every `(v, w, x)` accepted by [`spoke_trusted`] on `g`, in lexicographic
/// order of `(edge, x)`.
pub fn spoke_sites(g: &Graph) -> Vec<(VertexId, VertexId, VertexId)> {
    let odd: Vec<VertexId> = g.vertices().filter(|&z| g.degree(z) != 3).collect();
    let candidates: Vec<VertexId> = match odd.as_slice() {
        [] => g.vertices().collect(),
        [x] => vec![*x],
        _ => return Vec::new(),
    };
    let mut out = Vec::new();
    for e in g.edges() {
        for &x in &candidates {
            if !e.contains(x) {
                out.push((e.u(), e.v(), x));
            }
        }
    }
    out
}

/// Unordered pairs of distinct edges, as accepted by [`edge_join_trusted`].
pub fn edge_join_sites(g: &Graph) -> Vec<(Edge, Edge)> {
    let es = g.edges();
    let mut out = Vec::new();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            out.push((es[i], es[j]));
        }
    }
    out
}

pub fn degree3_vertices(g: &Graph) -> Vec<VertexId> {
    g.vertices().filter(|&v| g.degree(v) == 3).collect()
}
