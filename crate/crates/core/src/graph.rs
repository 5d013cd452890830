//! Simple undirected graphs on dense vertex indices.
//!
//! A [`Graph`] keeps its adjacency twice: as one `u64` neighbor mask per
//! vertex (constant-time adjacency tests for the flow and treewidth code) and
//! as a sorted edge list (stable edge order for line graphs and recipes).
//! Values are immutable; every edit returns a new graph and, where vertices
//! move, a [`VertexMap`] from old to new indices.

use std::fmt;

use crate::error::{Error, Result};

/// Index of a vertex, dense in `0..n`.
pub type VertexId = usize;

/// Hard limit imposed by the `u64` neighbor masks.
pub const MAX_VERTICES: usize = 64;

/// An unordered vertex pair stored as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    /// Normalizes the endpoint order. Panics on a loop; use [`Edge::try_new`]
    /// for unchecked input.
    pub fn new(u: VertexId, v: VertexId) -> Edge {
        Edge::try_new(u, v).expect("loop edge")
    }

    pub fn try_new(u: VertexId, v: VertexId) -> Result<Edge> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Edge(u, v)),
            std::cmp::Ordering::Greater => Ok(Edge(v, u)),
            std::cmp::Ordering::Equal => Err(Error::LoopEdge(u)),
        }
    }

    pub fn u(self) -> VertexId {
        self.0
    }

    pub fn v(self) -> VertexId {
        self.1
    }

    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.0, self.1)
    }

    pub fn contains(self, x: VertexId) -> bool {
        self.0 == x || self.1 == x
    }

    /// True if the two edges share an endpoint.
    pub fn touches(self, other: Edge) -> bool {
        other.contains(self.0) || other.contains(self.1)
    }

    /// The endpoint that is not `x`, if `x` is an endpoint.
    pub fn other(self, x: VertexId) -> Option<VertexId> {
        if self.0 == x {
            Some(self.1)
        } else if self.1 == x {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl From<Edge> for (VertexId, VertexId) {
    fn from(e: Edge) -> Self {
        (e.0, e.1)
    }
}

/// Old-to-new vertex renumbering produced by an edit. `None` marks a vertex
/// that no longer exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap(Vec<Option<VertexId>>);

impl VertexMap {
    pub fn identity(n: usize) -> VertexMap {
        VertexMap((0..n).map(Some).collect())
    }

    pub fn from_vec(map: Vec<Option<VertexId>>) -> VertexMap {
        VertexMap(map)
    }

    pub fn get(&self, old: VertexId) -> Option<VertexId> {
        self.0.get(old).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Option<VertexId>] {
        &self.0
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edges: Vec<Edge>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", e.0, e.1)?;
            if self.n > 10 {
                f.write_str(",")?;
            }
        }
        f.write_str("])")
    }
}

#[inline]
pub(crate) fn bit(v: VertexId) -> u64 {
    1u64 << v
}

/// Iterates the set bits of a mask in increasing order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = VertexId> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as VertexId;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Graph::from_adjacency(adj))
    }

    /// Builds a graph from symmetric neighbor masks. The caller guarantees
    /// symmetry and the absence of loops.
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Graph {
        let n = adj.len();
        debug_assert!(n <= MAX_VERTICES);
        let mut edges = Vec::new();
        for u in 0..n {
            debug_assert_eq!(adj[u] & bit(u), 0, "loop at {u}");
            for v in bits(adj[u] >> u >> 1) {
                let v = v + u + 1;
                debug_assert!(adj[v] & bit(u) != 0, "asymmetric {u}-{v}");
                edges.push(Edge(u, v));
            }
        }
        Graph { n, adj, edges }
    }

    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES);
        Graph::from_adjacency(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    /// Edges in lexicographic order of `(min, max)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        v < self.n
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn neighbor_mask(&self, v: VertexId) -> u64 {
        self.adj[v]
    }

    pub fn adjacency_masks(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.vertices().map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.degree(v)).max()
    }

    /// Sorted (ascending) degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// True if the vertex set is a clique.
    pub fn is_clique(&self, vertices: &[VertexId]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && self.has_edge(u, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_mask(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Vertices reachable from `start` inside `allowed` (which must contain
    /// `start`).
    pub(crate) fn component_mask(&self, start: VertexId, allowed: u64) -> u64 {
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut rest = self.vertex_mask();
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.component_mask(rest.trailing_zeros() as usize, rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    /// Removes `v` and shifts higher indices down by one.
    pub fn delete_vertex(&self, v: VertexId) -> Result<(Graph, VertexMap)> {
        self.check_vertex(v)?;
        self.delete_vertices(bit(v))
    }

    /// Removes every vertex in `mask`, renumbering the survivors densely in
    /// their original order.
    pub fn delete_vertices(&self, mask: u64) -> Result<(Graph, VertexMap)> {
        let keep = self.vertex_mask() & !mask;
        Ok(self.induced_subgraph(keep))
    }

    /// Subgraph induced by `keep`, renumbered densely in original order.
    pub fn induced_subgraph(&self, keep: u64) -> (Graph, VertexMap) {
        let keep = keep & self.vertex_mask();
        let mut map = vec![None; self.n];
        for (new, old) in bits(keep).enumerate() {
            map[old] = Some(new);
        }
        let adj = bits(keep)
            .map(|old| {
                bits(self.adj[old] & keep)
                    .map(|w| bit(map[w].unwrap()))
                    .fold(0, |a, b| a | b)
            })
            .collect();
        (Graph::from_adjacency(adj), VertexMap(map))
    }

    pub fn delete_edge(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let mut adj = self.adj.clone();
        adj[u] &= !bit(v);
        adj[v] &= !bit(u);
        Ok(Graph::from_adjacency(adj))
    }

    pub fn add_edge(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::EdgeExists(u, v));
        }
        let mut adj = self.adj.clone();
        adj[u] |= bit(v);
        adj[v] |= bit(u);
        Ok(Graph::from_adjacency(adj))
    }

    /// Appends `count` isolated vertices with indices `n..n+count`.
    pub fn add_vertices(&self, count: usize) -> Result<Graph> {
        let n = self.n + count;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.resize(n, 0);
        Ok(Graph::from_adjacency(adj))
    }

    /// Merges the endpoints of edge `uv` into one vertex. The merged vertex
    /// takes the smaller index; the larger one is removed and higher indices
    /// shift down. Parallel edges collapse, the loop disappears.
    pub fn contract_edge(&self, u: VertexId, v: VertexId) -> Result<(Graph, VertexMap)> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let mut adj = self.adj.clone();
        let merged = (adj[keep] | adj[gone]) & !bit(keep) & !bit(gone);
        for w in bits(adj[gone]) {
            adj[w] &= !bit(gone);
        }
        adj[gone] = 0;
        adj[keep] = merged;
        for w in bits(merged) {
            adj[w] |= bit(keep);
        }
        let g = Graph::from_adjacency(adj);
        let (h, mut map) = g.delete_vertex(gone)?;
        map.0[gone] = map.0[keep];
        Ok((h, map))
    }

    /// Applies a relabeling where `perm[old] = new`.
    pub fn relabel(&self, perm: &[VertexId]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "permutation of length {} for graph on {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen & bit(p) != 0 {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen |= bit(p);
        }
        let mut adj = vec![0u64; self.n];
        for old in 0..self.n {
            adj[perm[old]] = bits(self.adj[old])
                .map(|w| bit(perm[w]))
                .fold(0, |a, b| a | b);
        }
        Ok(Graph::from_adjacency(adj))
    }

    /// Vertices of `self` keep their indices; vertices of `other` are
    /// shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let shift = self.n;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&m| m << shift));
        Ok(Graph::from_adjacency(adj))
    }

    /// True if every edge of `self` is an edge of `other` (same vertex
    /// indices).
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n <= other.n
            && self
                .edges
                .iter()
                .all(|e| other.has_edge(e.0, e.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn make_graph_examples() {
        let g = k4();
        assert_eq!(g.m(), 6);
        assert!(g.vertices().all(|v| g.degree(v) == 3));

        let e = Graph::new(0, []).unwrap();
        assert_eq!((e.n(), e.m()), (0, 0));

        let d = Graph::new(3, [(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(d.edges(), &[Edge::new(0, 1), Edge::new(1, 2)]);
    }

    #[test]
    fn make_graph_errors() {
        assert_eq!(
            Graph::new(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::new(3, [(1, 1)]), Err(Error::LoopEdge(1)));
        assert!(matches!(Graph::new(65, []), Err(Error::TooManyVertices(65))));
    }

    #[test]
    fn edits() {
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let (c, map) = tri.contract_edge(0, 2).unwrap();
        assert_eq!((c.n(), c.m()), (2, 1));
        assert_eq!(map.get(2), Some(0));
        assert_eq!(map.get(1), Some(1));

        let (t, _) = k4().delete_vertex(1).unwrap();
        assert_eq!((t.n(), t.m()), (3, 3));

        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let d = c4.add_edge(0, 2).unwrap();
        assert_eq!(d.m(), 5);
        assert_eq!(d.degree_sequence(), vec![2, 2, 3, 3]);

        assert_eq!(c4.add_edge(0, 1), Err(Error::EdgeExists(0, 1)));
        assert_eq!(c4.delete_edge(0, 2), Err(Error::MissingEdge(0, 2)));
        assert!(c4.delete_vertex(9).is_err());
        assert_eq!(c4.delete_edge(0, 1).unwrap().m(), 3);
    }

    #[test]
    fn relabel_and_union() {
        let p = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let q = p.relabel(&[1, 0, 2]).unwrap();
        assert!(q.has_edge(1, 0) && q.has_edge(0, 2) && !q.has_edge(1, 2));
        assert!(p.relabel(&[0, 0, 1]).is_err());
        let u = p.disjoint_union(&p).unwrap();
        assert_eq!((u.n(), u.m()), (6, 4));
        assert_eq!(u.components().len(), 2);
    }
}
