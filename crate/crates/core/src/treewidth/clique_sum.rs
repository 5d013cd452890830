use crate::error::{Error, Result};
use crate::graph::{bit, Graph, VertexId, VertexMap, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSum {
    /// Vertices of `G1` keep their numbers; the rest of `G2` follows.
    pub graph: Graph,
    /// Where each vertex of `G2` ended up.
    pub right_map: VertexMap,
}

/// Disjoint union of `G1` and `G2` with `s[i]` and `t[i]` identified.
/// No edges are removed.
pub fn clique_sum(g1: &Graph, s: &[VertexId], g2: &Graph, t: &[VertexId]) -> Result<CliqueSum> {
    if s.len() != t.len() {
        return Err(Error::InvalidArgument(format!(
            "clique sizes differ: {} and {}",
            s.len(),
            t.len()
        )));
    }
    for (g, c, name) in [(g1, s, "first"), (g2, t, "second")] {
        for &v in c {
            g.check_vertex(v)?;
        }
        let mut seen = 0u64;
        for &v in c {
            if seen & bit(v) != 0 {
                return Err(Error::InvalidArgument(format!("{name} clique repeats vertex {v}")));
            }
            seen |= bit(v);
        }
        if !g.is_clique(c) {
            return Err(Error::precondition(format!("{name} vertex set {c:?} is not a clique")));
        }
    }
    let n = g1.n() + g2.n() - t.len();
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let mut map = vec![None; g2.n()];
    for (i, &v) in t.iter().enumerate() {
        map[v] = Some(s[i]);
    }
    for (next, slot) in (g1.n()..).zip(map.iter_mut().filter(|m| m.is_none())) {
        *slot = Some(next);
    }
    let mut adj = g1.adjacency_masks().to_vec();
    adj.resize(n, 0);
    for e in g2.edges() {
        let (a, b) = (map[e.u()].unwrap(), map[e.v()].unwrap());
        adj[a] |= bit(b);
        adj[b] |= bit(a);
    }
    Ok(CliqueSum {
        graph: Graph::from_adjacency(adj),
        right_map: VertexMap::from_vec(map),
    })
}
