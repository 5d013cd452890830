use super::exact::treewidth_exact_with_budget;
use super::TreeDecomposition;
use crate::constructions::neighbor_triple;
use crate::error::{Error, Result};
use crate::graph::{bit, Graph, VertexId};

/// An optimal decomposition with a bag holding `v` and two of its neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafeWitness {
    pub vertex: VertexId,
    pub pair: (VertexId, VertexId),
    pub decomposition: TreeDecomposition,
    /// Node whose bag holds `vertex` and both of `pair`.
    pub node: usize,
    pub width: usize,
}

/// Witness that degree-3 vertex `v` is safe, or `None` if it is not.
///
/// `v` is safe when some optimal decomposition has a bag containing `v` and
/// at least two of its neighbors. That holds iff two neighbors `a, b` are
/// adjacent, or `tw(G + ab) = tw(G)` for some non-adjacent pair: an optimal
/// decomposition of `G + ab` covers the triangle `v, a, b` with one bag and
/// is also a decomposition of `G`.
pub fn safe_witness(g: &Graph, v: VertexId, budget: usize) -> Result<Option<SafeWitness>> {
    let [x, y, z] = neighbor_triple(g, v)?;
    let base = treewidth_exact_with_budget(g, budget)?;
    let pairs = [(x, y), (x, z), (y, z)];
    for &(a, b) in &pairs {
        if g.has_edge(a, b) {
            return witness(v, (a, b), base.decomposition, base.width).map(Some);
        }
    }
    for &(a, b) in &pairs {
        let plus = treewidth_exact_with_budget(&g.add_edge(a, b)?, budget)?;
        if plus.width == base.width {
            return witness(v, (a, b), plus.decomposition, plus.width).map(Some);
        }
    }
    Ok(None)
}

fn witness(
    vertex: VertexId,
    pair: (VertexId, VertexId),
    decomposition: TreeDecomposition,
    width: usize,
) -> Result<SafeWitness> {
    let want = bit(vertex) | bit(pair.0) | bit(pair.1);
    let node = decomposition
        .nodes_containing(want)
        .next()
        .ok_or_else(|| Error::invariant(format!("no bag covers triangle at {vertex}")))?;
    Ok(SafeWitness {
        vertex,
        pair,
        decomposition,
        node,
        width,
    })
}

pub fn is_safe_vertex(g: &Graph, v: VertexId, budget: usize) -> Result<bool> {
    Ok(safe_witness(g, v, budget)?.is_some())
}

/// Degree-3 vertices that are not safe, ascending.
pub fn unsafe_vertices(g: &Graph, budget: usize) -> Result<Vec<VertexId>> {
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 3) {
        if !is_safe_vertex(g, v, budget)? {
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::treewidth::{validate, DEFAULT_TW_BUDGET};

    #[test]
    fn triangle_neighbors_are_safe() {
        let w = wheel(6).unwrap();
        for v in 0..5 {
            let wit = safe_witness(&w, v, DEFAULT_TW_BUDGET).unwrap().unwrap();
            assert_eq!(validate(&w, &wit.decomposition), Ok(()));
            assert_eq!(wit.width, 3);
        }
    }

    #[test]
    fn k33_and_petersen() {
        // K3,3 + ab contains K4 minor either way; tw stays 3.
        let k33 = complete_bipartite(3, 3).unwrap();
        assert_eq!(unsafe_vertices(&k33, DEFAULT_TW_BUDGET).unwrap(), Vec::<usize>::new());
        let p = petersen();
        for v in 0..10 {
            if let Some(wit) = safe_witness(&p, v, DEFAULT_TW_BUDGET).unwrap() {
                assert_eq!(validate(&p, &wit.decomposition), Ok(()));
                assert_eq!(wit.width, 4);
            }
        }
    }

    #[test]
    fn requires_degree_three() {
        let w = wheel(6).unwrap();
        assert!(is_safe_vertex(&w, 5, DEFAULT_TW_BUDGET).is_err());
    }
}
