//! Local and uniform vertex connectivity.
//!
//! The local connectivity of `u`, `v` is the largest number of internally
//! vertex-disjoint `u`-`v` paths, a direct edge counting as one. It is the
//! value of a unit-capacity max-flow on the vertex-split network: every vertex
//! `w` becomes `w_in -> w_out` with capacity one (unbounded for `u` and `v`),
//! and every edge `ab` becomes arcs `a_out -> b_in`, `b_out -> a_in`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Extremes of local connectivity over all vertex pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityProfile {
    pub min_local: usize,
    pub max_local: usize,
    pub pair_witness_min: (VertexId, VertexId),
    pub pair_witness_max: (VertexId, VertexId),
}

/// Why a graph fails to be uniformly k-connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniformityViolation {
    TooFewVertices { n: usize, k: usize },
    Pair { u: VertexId, v: VertexId, local: usize },
}

struct SplitNetwork {
    size: usize,
    cap: Vec<u8>,
}

const INF: u8 = u8::MAX;

impl SplitNetwork {
    fn new(g: &Graph, u: VertexId, v: VertexId) -> SplitNetwork {
        let size = 2 * g.n();
        let mut cap = vec![0u8; size * size];
        for w in g.vertices() {
            cap[(2 * w) * size + 2 * w + 1] = if w == u || w == v { INF } else { 1 };
        }
        for e in g.edges() {
            let (a, b) = e.endpoints();
            cap[(2 * a + 1) * size + 2 * b] = 1;
            cap[(2 * b + 1) * size + 2 * a] = 1;
        }
        SplitNetwork { size, cap }
    }

    /// One BFS augmentation of one unit; false when no path remains.
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let size = self.size;
        let mut pred = vec![usize::MAX; size];
        pred[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            let row = &self.cap[a * size..(a + 1) * size];
            for (b, &c) in row.iter().enumerate() {
                if c > 0 && pred[b] == usize::MAX {
                    pred[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if pred[sink] == usize::MAX {
            return false;
        }
        let mut b = sink;
        while b != source {
            let a = pred[b];
            let fwd = &mut self.cap[a * size + b];
            if *fwd != INF {
                *fwd -= 1;
            }
            let back = &mut self.cap[b * size + a];
            if *back != INF {
                *back += 1;
            }
            b = a;
        }
        true
    }
}

/// Maximum number of internally disjoint `u`-`v` paths.
pub fn local_connectivity(g: &Graph, u: VertexId, v: VertexId) -> Result<usize> {
    local_connectivity_capped(g, u, v, usize::MAX)
}

/// Like [`local_connectivity`] but stops once `cap` paths are found.
pub fn local_connectivity_capped(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    cap: usize,
) -> Result<usize> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidArgument(format!(
            "local connectivity of vertex {u} with itself"
        )));
    }
    let mut net = SplitNetwork::new(g, u, v);
    let (source, sink) = (2 * u + 1, 2 * v);
    let mut flow = 0;
    while flow < cap && net.augment(source, sink) {
        flow += 1;
    }
    Ok(flow)
}

fn pairs(n: usize) -> impl Iterator<Item = (VertexId, VertexId)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// Min and max local connectivity over all pairs; `None` below two vertices.
pub fn connectivity_profile(g: &Graph) -> Option<ConnectivityProfile> {
    let mut out: Option<ConnectivityProfile> = None;
    for (u, v) in pairs(g.n()) {
        let k = local_connectivity(g, u, v).expect("valid pair");
        match &mut out {
            None => {
                out = Some(ConnectivityProfile {
                    min_local: k,
                    max_local: k,
                    pair_witness_min: (u, v),
                    pair_witness_max: (u, v),
                })
            }
            Some(p) => {
                if k < p.min_local {
                    p.min_local = k;
                    p.pair_witness_min = (u, v);
                }
                if k > p.max_local {
                    p.max_local = k;
                    p.pair_witness_max = (u, v);
                }
            }
        }
    }
    out
}

/// Checks uniform k-connectivity, reporting the first deviating pair in
/// lexicographic order.
pub fn check_uniformly_k_connected(g: &Graph, k: usize) -> Result<(), UniformityViolation> {
    let n = g.n();
    if n < k + 1 {
        return Err(UniformityViolation::TooFewVertices { n, k });
    }
    for (u, v) in pairs(n) {
        let local = local_connectivity_capped(g, u, v, k + 1).expect("valid pair");
        if local != k {
            return Err(UniformityViolation::Pair { u, v, local });
        }
    }
    Ok(())
}

pub fn is_uniformly_k_connected(g: &Graph, k: usize) -> bool {
    k >= 1 && check_uniformly_k_connected(g, k).is_ok()
}

/// `n > k` and every pair has local connectivity at least `k`.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if g.n() <= k {
        return false;
    }
    if k == 0 {
        return true;
    }
    if g.min_degree().unwrap_or(0) < k {
        return false;
    }
    pairs(g.n()).all(|(u, v)| local_connectivity_capped(g, u, v, k).expect("valid pair") >= k)
}

pub fn is_regular(g: &Graph, d: usize) -> bool {
    g.vertices().all(|v| g.degree(v) == d)
}

/// Number of vertices attaining the minimum degree.
pub fn nu(g: &Graph) -> Result<usize> {
    let min = g
        .min_degree()
        .ok_or_else(|| Error::InvalidArgument("nu of the empty graph".into()))?;
    Ok(g.vertices().filter(|&v| g.degree(v) == min).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn local_examples() {
        let k4 = complete_graph(4).unwrap();
        for (u, v) in pairs(4) {
            assert_eq!(local_connectivity(&k4, u, v).unwrap(), 3);
        }
        let c5 = cycle(5).unwrap();
        for (u, v) in pairs(5) {
            assert_eq!(local_connectivity(&c5, u, v).unwrap(), 2);
        }
        assert!(local_connectivity(&c5, 2, 2).is_err());
        assert!(local_connectivity(&c5, 0, 5).is_err());
    }

    #[test]
    fn uniform_examples() {
        let tree = Graph::new(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert!(is_uniformly_k_connected(&tree, 1));
        assert!(is_uniformly_k_connected(&cycle(7).unwrap(), 2));
        assert!(is_uniformly_k_connected(&wheel(6).unwrap(), 3));
        assert!(!is_uniformly_k_connected(&complete_graph(5).unwrap(), 3));
        assert_eq!(
            check_uniformly_k_connected(&complete_graph(3).unwrap(), 3),
            Err(UniformityViolation::TooFewVertices { n: 3, k: 3 })
        );
        // 0-1 has three paths, 0-2 has four.
        let g = complete_graph(5).unwrap().delete_edge(0, 1).unwrap();
        assert!(matches!(
            check_uniformly_k_connected(&g, 3),
            Err(UniformityViolation::Pair { local: 4, .. })
        ));
    }

    #[test]
    fn regular_and_connected() {
        let k4 = complete_graph(4).unwrap();
        assert!(is_k_connected(&k4, 3) && is_regular(&k4, 3));
        let k33 = complete_bipartite(3, 3).unwrap();
        assert!(is_k_connected(&k33, 3) && is_regular(&k33, 3));
        assert!(!is_k_connected(&k33, 4));
        let w6 = wheel(6).unwrap();
        assert!(is_k_connected(&w6, 3) && !is_regular(&w6, 3));
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(&complete_graph(4).unwrap()).unwrap(), 4);
        assert_eq!(nu(&wheel(5).unwrap()).unwrap(), 4);
        assert_eq!(nu(&wheel(10).unwrap()).unwrap(), 9);
        assert!(nu(&Graph::empty(0)).is_err());
    }

    #[test]
    fn profile_of_wheel() {
        let p = connectivity_profile(&wheel(6).unwrap()).unwrap();
        assert_eq!((p.min_local, p.max_local), (3, 3));
        let q = connectivity_profile(&path(3).unwrap()).unwrap();
        assert_eq!((q.min_local, q.max_local), (1, 1));
        assert!(connectivity_profile(&Graph::empty(1)).is_none());
    }
}
