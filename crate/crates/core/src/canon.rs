//! Canonical labeling for small graphs.
//!
//! Exhaustive search over vertex orderings, pruned three ways: orderings must
//! respect the equitable partition obtained by degree refinement, twins in the
//! branching cell are explored once, and any branch whose fixed prefix already
//! encodes to a smaller adjacency string than the best leaf is cut. The
//! canonical graph is the relabeling whose graph6 bit string is
//! lexicographically largest among all surviving leaves.

use crate::error::{check_budget, Result};
use crate::graph::{bit, Graph, VertexId};
use crate::graph6::{self, Graph6};

pub const DEFAULT_CANON_BUDGET: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `order[i]` is the original vertex placed at canonical position `i`.
    pub order: Vec<VertexId>,
    pub graph6: Graph6,
}

impl CanonicalForm {
    /// The relabeled graph.
    pub fn graph(&self) -> Graph {
        self.graph6.to_graph()
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with_budget(g, DEFAULT_CANON_BUDGET)
}

pub fn canonical_form_with_budget(g: &Graph, budget: usize) -> Result<CanonicalForm> {
    check_budget("canonical form", g.n(), budget)?;
    let n = g.n();
    let mut search = Search {
        g,
        best_key: Vec::new(),
        best_order: Vec::new(),
    };
    if n > 0 {
        let colors = refine(g, vec![0; n]);
        search.descend(colors);
    }
    let mut perm = vec![0; n];
    for (pos, &v) in search.best_order.iter().enumerate() {
        perm[v] = pos;
    }
    let canon = g.relabel(&perm)?;
    Ok(CanonicalForm {
        order: search.best_order,
        graph6: graph6::encode(&canon)?,
    })
}

/// Shorthand for the canonical graph6 text.
pub fn canonical_text(g: &Graph) -> Result<Graph6> {
    Ok(canonical_form(g)?.graph6)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() || a.m() != b.m() || a.degree_sequence() != b.degree_sequence() {
        return Ok(false);
    }
    Ok(canonical_text(a)? == canonical_text(b)?)
}

/// Colors are cell start positions: a vertex's color is the number of
/// vertices in strictly earlier cells. Refining keeps every cell inside its
/// parent's range.
fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    let mut cells = count_cells(&colors);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, VertexId)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = g.neighbors(v).map(|w| colors[w]).collect();
                nc.sort_unstable();
                (colors[v], nc, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0; n];
        for i in 0..n {
            let start = if i > 0 && sigs[i].0 == sigs[i - 1].0 && sigs[i].1 == sigs[i - 1].1 {
                next[sigs[i - 1].2]
            } else {
                i
            };
            next[sigs[i].2] = start;
        }
        colors = next;
        let now = count_cells(&colors);
        if now == cells {
            return colors;
        }
        cells = now;
    }
}

fn count_cells(colors: &[usize]) -> usize {
    let mut seen = vec![false; colors.len()];
    colors.iter().filter(|&&c| !std::mem::replace(&mut seen[c], true)).count()
}

struct Search<'a> {
    g: &'a Graph,
    /// Column `j` holds bits `(i, j)` for `i < j`, with `i = 0` most
    /// significant, matching graph6 order.
    best_key: Vec<u64>,
    best_order: Vec<VertexId>,
}

impl Search<'_> {
    fn descend(&mut self, colors: Vec<usize>) {
        let n = self.g.n();
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c] += 1;
        }
        let mut at = vec![usize::MAX; n];
        for (v, &c) in colors.iter().enumerate() {
            if size[c] == 1 {
                at[c] = v;
            }
        }
        // Positions 0..prefix are fixed singletons.
        let prefix = (0..n).position(|p| at[p] == usize::MAX).unwrap_or(n);
        let key: Vec<u64> = (0..prefix).map(|j| self.column(&at, j)).collect();
        if !self.best_key.is_empty() && key.as_slice() < &self.best_key[..prefix] {
            return;
        }
        if prefix == n {
            if key > self.best_key {
                self.best_key = key;
                self.best_order = at;
            }
            return;
        }
        let target = prefix;
        let cell: Vec<VertexId> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<VertexId> = Vec::new();
        for &v in &cell {
            if explored.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            explored.push(v);
            let mut next = colors.clone();
            for &w in &cell {
                if w != v {
                    next[w] = target + 1;
                }
            }
            let next = refine(self.g, next);
            self.descend(next);
        }
    }

    fn column(&self, at: &[VertexId], j: usize) -> u64 {
        let row = self.g.neighbor_mask(at[j]);
        (0..j).fold(0, |acc, i| (acc << 1) | (row & bit(at[i]) != 0) as u64)
    }

    fn twins(&self, u: VertexId, v: VertexId) -> bool {
        let nu = self.g.neighbor_mask(u) & !bit(v);
        let nv = self.g.neighbor_mask(v) & !bit(u);
        nu == nv
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_bipartite, complete_graph, petersen, prism, wheel};

    #[test]
    fn k4_relabelings_agree() {
        let k4 = complete_graph(4).unwrap();
        let c = canonical_text(&k4).unwrap();
        assert_eq!(c.as_str(), "C~");
        let r = k4.relabel(&[3, 1, 0, 2]).unwrap();
        assert_eq!(canonical_text(&r).unwrap(), c);
    }

    #[test]
    fn distinguishes_degree_sequences() {
        let w5 = wheel(5).unwrap();
        let k4_pendant = complete_graph(4)
            .unwrap()
            .add_vertices(1)
            .unwrap()
            .add_edge(0, 4)
            .unwrap();
        assert_ne!(canonical_text(&w5).unwrap(), canonical_text(&k4_pendant).unwrap());
    }

    #[test]
    fn k33_vs_prism() {
        let a = complete_bipartite(3, 3).unwrap();
        let b = prism();
        assert!(!are_isomorphic(&a, &b).unwrap());
        let shuffled = b.relabel(&[5, 3, 1, 0, 2, 4]).unwrap();
        assert!(are_isomorphic(&b, &shuffled).unwrap());
    }

    #[test]
    fn order_reproduces_text() {
        let p = petersen();
        let c = canonical_form(&p).unwrap();
        let mut perm = vec![0; 10];
        for (pos, &v) in c.order.iter().enumerate() {
            perm[v] = pos;
        }
        assert_eq!(graph6::encode(&p.relabel(&perm).unwrap()).unwrap(), c.graph6);
    }

    #[test]
    fn budget() {
        let k = complete_graph(17).unwrap();
        assert!(canonical_form(&k).unwrap_err().is_budget());
        assert!(canonical_form_with_budget(&k, 17).is_ok());
    }
}
