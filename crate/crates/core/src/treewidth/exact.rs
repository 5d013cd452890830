use std::collections::HashSet;

use super::TreeDecomposition;
use crate::error::{check_budget, Error, Result};
use crate::graph::{bit, bits, full_mask, Graph, VertexId};

/// Largest graph [`treewidth_exact`] accepts by default.
pub const DEFAULT_TW_BUDGET: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreewidthResult {
    pub width: usize,
    /// Lexicographically smallest elimination ordering of that width.
    pub ordering: Vec<VertexId>,
    /// Decomposition built from `ordering`: one bag per vertex.
    pub decomposition: TreeDecomposition,
}

/// Vertices outside `eliminated ∪ {v}` reachable from `v` through
/// eliminated vertices: the neighborhood of `v` at the moment it is
/// eliminated after the set `eliminated`.
fn q_set(adj: &[u64], eliminated: u64, v: VertexId) -> u64 {
    let mut comp = bit(v);
    let mut frontier = bit(v);
    while frontier != 0 {
        let mut next = 0;
        for u in bits(frontier) {
            next |= adj[u];
        }
        next &= eliminated & !comp;
        comp |= next;
        frontier = next;
    }
    let mut out = 0;
    for u in bits(comp) {
        out |= adj[u];
    }
    out & !eliminated & !bit(v)
}

/// Width of an elimination ordering (`order[0]` is eliminated first).
pub fn elimination_width(g: &Graph, order: &[VertexId]) -> Result<usize> {
    let mut seen = 0u64;
    for &v in order {
        g.check_vertex(v)?;
        if seen & bit(v) != 0 {
            return Err(Error::InvalidArgument(format!("vertex {v} repeated in ordering")));
        }
        seen |= bit(v);
    }
    if seen != g.vertex_mask() {
        return Err(Error::InvalidArgument("ordering is not a permutation".into()));
    }
    let adj = g.adjacency_masks();
    let mut elim = 0u64;
    let mut w = 0;
    for &v in order {
        w = w.max(q_set(adj, elim, v).count_ones() as usize);
        elim |= bit(v);
    }
    Ok(w)
}

/// Minor-min-width lower bound: repeatedly contract a minimum-degree vertex
/// into its minimum-degree neighbor.
pub fn treewidth_lower_bound(g: &Graph) -> usize {
    let mut h = g.clone();
    let mut lb = 0;
    while h.n() > 1 {
        let v = h.vertices().min_by_key(|&v| h.degree(v)).unwrap();
        let d = h.degree(v);
        lb = lb.max(d);
        if d == 0 {
            h = h.delete_vertex(v).unwrap().0;
            continue;
        }
        let u = h.neighbors(v).min_by_key(|&u| h.degree(u)).unwrap();
        h = h.contract_edge(v, u).unwrap().0;
    }
    lb
}

/// Width of a greedy minimum-fill elimination ordering.
pub fn treewidth_upper_bound(g: &Graph) -> usize {
    let mut adj = g.adjacency_masks().to_vec();
    let mut left = g.vertex_mask();
    let mut w = 0;
    while left != 0 {
        let fill = |v: VertexId| {
            let nb = adj[v] & left;
            bits(nb)
                .map(|u| (nb & !adj[u] & !bit(u)).count_ones())
                .sum::<u32>()
        };
        let v = bits(left).min_by_key(|&v| (fill(v), (adj[v] & left).count_ones())).unwrap();
        let nb = adj[v] & left;
        w = w.max(nb.count_ones() as usize);
        for u in bits(nb) {
            adj[u] |= nb & !bit(u);
        }
        left &= !bit(v);
    }
    w
}

struct Decision<'a> {
    adj: &'a [u64],
    all: u64,
    k: usize,
    dead: HashSet<u64>,
    /// Filled in reverse on success.
    order: Vec<VertexId>,
}

impl Decision<'_> {
    fn run(&mut self, elim: u64) -> bool {
        let rest = self.all & !elim;
        if (rest.count_ones() as usize) <= self.k + 1 {
            // Every remaining vertex sees at most k others; ascending is
            // the smallest completion.
            self.order.extend(bits(rest).collect::<Vec<_>>().into_iter().rev());
            return true;
        }
        if self.dead.contains(&elim) {
            return false;
        }
        for v in bits(rest) {
            if q_set(self.adj, elim, v).count_ones() as usize <= self.k && self.run(elim | bit(v)) {
                self.order.push(v);
                return true;
            }
        }
        self.dead.insert(elim);
        false
    }
}

fn ordering_of_width(g: &Graph, k: usize) -> Option<Vec<VertexId>> {
    let mut d = Decision {
        adj: g.adjacency_masks(),
        all: full_mask(g.n()),
        k,
        dead: HashSet::new(),
        order: Vec::with_capacity(g.n()),
    };
    if d.run(0) {
        d.order.reverse();
        Some(d.order)
    } else {
        None
    }
}

/// One bag `{v} ∪ Q` per eliminated vertex, attached to the bag of the
/// earliest-eliminated vertex of `Q`. Bags with empty `Q` (component roots)
/// hang off the final bag.
pub(crate) fn decomposition_from_ordering(g: &Graph, order: &[VertexId]) -> TreeDecomposition {
    let n = order.len();
    if n == 0 {
        return TreeDecomposition::new(vec![vec![]], vec![]);
    }
    let adj = g.adjacency_masks();
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n - 1);
    let mut elim = 0u64;
    for (i, &v) in order.iter().enumerate() {
        let q = q_set(adj, elim, v);
        bags.push(bits(q | bit(v)).collect());
        if i + 1 < n {
            let parent = bits(q).map(|u| pos[u]).min().unwrap_or(n - 1);
            edges.push((i, parent));
        }
        elim |= bit(v);
    }
    TreeDecomposition::new(bags, edges)
}

pub fn treewidth_exact(g: &Graph) -> Result<TreewidthResult> {
    treewidth_exact_with_budget(g, DEFAULT_TW_BUDGET)
}

/// Exact treewidth by a memoized search over eliminated sets, trying widths
/// upward from a lower bound. Graphs with more than `budget` vertices are
/// refused. The empty graph has treewidth 0.
pub fn treewidth_exact_with_budget(g: &Graph, budget: usize) -> Result<TreewidthResult> {
    check_budget("treewidth", g.n(), budget)?;
    let lb = treewidth_lower_bound(g);
    let ub = treewidth_upper_bound(g);
    for k in lb..=ub {
        if let Some(ordering) = ordering_of_width(g, k) {
            let decomposition = decomposition_from_ordering(g, &ordering);
            return Ok(TreewidthResult {
                width: k,
                ordering,
                decomposition,
            });
        }
    }
    Err(Error::invariant(format!("no ordering of width {ub} found, but the heuristic has one")))
}

pub fn treewidth(g: &Graph) -> Result<usize> {
    Ok(treewidth_exact(g)?.width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::treewidth::{validate, width};

    fn check(g: &Graph, expect: usize) {
        let r = treewidth_exact(g).unwrap();
        assert_eq!(r.width, expect);
        assert_eq!(validate(g, &r.decomposition), Ok(()));
        assert_eq!(width(&r.decomposition).unwrap(), expect);
        assert_eq!(elimination_width(g, &r.ordering).unwrap(), expect);
    }

    #[test]
    fn known_values() {
        check(&Graph::empty(0), 0);
        check(&Graph::empty(3), 0);
        check(&path(6).unwrap(), 1);
        check(&star(5).unwrap(), 1);
        check(&cycle(7).unwrap(), 2);
        check(&complete_graph(6).unwrap(), 5);
        check(&complete_bipartite(3, 3).unwrap(), 3);
        check(&complete_bipartite(4, 4).unwrap(), 4);
        check(&wheel(8).unwrap(), 3);
        check(&prism(), 3);
        check(&petersen(), 4);
    }

    #[test]
    fn lexicographically_smallest() {
        // Every ordering of a path has width <= 1 except ones that
        // eliminate an interior vertex while both its neighbors remain.
        let r = treewidth_exact(&path(4).unwrap()).unwrap();
        assert_eq!(r.ordering, vec![0, 1, 2, 3]);
        // In K4 every ordering has width 3.
        let r = treewidth_exact(&complete_graph(4).unwrap()).unwrap();
        assert_eq!(r.ordering, vec![0, 1, 2, 3]);
    }

    #[test]
    fn bounds_sandwich() {
        let p = petersen();
        assert!(treewidth_lower_bound(&p) <= 4);
        assert!(treewidth_upper_bound(&p) >= 4);
    }

    #[test]
    fn budget() {
        let g = cycle(23).unwrap();
        assert!(treewidth_exact(&g).unwrap_err().is_budget());
        assert_eq!(treewidth_exact_with_budget(&g, 23).unwrap().width, 2);
    }

    #[test]
    fn bad_orderings() {
        let g = path(3).unwrap();
        assert!(elimination_width(&g, &[0, 1]).is_err());
        assert!(elimination_width(&g, &[0, 0, 1]).is_err());
        assert_eq!(elimination_width(&g, &[1, 0, 2]).unwrap(), 2);
    }
}
