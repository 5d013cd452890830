//! Tree decompositions and exact treewidth.
//!
//! A [`TreeDecomposition`] is a tree on bag nodes. It is valid for a graph
//! when the tree is a tree, every vertex and every edge lies in some bag, and
//! the bags containing any fixed vertex form a connected subtree. Its width
//! is the largest bag size minus one.

mod clique_sum;
mod combine;
mod exact;
mod line_bound;
mod safe;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, bits, Edge, Graph, VertexId};

pub use clique_sum::{clique_sum, CliqueSum};
pub use combine::{combine_decompositions_bridge, CombineCase, CombinedDecomposition, RoleLabels};
pub use exact::{
    elimination_width, treewidth, treewidth_exact, treewidth_exact_with_budget,
    treewidth_lower_bound, treewidth_upper_bound, TreewidthResult, DEFAULT_TW_BUDGET,
};
pub use line_bound::{
    bridge_line_subgraph_check, extremal_base_graphs, extremal_tw_bound,
    line_graph_bound_check, ExtremalTwBound, LineBound, LineSubgraphCheck, EXTREMAL_TW_BOUND,
};
pub use safe::{is_safe_vertex, safe_witness, unsafe_vertices, SafeWitness};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    /// `bags[i]` is the sorted bag of node `i`.
    pub bags: Vec<Vec<VertexId>>,
    pub tree_edges: Vec<(usize, usize)>,
}

/// First violated condition found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    Empty,
    NotATree,
    VertexOutOfRange { node: usize, vertex: VertexId },
    VertexUncovered(VertexId),
    EdgeUncovered(Edge),
    NotSubtree(VertexId),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::Empty => f.write_str("decomposition has no nodes"),
            TdViolation::NotATree => f.write_str("node graph is not a tree"),
            TdViolation::VertexOutOfRange { node, vertex } => {
                write!(f, "bag {node} holds unknown vertex {vertex}")
            }
            TdViolation::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            TdViolation::EdgeUncovered(e) => write!(f, "edge {e} is in no bag"),
            TdViolation::NotSubtree(v) => write!(f, "bags holding {v} are not connected"),
        }
    }
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<VertexId>>, tree_edges: Vec<(usize, usize)>) -> TreeDecomposition {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, tree_edges }
    }

    /// One bag holding every vertex.
    pub fn trivial(g: &Graph) -> TreeDecomposition {
        TreeDecomposition::new(vec![g.vertices().collect()], vec![])
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn bag_mask(&self, node: usize) -> u64 {
        self.bags[node].iter().fold(0, |m, &v| m | bit(v))
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Nodes whose bag contains every vertex of `set`.
    pub fn nodes_containing(&self, set: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.bags.len()).filter(move |&i| self.bag_mask(i) & set == set)
    }

    fn is_tree(&self) -> bool {
        let n = self.bags.len();
        if self.tree_edges.len() + 1 != n {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.tree_edges {
            if a >= n || b >= n {
                return false;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// Serializes as `{"nodes": [...], "tree_edges": [[i, j], ...], "bags": {"i": [v, ...]}}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TdJson::from(self)).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<TreeDecomposition> {
        let raw: TdJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidArgument(format!("tree decomposition json: {e}")))?;
        raw.try_into()
    }

    /// PACE-style `.td` text: `s td <bags> <max bag size> <vertices>`, then
    /// `b <node> <v>...` per bag and one `<i> <j>` line per tree edge. Node
    /// and vertex numbers are 1-based.
    pub fn to_td_text(&self, n_vertices: usize) -> String {
        let mut out = String::new();
        writeln!(out, "s td {} {} {}", self.bags.len(), self.max_bag_size(), n_vertices).unwrap();
        for (i, bag) in self.bags.iter().enumerate() {
            write!(out, "b {}", i + 1).unwrap();
            for v in bag {
                write!(out, " {}", v + 1).unwrap();
            }
            out.push('\n');
        }
        for &(a, b) in &self.tree_edges {
            writeln!(out, "{} {}", a + 1, b + 1).unwrap();
        }
        out
    }

    /// Parses [`TreeDecomposition::to_td_text`] output; returns the
    /// decomposition and the declared vertex count.
    pub fn from_td_text(text: &str) -> Result<(TreeDecomposition, usize)> {
        let bad = |line: usize, msg: &str| Error::InvalidArgument(format!("td line {line}: {msg}"));
        let mut header: Option<(usize, usize)> = None;
        let mut bags: Vec<Option<Vec<VertexId>>> = Vec::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let nums = |words: &[&str]| -> Result<Vec<usize>> {
                words
                    .iter()
                    .map(|w| w.parse::<usize>().map_err(|_| bad(i + 1, "bad number")))
                    .collect()
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "s" => {
                    if words.len() != 5 || words[1] != "td" {
                        return Err(bad(i + 1, "malformed header"));
                    }
                    let h = nums(&words[2..])?;
                    bags = vec![None; h[0]];
                    header = Some((h[0], h[2]));
                }
                "b" => {
                    let h = nums(&words[1..])?;
                    let node = h[0];
                    if header.is_none() || node == 0 || node > bags.len() {
                        return Err(bad(i + 1, "bag outside declared range"));
                    }
                    if h[1..].contains(&0) {
                        return Err(bad(i + 1, "vertices are 1-based"));
                    }
                    bags[node - 1] = Some(h[1..].iter().map(|v| v - 1).collect());
                }
                _ => {
                    let h = nums(&words)?;
                    if h.len() != 2 || h.contains(&0) {
                        return Err(bad(i + 1, "malformed tree edge"));
                    }
                    edges.push((h[0] - 1, h[1] - 1));
                }
            }
        }
        let (_, n) = header.ok_or_else(|| bad(0, "missing header"))?;
        let bags = bags
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| bad(0, &format!("bag {} missing", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Ok((TreeDecomposition::new(bags, edges), n))
    }
}

#[derive(Serialize, Deserialize)]
struct TdJson {
    nodes: Vec<usize>,
    tree_edges: Vec<[usize; 2]>,
    bags: BTreeMap<String, Vec<VertexId>>,
}

impl From<&TreeDecomposition> for TdJson {
    fn from(d: &TreeDecomposition) -> Self {
        TdJson {
            nodes: (0..d.bags.len()).collect(),
            tree_edges: d.tree_edges.iter().map(|&(a, b)| [a, b]).collect(),
            bags: d
                .bags
                .iter()
                .enumerate()
                .map(|(i, b)| (i.to_string(), b.clone()))
                .collect(),
        }
    }
}

impl TryFrom<TdJson> for TreeDecomposition {
    type Error = Error;

    fn try_from(raw: TdJson) -> Result<Self> {
        let n = raw.nodes.len();
        if raw.nodes.iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::InvalidArgument("nodes must be 0..len".into()));
        }
        let mut bags = vec![Vec::new(); n];
        for (k, bag) in raw.bags {
            let i: usize = k
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bag key {k:?}")))?;
            if i >= n {
                return Err(Error::InvalidArgument(format!("bag for unknown node {i}")));
            }
            bags[i] = bag;
        }
        Ok(TreeDecomposition::new(
            bags,
            raw.tree_edges.into_iter().map(|[a, b]| (a, b)).collect(),
        ))
    }
}

/// Checks tree shape and the three covering conditions, in that order.
pub fn validate(g: &Graph, d: &TreeDecomposition) -> Result<(), TdViolation> {
    if d.bags.is_empty() {
        return Err(TdViolation::Empty);
    }
    if !d.is_tree() {
        return Err(TdViolation::NotATree);
    }
    for (node, bag) in d.bags.iter().enumerate() {
        if let Some(&vertex) = bag.iter().find(|&&v| v >= g.n()) {
            return Err(TdViolation::VertexOutOfRange { node, vertex });
        }
    }
    let masks: Vec<u64> = (0..d.len()).map(|i| d.bag_mask(i)).collect();
    let covered = masks.iter().fold(0, |a, m| a | m);
    if let Some(v) = bits(g.vertex_mask() & !covered).next() {
        return Err(TdViolation::VertexUncovered(v));
    }
    for &e in g.edges() {
        let pair = bit(e.u()) | bit(e.v());
        if !masks.iter().any(|m| m & pair == pair) {
            return Err(TdViolation::EdgeUncovered(e));
        }
    }
    let mut adj = vec![Vec::new(); d.len()];
    for &(a, b) in &d.tree_edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for v in g.vertices() {
        let holding: Vec<usize> = (0..d.len()).filter(|&i| masks[i] & bit(v) != 0).collect();
        let mut seen = vec![false; d.len()];
        let mut stack = vec![holding[0]];
        seen[holding[0]] = true;
        let mut reached = 1;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] && masks[j] & bit(v) != 0 {
                    seen[j] = true;
                    reached += 1;
                    stack.push(j);
                }
            }
        }
        if reached != holding.len() {
            return Err(TdViolation::NotSubtree(v));
        }
    }
    Ok(())
}

pub fn is_valid(g: &Graph, d: &TreeDecomposition) -> bool {
    validate(g, d).is_ok()
}

/// Largest bag size minus one; a decomposition whose bags are all empty has
/// width 0.
pub fn width(d: &TreeDecomposition) -> Result<usize> {
    if d.bags.is_empty() {
        return Err(Error::InvalidArgument("width of an empty decomposition".into()));
    }
    Ok(d.max_bag_size().saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, cycle, path};

    #[test]
    fn single_bag_k4() {
        let k4 = complete_graph(4).unwrap();
        let d = TreeDecomposition::trivial(&k4);
        assert_eq!(validate(&k4, &d), Ok(()));
        assert_eq!(width(&d).unwrap(), 3);
    }

    #[test]
    fn path_of_bags() {
        let p = path(5).unwrap();
        let d = TreeDecomposition::new(
            (0..4).map(|i| vec![i, i + 1]).collect(),
            (0..3).map(|i| (i, i + 1)).collect(),
        );
        assert_eq!(validate(&p, &d), Ok(()));
        assert_eq!(width(&d).unwrap(), 1);
    }

    #[test]
    fn violations() {
        let p = path(3).unwrap();
        // Vertex 1 sits in nodes 0 and 2, which are joined only through node 1.
        let d = TreeDecomposition::new(vec![vec![0, 1], vec![0], vec![1, 2]], vec![(0, 1), (1, 2)]);
        assert_eq!(validate(&p, &d), Err(TdViolation::NotSubtree(1)));

        let d = TreeDecomposition::new(vec![vec![0, 1], vec![2]], vec![(0, 1)]);
        assert_eq!(validate(&p, &d), Err(TdViolation::EdgeUncovered(Edge::new(1, 2))));

        let d = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        assert_eq!(validate(&p, &d), Err(TdViolation::VertexUncovered(2)));

        let d = TreeDecomposition::new(vec![vec![0, 1, 2], vec![1]], vec![]);
        assert_eq!(validate(&p, &d), Err(TdViolation::NotATree));

        let d = TreeDecomposition::new(vec![vec![0, 1, 7]], vec![]);
        assert!(matches!(validate(&p, &d), Err(TdViolation::VertexOutOfRange { .. })));

        assert_eq!(validate(&p, &TreeDecomposition::default()), Err(TdViolation::Empty));
        assert!(width(&TreeDecomposition::default()).is_err());
    }

    #[test]
    fn cycle_decomposition_width_two() {
        let c6 = cycle(6).unwrap();
        // Fan from vertex 0: bags {0, i, i+1}.
        let d = TreeDecomposition::new(
            (1..5).map(|i| vec![0, i, i + 1]).collect(),
            (0..3).map(|i| (i, i + 1)).collect(),
        );
        assert_eq!(validate(&c6, &d), Ok(()));
        assert_eq!(width(&d).unwrap(), 2);
    }

    #[test]
    fn serializations_round_trip() {
        let d = TreeDecomposition::new(vec![vec![0, 1, 2], vec![2, 3], vec![2, 4]], vec![(0, 1), (0, 2)]);
        let json = d.to_json();
        assert_eq!(json["bags"]["1"], serde_json::json!([2, 3]));
        assert_eq!(TreeDecomposition::from_json(&json).unwrap(), d);
        let text = d.to_td_text(5);
        assert!(text.starts_with("s td 3 3 5\nb 1 1 2 3\n"));
        assert_eq!(TreeDecomposition::from_td_text(&text).unwrap(), (d, 5));
        assert!(TreeDecomposition::from_td_text("b 1 1\n").is_err());
    }
}
