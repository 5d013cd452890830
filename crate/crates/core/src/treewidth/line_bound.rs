use serde::{Deserialize, Serialize};

use super::clique_sum::clique_sum;
use super::exact::treewidth_exact_with_budget;
use crate::canon::canonical_text;
use crate::constructions::{
    bridge_pairs, bridge_trusted, edge_join_trusted, replay_trusted, spoke_sites,
    spoke_trusted, Matching, Recipe,
};
use crate::error::{Error, Result};
use crate::generators::{complete_bipartite, complete_graph, line_graph, wheel};
use crate::graph::{Edge, Graph, VertexId};

/// Treewidth ceiling for every extremal graph.
pub const EXTREMAL_TW_BOUND: usize = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBound {
    pub tw_graph: usize,
    pub tw_line: usize,
    /// `tw(G) <= 2 tw(L(G)) + 1`.
    pub holds: bool,
}

pub fn line_graph_bound_check(g: &Graph, budget: usize) -> Result<LineBound> {
    let lg = line_graph(g)?;
    let tw_line = treewidth_exact_with_budget(&lg.graph, budget)?.width;
    let tw_graph = treewidth_exact_with_budget(g, budget)?.width;
    Ok(LineBound {
        tw_graph,
        tw_line,
        holds: tw_graph <= 2 * tw_line + 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSubgraphCheck {
    /// Every edge of `L(G)` maps to an edge of `H` under the edge
    /// identification.
    pub is_subgraph: bool,
    pub line_edges: usize,
    pub sum_edges: usize,
    /// `H` is the clique-sum of `L(G1)` and `L(G2)` at the edge tripods of
    /// `v1` and `v2`.
    pub sum: Graph,
    /// `image[e]`: vertex of `H` assigned to vertex `e` of `L(G)`.
    pub image: Vec<VertexId>,
}

impl LineSubgraphCheck {
    pub fn proper(&self) -> bool {
        self.line_edges < self.sum_edges
    }

    pub fn holds(&self) -> bool {
        self.is_subgraph && self.proper()
    }
}

/// Checks that `L(bridge(G1, v1, G2, v2, m))` sits inside the clique-sum of
/// `L(G1)` and `L(G2)` that identifies edge `v1 x_i` with edge
/// `v2 y_{m(i)}`. Edges of `G1 - v1` and `G2 - v2` map to themselves; the
/// matching edge `x_i y_{m(i)}` maps to the identified tripod vertex.
pub fn bridge_line_subgraph_check(
    g1: &Graph,
    v1: VertexId,
    g2: &Graph,
    v2: VertexId,
    matching: Matching,
) -> Result<LineSubgraphCheck> {
    let pairs = bridge_pairs(g1, v1, g2, v2, matching)?;
    let l1 = line_graph(g1)?;
    let l2 = line_graph(g2)?;
    let tri1: Vec<VertexId> = pairs.iter().map(|&(a, _)| l1.vertex_of(Edge::new(v1, a)).unwrap()).collect();
    let tri2: Vec<VertexId> = pairs.iter().map(|&(_, b)| l2.vertex_of(Edge::new(v2, b)).unwrap()).collect();
    let h = clique_sum(&l1.graph, &tri1, &l2.graph, &tri2)?;

    let g = bridge_trusted(g1, v1, g2, v2, matching)?;
    let split = g1.n() - 1;
    let old1 = |u: VertexId| if u < v1 { u } else { u + 1 };
    let old2 = |u: VertexId| {
        let u = u - split;
        if u < v2 { u } else { u + 1 }
    };
    let lg = line_graph(&g)?;
    let mut image = Vec::with_capacity(lg.edges.len());
    for &e in &lg.edges {
        let (a, b) = e.endpoints();
        let target = if b < split {
            l1.vertex_of(Edge::new(old1(a), old1(b)))
        } else if a >= split {
            l2.vertex_of(Edge::new(old2(a), old2(b)))
                .and_then(|x| h.right_map.get(x))
        } else {
            let (a, b) = (old1(a), old2(b));
            pairs.iter().position(|&p| p == (a, b)).map(|i| tri1[i])
        };
        image.push(target.ok_or_else(|| Error::invariant(format!("edge {e} has no preimage")))?);
    }
    let mut sorted = image.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let injective = sorted.len() == image.len();
    let is_subgraph = injective
        && lg
            .graph
            .edges()
            .iter()
            .all(|e| h.graph.has_edge(image[e.u()], image[e.v()]));
    Ok(LineSubgraphCheck {
        is_subgraph,
        line_edges: lg.graph.m(),
        sum_edges: h.graph.m(),
        sum: h.graph,
        image,
    })
}

/// The base graphs extremal graphs are bridged together from: wheels on 4
/// to 7 vertices, `K3,3`, the prism, and every primary spoke on those two
/// up to isomorphism.
pub fn extremal_base_graphs() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = (4..=7).map(|n| (format!("W{n}"), wheel(n).unwrap())).collect();
    let k4 = complete_graph(4).unwrap();
    let k33 = edge_join_trusted(&k4, Edge::new(0, 1), Edge::new(2, 3)).unwrap();
    debug_assert!(crate::canon::are_isomorphic(&k33, &complete_bipartite(3, 3).unwrap()).unwrap());
    let envelope = edge_join_trusted(&k4, Edge::new(0, 1), Edge::new(0, 2)).unwrap();
    for (name, g) in [("K3,3", k33), ("envelope", envelope)] {
        out.push((name.to_string(), g.clone()));
        let mut seen = Vec::new();
        for (v, w, x) in spoke_sites(&g) {
            if g.degree(x) != 3 {
                continue;
            }
            let (h, _) = spoke_trusted(&g, v, w, x).unwrap();
            let key = canonical_text(&h).unwrap();
            if !seen.contains(&key) {
                seen.push(key);
                out.push((format!("{name}+spoke{}", seen.len()), h));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalTwBound {
    pub tw: usize,
    /// `tw(L(B))` per block of the recipe, when one was given.
    pub block_line_widths: Vec<usize>,
    /// Largest block line-graph treewidth.
    pub w: Option<usize>,
    /// `tw <= 2w + 1`, when a recipe was given.
    pub line_bound_ok: Option<bool>,
    /// `tw <= 13`.
    pub ceiling_ok: bool,
}

/// Treewidth of `g` against the fixed ceiling and, given the recipe that
/// built `g`, against `2w + 1` where `w` bounds the line-graph treewidth of
/// the recipe's blocks.
pub fn extremal_tw_bound(g: &Graph, recipe: Option<&Recipe>, budget: usize) -> Result<ExtremalTwBound> {
    let tw = treewidth_exact_with_budget(g, budget)?.width;
    let mut block_line_widths = Vec::new();
    let (mut w, mut line_bound_ok) = (None, None);
    if let Some(recipe) = recipe {
        let rep = replay_trusted(recipe)?;
        if rep.graph != *g {
            return Err(Error::InvalidArgument("recipe does not build this graph".into()));
        }
        for b in &rep.blocks {
            let lg = line_graph(b)?;
            block_line_widths.push(treewidth_exact_with_budget(&lg.graph, budget)?.width);
        }
        let max = block_line_widths.iter().copied().max().unwrap_or(0);
        w = Some(max);
        line_bound_ok = Some(tw <= 2 * max + 1);
    }
    Ok(ExtremalTwBound {
        tw,
        block_line_widths,
        w,
        line_bound_ok,
        ceiling_ok: tw <= EXTREMAL_TW_BOUND,
    })
}
