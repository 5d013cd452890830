use serde::{Deserialize, Serialize};

use super::{validate, width, TreeDecomposition};
use crate::constructions::{bridge_pairs, bridge_trusted, BridgeLayout, Matching};
use crate::error::{Error, Result};
use crate::graph::{bit, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CombineCase {
    /// Exactly one matching edge runs between the two chosen bags.
    OneMatched,
    /// Two or three matching edges do.
    TwoMatched,
}

/// How the neighbors of `v1` (`x1, y1, z1`, in `G1`'s numbering) and of `v2`
/// (`x2, y2, z2`, in `G2`'s numbering) were named. `x1x2`, `y1y2`, `z1z2`
/// are always the matching edges.
///
/// `OneMatched`: `x1, y1` lie in the first bag, `x2, z2` in the second.
/// `TwoMatched`: `x1, y1` lie in the first bag, `x2, y2` in the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleLabels {
    pub x1: VertexId,
    pub y1: VertexId,
    pub z1: VertexId,
    pub x2: VertexId,
    pub y2: VertexId,
    pub z2: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinedDecomposition {
    pub graph: Graph,
    pub decomposition: TreeDecomposition,
    pub layout: BridgeLayout,
    pub case: CombineCase,
    /// Labels in the input graphs' numbering.
    pub labels: RoleLabels,
    /// Chosen node of `D1` (holding `v1`, `x1`, `y1`).
    pub s: usize,
    /// Chosen node of `D2`.
    pub t: usize,
}

/// Builds a decomposition of `bridge(G1, v1, G2, v2, matching)` from
/// decompositions of both sides, each having a bag with the bridged vertex
/// and two of its neighbors.
///
/// `v1` is replaced by one new-graph neighbor in every bag, likewise `v2`,
/// and one or two 4-vertex bags are threaded between the chosen nodes, so
/// the width is the larger input width as long as that is at least 3.
/// Candidate bag pairs are tried in node order until one has a matching
/// edge between them.
pub fn combine_decompositions_bridge(
    g1: &Graph,
    d1: &TreeDecomposition,
    v1: VertexId,
    g2: &Graph,
    d2: &TreeDecomposition,
    v2: VertexId,
    matching: Matching,
) -> Result<CombinedDecomposition> {
    let pairs = bridge_pairs(g1, v1, g2, v2, matching)?;
    for (which, g, d) in [("first", g1, d1), ("second", g2, d2)] {
        validate(g, d).map_err(|e| Error::precondition(format!("{which} decomposition: {e}")))?;
    }
    let w = width(d1)?.max(width(d2)?);
    if w < 3 {
        return Err(Error::precondition(format!("input widths are at most {w}, need one >= 3")));
    }
    let graph = bridge_trusted(g1, v1, g2, v2, matching)?;
    let layout = BridgeLayout {
        n1: g1.n(),
        v1,
        n2: g2.n(),
        v2,
    };

    let qualifying = |d: &TreeDecomposition, v: VertexId, side: [VertexId; 3]| -> Vec<(usize, u64)> {
        (0..d.len())
            .filter_map(|i| {
                let m = d.bag_mask(i);
                let hits = side.iter().filter(|&&x| m & bit(x) != 0).count();
                (m & bit(v) != 0 && hits >= 2).then_some((i, m))
            })
            .collect()
    };
    let xs = qualifying(d1, v1, pairs.map(|p| p.0));
    let yt = qualifying(d2, v2, pairs.map(|p| p.1));
    if xs.is_empty() || yt.is_empty() {
        return Err(Error::precondition("no bag holds a bridged vertex with two of its neighbors"));
    }

    for &(s, ms) in &xs {
        for &(t, mt) in &yt {
            let in_s = |i: usize| ms & bit(pairs[i].0) != 0;
            let in_t = |i: usize| mt & bit(pairs[i].1) != 0;
            let f: Vec<usize> = (0..3).filter(|&i| in_s(i) && in_t(i)).collect();
            let (case, [xi, yi, zi]) = match f.len() {
                0 => continue,
                1 => {
                    let x = f[0];
                    let y = (0..3).find(|&i| i != x && in_s(i)).unwrap();
                    let z = 3 - x - y;
                    (CombineCase::OneMatched, [x, y, z])
                }
                _ => (CombineCase::TwoMatched, [f[0], f[1], 3 - f[0] - f[1]]),
            };
            let labels = RoleLabels {
                x1: pairs[xi].0,
                y1: pairs[yi].0,
                z1: pairs[zi].0,
                x2: pairs[xi].1,
                y2: pairs[yi].1,
                z2: pairs[zi].1,
            };
            let l = |a| layout.left(a).unwrap();
            let r = |b| layout.right(b).unwrap();
            let (x1, y1, z1) = (l(labels.x1), l(labels.y1), l(labels.z1));
            let (x2, y2, z2) = (r(labels.x2), r(labels.y2), r(labels.z2));
            let (sub1, sub2, extra) = match case {
                CombineCase::OneMatched => (z2, y1, vec![vec![x1, x2, y1, z2]]),
                CombineCase::TwoMatched => {
                    (z1, z1, vec![vec![x1, y1, y2, z1], vec![x1, x2, y2, z1]])
                }
            };

            let n1 = d1.len();
            let mut bags: Vec<Vec<VertexId>> = Vec::with_capacity(n1 + d2.len() + 2);
            bags.extend(d1.bags.iter().map(|b| {
                b.iter().map(|&u| if u == v1 { sub1 } else { l(u) }).collect()
            }));
            bags.extend(d2.bags.iter().map(|b| {
                b.iter().map(|&u| if u == v2 { sub2 } else { r(u) }).collect()
            }));
            let mut edges = d1.tree_edges.clone();
            edges.extend(d2.tree_edges.iter().map(|&(a, b)| (a + n1, b + n1)));
            let mut prev = s;
            for bag in extra {
                bags.push(bag);
                edges.push((prev, bags.len() - 1));
                prev = bags.len() - 1;
            }
            edges.push((prev, t + n1));

            return Ok(CombinedDecomposition {
                graph,
                decomposition: TreeDecomposition::new(bags, edges),
                layout,
                case,
                labels,
                s,
                t,
            });
        }
    }
    Err(Error::precondition("no qualifying bag pair is joined by a matching edge"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, prism, wheel};
    use crate::treewidth::TreeDecomposition;

    #[test]
    fn k4_pair_gives_prism() {
        let k4 = complete_graph(4).unwrap();
        let d = TreeDecomposition::trivial(&k4);
        for m in Matching::all() {
            let c = combine_decompositions_bridge(&k4, &d, 0, &k4, &d, 3, m).unwrap();
            assert_eq!(c.graph, bridge_trusted(&k4, 0, &k4, 3, m).unwrap());
            assert!(crate::canon::are_isomorphic(&c.graph, &prism()).unwrap());
            assert_eq!(validate(&c.graph, &c.decomposition), Ok(()));
            assert_eq!(width(&c.decomposition).unwrap(), 3);
            // Full bags hold all three neighbors on both sides.
            assert_eq!(c.case, CombineCase::TwoMatched);
        }
    }

    #[test]
    fn one_matched_case() {
        // Rim 0-1-2-3, hub 4; vertex 0 never shares a bag with all its
        // neighbors.
        let w = wheel(5).unwrap();
        let d = TreeDecomposition::new(vec![vec![0, 1, 2, 4], vec![0, 2, 3, 4]], vec![(0, 1)]);
        assert_eq!(validate(&w, &d), Ok(()));
        assert_eq!(
            combine_decompositions_bridge(&w, &d, 0, &w, &d, 0, Matching::new([1, 0, 2]).unwrap())
                .unwrap()
                .case,
            CombineCase::OneMatched
        );
        let mut seen_one = false;
        for v1 in 0..4 {
            for v2 in 0..4 {
                for m in Matching::all() {
                    let c = combine_decompositions_bridge(&w, &d, v1, &w, &d, v2, m).unwrap();
                    assert_eq!(validate(&c.graph, &c.decomposition), Ok(()));
                    assert_eq!(width(&c.decomposition).unwrap(), 3);
                    seen_one |= c.case == CombineCase::OneMatched;
                }
            }
        }
        assert!(seen_one);
    }

    #[test]
    fn width_hypothesis() {
        let k4 = complete_graph(4).unwrap();
        let d = TreeDecomposition::trivial(&k4);
        let thin = TreeDecomposition::new(vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], vec![(0, 1), (1, 2), (2, 3)]);
        assert!(combine_decompositions_bridge(&k4, &thin, 0, &k4, &d, 0, Matching::IDENTITY).is_err());
    }
}
