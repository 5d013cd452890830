//! Planarity with Kuratowski witnesses, and deciding crossing number at
//! most one.
//!
//! Planarity is tested block by block with the path-addition algorithm of
//! Demoucron, Malgrange and Pertuiset: embed a cycle, then repeatedly embed
//! a path of some fragment into a face that holds all its attachments,
//! preferring fragments with a single admissible face. A fragment with no
//! admissible face proves the block nonplanar.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::constructions::{bridge, Matching};
use crate::error::{check_budget, Error, Result};
use crate::graph::{bit, bits, Edge, Graph, VertexId};

/// Largest graph [`crossing_le_one`] accepts.
pub const CROSSING_BUDGET: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 contained in the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    /// Vertices of degree above 2 in the subdivision.
    pub branch_vertices: Vec<VertexId>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Planarity {
    Planar,
    NonPlanar(KuratowskiWitness),
}

pub fn is_planar(g: &Graph) -> bool {
    planar_masks(g.adjacency_masks())
}

/// Planarity decision with a Kuratowski subdivision on failure.
///
/// The witness is found by deleting edges in order whenever the rest stays
/// nonplanar; what survives is edge-minimal nonplanar, hence a subdivision
/// of K5 or K3,3.
pub fn planarity(g: &Graph) -> Result<Planarity> {
    if is_planar(g) {
        return Ok(Planarity::Planar);
    }
    let mut adj = g.adjacency_masks().to_vec();
    for e in g.edges() {
        let (a, b) = e.endpoints();
        adj[a] &= !bit(b);
        adj[b] &= !bit(a);
        if planar_masks(&adj) {
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
    }
    let h = Graph::from_adjacency(adj);
    let branch: Vec<VertexId> = h.vertices().filter(|&v| h.degree(v) > 2).collect();
    let degs: Vec<usize> = branch.iter().map(|&v| h.degree(v)).collect();
    let kind = match (branch.len(), degs.iter().all(|&d| d == degs[0])) {
        (5, true) if degs[0] == 4 => KuratowskiKind::K5,
        (6, true) if degs[0] == 3 => KuratowskiKind::K33,
        _ => {
            return Err(Error::invariant(format!(
                "minimal nonplanar subgraph has branch degrees {degs:?}"
            )))
        }
    };
    Ok(Planarity::NonPlanar(KuratowskiWitness {
        kind,
        branch_vertices: branch,
        edges: h.edges().to_vec(),
    }))
}

fn planar_masks(adj: &[u64]) -> bool {
    let n = adj.iter().filter(|&&m| m != 0).count();
    let m: usize = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    if m < 9 {
        // K3,3 has 9 edges and K5 has 10.
        return true;
    }
    blocks(adj).into_iter().all(|b| block_planar(&b))
}

/// Edge sets of the biconnected components, as adjacency masks.
fn blocks(adj: &[u64]) -> Vec<Vec<u64>> {
    struct Dfs<'a> {
        adj: &'a [u64],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<u64>>,
    }
    impl Dfs<'_> {
        fn run(&mut self, u: usize, parent: Option<usize>) {
            self.time += 1;
            self.disc[u] = self.time;
            self.low[u] = self.time;
            for w in bits(self.adj[u]) {
                if self.disc[w] == 0 {
                    self.stack.push((u, w));
                    self.run(w, Some(u));
                    self.low[u] = self.low[u].min(self.low[w]);
                    if self.low[w] >= self.disc[u] {
                        let mut block = vec![0u64; self.adj.len()];
                        while let Some((a, b)) = self.stack.pop() {
                            block[a] |= bit(b);
                            block[b] |= bit(a);
                            if (a, b) == (u, w) {
                                break;
                            }
                        }
                        self.out.push(block);
                    }
                } else if Some(w) != parent && self.disc[w] < self.disc[u] {
                    self.stack.push((u, w));
                    self.low[u] = self.low[u].min(self.disc[w]);
                }
            }
        }
    }
    let n = adj.len();
    let mut d = Dfs {
        adj,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if d.disc[v] == 0 && adj[v] != 0 {
            d.run(v, None);
        }
    }
    d.out
}

/// Vertices on a shortest `from`-`to` path inside `allowed`, both ends
/// included.
fn bfs_path(adj: &[u64], from: usize, to: usize, allowed: u64) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    let mut seen = bit(from);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut x = to;
            while x != from {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for w in bits(adj[u] & allowed & !seen) {
            seen |= bit(w);
            prev[w] = u;
            queue.push_back(w);
        }
    }
    None
}

fn block_planar(adj: &[u64]) -> bool {
    let verts: u64 = adj.iter().enumerate().filter(|(_, &m)| m != 0).fold(0, |a, (v, _)| a | bit(v));
    let n = verts.count_ones() as usize;
    let m: usize = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
    if n < 5 || m < 9 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }

    // Initial cycle: an edge plus a path avoiding it.
    let u = verts.trailing_zeros() as usize;
    let v = adj[u].trailing_zeros() as usize;
    let mut minus = adj.to_vec();
    minus[u] &= !bit(v);
    minus[v] &= !bit(u);
    let cycle = bfs_path(&minus, u, v, verts).expect("blocks with 3+ vertices have cycles");

    let mut emb = vec![0u64; adj.len()];
    let mut in_h = 0u64;
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        emb[a] |= bit(b);
        emb[b] |= bit(a);
        in_h |= bit(a);
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.into_iter().rev().collect()];
    let mut embedded = faces[0].len();

    while embedded < m {
        let face_masks: Vec<u64> = faces.iter().map(|f| f.iter().fold(0, |a, &x| a | bit(x))).collect();
        // (attachments, path-finder input) per fragment
        let mut fragments: Vec<(u64, Option<u64>, (usize, usize))> = Vec::new();
        for a in bits(in_h) {
            for b in bits(adj[a] & in_h & !emb[a]) {
                if a < b {
                    fragments.push((bit(a) | bit(b), None, (a, b)));
                }
            }
        }
        let mut rest = verts & !in_h;
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for x in bits(frontier) {
                    next |= adj[x];
                }
                next &= rest & !comp;
                comp |= next;
                frontier = next;
            }
            rest &= !comp;
            let attach = bits(comp).fold(0, |a, x| a | adj[x]) & in_h;
            fragments.push((attach, Some(comp), (0, 0)));
        }

        let mut choice: Option<(usize, usize)> = None;
        for (i, &(attach, _, _)) in fragments.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&f| face_masks[f] & attach == attach).collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face) = choice.expect("unembedded edges leave a fragment");
        let (attach, comp, direct) = fragments[fi];
        let path = match comp {
            None => vec![direct.0, direct.1],
            Some(comp) => {
                let a = attach.trailing_zeros() as usize;
                let others = attach & !bit(a);
                let c = (adj[a] & comp).trailing_zeros() as usize;
                let end = bits(comp)
                    .filter(|&x| adj[x] & others != 0)
                    .min_by_key(|&x| bfs_path(adj, c, x, comp).map_or(usize::MAX, |p| p.len()))
                    .expect("biconnected fragment has two attachments");
                let inner = bfs_path(adj, c, end, comp).unwrap();
                let b = (adj[end] & others).trailing_zeros() as usize;
                let mut p = vec![a];
                p.extend(inner);
                p.push(b);
                p
            }
        };

        for w in path.windows(2) {
            emb[w[0]] |= bit(w[1]);
            emb[w[1]] |= bit(w[0]);
        }
        embedded += path.len() - 1;
        for &x in &path {
            in_h |= bit(x);
        }
        let f = std::mem::take(&mut faces[face]);
        let (a, b) = (path[0], *path.last().unwrap());
        let ia = f.iter().position(|&x| x == a).unwrap();
        let ib = f.iter().position(|&x| x == b).unwrap();
        let walk = |from: usize, to: usize| -> Vec<usize> {
            let mut out = vec![f[from]];
            let mut i = from;
            while i != to {
                i = (i + 1) % f.len();
                out.push(f[i]);
            }
            out
        };
        let interior = &path[1..path.len() - 1];
        let mut f1 = walk(ia, ib);
        f1.extend(interior.iter().rev());
        let mut f2 = walk(ib, ia);
        f2.extend(interior.iter());
        faces[face] = f1;
        faces.push(f2);
    }
    true
}

/// Replaces independent edges `e = ab` and `f = cd` by a new vertex
/// `z = n` adjacent to `a, b, c, d`: the drawing crossing of `e` and `f`
/// becomes a vertex.
pub fn planarize_pair(g: &Graph, e: Edge, f: Edge) -> Result<Graph> {
    if e.touches(f) {
        return Err(Error::InvalidArgument(format!("edges {e} and {f} share an endpoint")));
    }
    let h = g.delete_edge(e.u(), e.v())?.delete_edge(f.u(), f.v())?;
    let mut adj = h.add_vertices(1)?.adjacency_masks().to_vec();
    let z = g.n();
    for x in [e.u(), e.v(), f.u(), f.v()] {
        adj[x] |= bit(z);
        adj[z] |= bit(x);
    }
    Ok(Graph::from_adjacency(adj))
}

/// Crossing number class: 0, 1, or at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingCertificate {
    Planar,
    /// Drawing with exactly `pair` crossing is planar after
    /// [`planarize_pair`].
    OneCrossing { pair: (Edge, Edge) },
    AtLeastTwo,
}

impl CrossingCertificate {
    /// 0, 1 or 2.
    pub fn rank(&self) -> usize {
        match self {
            CrossingCertificate::Planar => 0,
            CrossingCertificate::OneCrossing { .. } => 1,
            CrossingCertificate::AtLeastTwo => 2,
        }
    }

    pub fn kind_str(&self) -> &'static str {
        match self {
            CrossingCertificate::Planar => "planar",
            CrossingCertificate::OneCrossing { .. } => "one",
            CrossingCertificate::AtLeastTwo => "ge2",
        }
    }

    /// Re-checks the certificate against `g`: planarity for `Planar`, the
    /// planarization for `OneCrossing`, and a full pair sweep for
    /// `AtLeastTwo`.
    pub fn verify(&self, g: &Graph) -> Result<bool> {
        Ok(match *self {
            CrossingCertificate::Planar => is_planar(g),
            CrossingCertificate::OneCrossing { pair: (e, f) } => {
                !is_planar(g) && is_planar(&planarize_pair(g, e, f)?)
            }
            CrossingCertificate::AtLeastTwo => {
                !is_planar(g) && first_planarizing_pair(g)?.is_none()
            }
        })
    }
}

impl fmt::Display for CrossingCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossingCertificate::OneCrossing { pair: (a, b) } => write!(f, "one ({a} x {b})"),
            other => f.write_str(other.kind_str()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    crossing: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pair: Option<[[VertexId; 2]; 2]>,
}

impl Serialize for CrossingCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pair = match self {
            CrossingCertificate::OneCrossing { pair: (e, f) } => Some([[e.u(), e.v()], [f.u(), f.v()]]),
            _ => None,
        };
        CertificateJson {
            crossing: self.kind_str().to_string(),
            pair,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CrossingCertificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CertificateJson::deserialize(d)?;
        match (raw.crossing.as_str(), raw.pair) {
            ("planar", None) => Ok(CrossingCertificate::Planar),
            ("ge2", None) => Ok(CrossingCertificate::AtLeastTwo),
            ("one", Some([[a, b], [c, e]])) => {
                let e1 = Edge::try_new(a, b).map_err(D::Error::custom)?;
                let e2 = Edge::try_new(c, e).map_err(D::Error::custom)?;
                Ok(CrossingCertificate::OneCrossing { pair: (e1, e2) })
            }
            (kind, _) => Err(D::Error::custom(format!("bad crossing certificate {kind:?}"))),
        }
    }
}

fn first_planarizing_pair(g: &Graph) -> Result<Option<(Edge, Edge)>> {
    let es = g.edges();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            if !es[i].touches(es[j]) && is_planar(&planarize_pair(g, es[i], es[j])?) {
                return Ok(Some((es[i], es[j])));
            }
        }
    }
    Ok(None)
}

/// Planar, else the first independent edge pair (in edge order) whose
/// planarization is planar, else at least two crossings.
pub fn crossing_le_one(g: &Graph) -> Result<CrossingCertificate> {
    check_budget("crossing sweep", g.n(), CROSSING_BUDGET)?;
    if is_planar(g) {
        return Ok(CrossingCertificate::Planar);
    }
    Ok(match first_planarizing_pair(g)? {
        Some(pair) => CrossingCertificate::OneCrossing { pair },
        None => CrossingCertificate::AtLeastTwo,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subadditivity {
    /// The bridge's class is at most the sum of the inputs' classes.
    Holds {
        left: CrossingCertificate,
        right: CrossingCertificate,
        bridged: CrossingCertificate,
    },
    Violated {
        left: CrossingCertificate,
        right: CrossingCertificate,
        bridged: CrossingCertificate,
    },
    /// An input has crossing number 2 or more, which this module cannot
    /// pin down.
    Indeterminate,
}

impl Subadditivity {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Subadditivity::Holds { .. } => Some(true),
            Subadditivity::Violated { .. } => Some(false),
            Subadditivity::Indeterminate => None,
        }
    }
}

/// Checks `cr(bridge) <= cr(G1) + cr(G2)` within the classes 0, 1, 2+.
pub fn check_bridge_crossing_subadditivity(
    g1: &Graph,
    v1: VertexId,
    g2: &Graph,
    v2: VertexId,
    matching: Matching,
) -> Result<Subadditivity> {
    let bridged_graph = bridge(g1, v1, g2, v2, matching)?;
    let left = crossing_le_one(g1)?;
    let right = crossing_le_one(g2)?;
    if left.rank() == 2 || right.rank() == 2 {
        return Ok(Subadditivity::Indeterminate);
    }
    let bridged = crossing_le_one(&bridged_graph)?;
    Ok(if bridged.rank() <= left.rank() + right.rank() {
        Subadditivity::Holds { left, right, bridged }
    } else {
        Subadditivity::Violated { left, right, bridged }
    })
}
