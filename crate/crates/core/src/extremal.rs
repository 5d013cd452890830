//! Extremal uniformly 3-connected graphs: the minimum-degree bound, the
//! operation profiles that attain it, random generation and exhaustive
//! enumeration.
//!
//! A graph built from K4 bases by `j` bridges, `t` edge joins, `p` primary
//! and `s` secondary spokes has `n = 4 + 2j + 2t + p + s` vertices and
//! exactly `n - p` vertices of degree 3. Since `p <= j + 1`, the number of
//! degree-3 vertices is at least `ceil((2n + 2) / 3)`, and the graphs
//! attaining that are the ones with `p = floor((n - 2) / 3)`.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form_with_budget, DEFAULT_CANON_BUDGET};
use crate::connectivity::{check_uniformly_k_connected, is_regular, nu};
use crate::constructions::{
    bridge_trusted, degree3_vertices, edge_join_sites, edge_join_trusted, spoke_sites,
    spoke_trusted, Matching, OperationCounts, OperationKind, Recipe, RecipeBuilder,
};
use crate::error::{check_budget, Error, Result};
use crate::generators::complete_graph;
use crate::graph::{bit, Graph};
use crate::graph6::Graph6;

/// Largest `n` accepted by [`enumerate_extremal`].
pub const ENUMERATION_BUDGET: usize = 13;

fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        Err(Error::InvalidArgument(format!("need n >= 4, got {n}")))
    } else {
        Ok(())
    }
}

/// `ceil((2n + 2) / 3)`: the least possible number of degree-3 vertices.
pub fn extremal_bound(n: usize) -> Result<usize> {
    check_n(n)?;
    Ok((2 * n + 2).div_ceil(3))
}

/// `ceil(((k - 1) n + 2k) / (2k - 1))`, the bound for minimally
/// k-connected graphs.
pub fn mader_bound(n: usize, k: usize) -> Result<usize> {
    if k < 1 || n < k + 1 {
        return Err(Error::InvalidArgument(format!("need n >= k + 1 >= 2, got n={n}, k={k}")));
    }
    Ok(((k - 1) * n + 2 * k).div_ceil(2 * k - 1))
}

/// Whether `nu(G)` meets [`extremal_bound`]. `g` must be uniformly
/// 3-connected.
pub fn is_extremal(g: &Graph) -> Result<bool> {
    check_uniformly_k_connected(g, 3)
        .map_err(|e| Error::precondition(format!("not uniformly 3-connected: {e:?}")))?;
    Ok(nu(g)? == extremal_bound(g.n())?)
}

/// `n = 3k + ell` with `ell` in `{-1, 0, 1}`, and the operation counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OperationProfile {
    pub n: usize,
    pub k: usize,
    pub ell: i32,
    pub j: usize,
    pub t: usize,
    pub p: usize,
    pub s: usize,
}

impl OperationProfile {
    pub fn new(n: usize, counts: OperationCounts) -> OperationProfile {
        let k = (n + 1) / 3;
        OperationProfile {
            n,
            k,
            ell: n as i32 - 3 * k as i32,
            j: counts.j,
            t: counts.t,
            p: counts.p,
            s: counts.s,
        }
    }

    pub fn counts(&self) -> OperationCounts {
        OperationCounts::new(self.j, self.t, self.p, self.s)
    }

    /// `n = 4 + 2j + 2t + p + s`.
    pub fn satisfies_count_identity(&self) -> bool {
        self.n == self.counts().vertex_count_from_k4()
    }
}

/// Profiles of extremal graphs on `n >= 5` vertices, `n = 3k + ell`:
/// `p = k - 1` always, and
/// `ell = -1`: `j = k - 2, t = s = 0`;
/// `ell = 0`: `j = k - 2, t = 0, s = 1`;
/// `ell = 1`: `(j, t, s)` is `(k - 1, 0, 0)`, `(k - 2, 1, 0)` or `(k - 2, 0, 2)`.
pub fn feasible_profiles(n: usize) -> Result<Vec<OperationProfile>> {
    if n < 5 {
        return Err(Error::InvalidArgument(format!("need n >= 5, got {n}")));
    }
    let k = (n + 1) / 3;
    let ell = n as i32 - 3 * k as i32;
    let c = |j, t, s| OperationProfile::new(n, OperationCounts::new(j, t, k - 1, s));
    Ok(match ell {
        -1 => vec![c(k - 2, 0, 0)],
        0 => vec![c(k - 2, 0, 1)],
        _ => vec![c(k - 1, 0, 0), c(k - 2, 1, 0), c(k - 2, 0, 2)],
    })
}

/// Every `(j, t, p, s)` with `n = 4 + 2j + 2t + p + s`, `p <= j + 1` and `p`
/// at its maximum `floor((n - 2) / 3)`, by direct search.
pub fn profiles_by_search(n: usize) -> Result<Vec<OperationProfile>> {
    check_n(n)?;
    let p = (n - 2) / 3;
    let mut out = Vec::new();
    for j in 0..=n {
        for t in 0..=n {
            for s in 0..=n {
                let c = OperationCounts::new(j, t, p, s);
                if c.vertex_count_from_k4() == n && p <= j + 1 {
                    out.push(OperationProfile::new(n, c));
                }
            }
        }
    }
    out.sort_by_key(|pr| std::cmp::Reverse(pr.j));
    Ok(out)
}

/// The profiles in which extremal graphs on `n` vertices occur: for `n = 4`
/// only the empty profile, otherwise [`feasible_profiles`].
fn target_profiles(n: usize) -> Result<Vec<OperationProfile>> {
    if n == 4 {
        Ok(vec![OperationProfile::new(4, OperationCounts::default())])
    } else {
        feasible_profiles(n)
    }
}

/// A random extremal graph on `n` vertices and its recipe, with the profile
/// drawn uniformly from the feasible ones.
pub fn generate_extremal(n: usize, seed: u64) -> Result<(Graph, Recipe)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let profile = *target_profiles(n)?.choose(&mut rng).unwrap();
    assemble(profile, &mut rng)
}

/// Like [`generate_extremal`] with a fixed profile, which must be feasible
/// for its `n`.
pub fn generate_extremal_with_profile(profile: OperationProfile, seed: u64) -> Result<(Graph, Recipe)> {
    check_n(profile.n)?;
    if !target_profiles(profile.n)?.contains(&profile) {
        return Err(Error::InvalidArgument(format!(
            "profile j={}, t={}, p={}, s={} is not feasible for n={}",
            profile.j, profile.t, profile.p, profile.s, profile.n
        )));
    }
    assemble(profile, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Builds `j + 1` blocks from K4 and bridges them in random order. Every
/// block takes one primary spoke except one block when `p = j`; the edge
/// join (if any) and the secondary spokes go to random blocks, with the
/// edge join placed before that block's primary spoke.
fn assemble(profile: OperationProfile, rng: &mut ChaCha8Rng) -> Result<(Graph, Recipe)> {
    let OperationProfile { j, t, p, s, .. } = profile;
    let blocks = j + 1;
    let mut primary = vec![false; blocks];
    primary[..p].fill(true);
    primary.shuffle(rng);
    let mut joins = vec![0usize; blocks];
    for _ in 0..t {
        joins[rng.random_range(0..blocks)] += 1;
    }
    // Secondary spokes need a vertex of degree above 3, so only blocks with
    // a primary spoke can take them.
    let with_primary: Vec<usize> = (0..blocks).filter(|&b| primary[b]).collect();
    let mut secondary = vec![0usize; blocks];
    for _ in 0..s {
        secondary[*with_primary.choose(rng).ok_or_else(|| Error::invariant("no block for a secondary spoke"))?] += 1;
    }

    let k4 = complete_graph(4)?;
    let mut b = RecipeBuilder::trusted();
    for blk in 0..blocks {
        let slot = b.base(k4.clone())?;
        for _ in 0..joins[blk] {
            let g = b.graph(slot).unwrap();
            let &(mut st, mut vw) = edge_join_sites(g).choose(rng).unwrap();
            if rng.random_bool(0.5) {
                std::mem::swap(&mut st, &mut vw);
            }
            b.edge_join(st, vw)?;
        }
        if primary[blk] {
            let &(v, w, x) = spoke_sites(b.graph(slot).unwrap()).choose(rng).unwrap();
            b.spoke(v, w, x)?;
        }
        for _ in 0..secondary[blk] {
            let &(v, w, x) = spoke_sites(b.graph(slot).unwrap()).choose(rng).unwrap();
            b.spoke(v, w, x)?;
        }
    }
    while b.live_slots().len() > 1 {
        let live = b.live_slots();
        let pair: Vec<usize> = live.choose_multiple(rng, 2).copied().collect();
        let v1 = *degree3_vertices(b.graph(pair[0]).unwrap()).choose(rng).unwrap();
        let v2 = *degree3_vertices(b.graph(pair[1]).unwrap()).choose(rng).unwrap();
        let m = *Matching::all().choose(rng).unwrap();
        b.bridge(pair[0], v1, pair[1], v2, m)?;
    }
    let (rep, recipe) = b.finish()?;
    if recipe.counts != profile.counts() {
        return Err(Error::invariant(format!(
            "assembled counts {} differ from requested profile",
            recipe.counts
        )));
    }
    Ok((rep.graph, recipe))
}

/// Canonical graph6 texts per profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalEnumeration {
    pub n: usize,
    pub by_profile: BTreeMap<OperationProfile, BTreeSet<Graph6>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCount {
    pub j: usize,
    pub t: usize,
    pub p: usize,
    pub s: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationManifest {
    pub n: usize,
    pub k: usize,
    pub ell: i32,
    pub profiles: Vec<ProfileCount>,
    pub bound: usize,
    /// Distinct graphs over all profiles; a graph may have recipes with
    /// different profiles.
    pub total: usize,
}

impl ExtremalEnumeration {
    /// Union over all profiles.
    pub fn all(&self) -> BTreeSet<Graph6> {
        self.by_profile.values().flatten().cloned().collect()
    }

    pub fn manifest(&self) -> EnumerationManifest {
        let k = (self.n + 1) / 3;
        EnumerationManifest {
            n: self.n,
            k,
            ell: self.n as i32 - 3 * k as i32,
            profiles: self
                .by_profile
                .iter()
                .map(|(pr, set)| ProfileCount {
                    j: pr.j,
                    t: pr.t,
                    p: pr.p,
                    s: pr.s,
                    count: set.len(),
                })
                .collect(),
            bound: extremal_bound(self.n).unwrap(),
            total: self.all().len(),
        }
    }
}

fn canon(g: &Graph) -> Result<Graph6> {
    Ok(canonical_form_with_budget(g, DEFAULT_CANON_BUDGET)?.graph6)
}

/// Every extremal graph on `n <= 13` vertices obtainable from K4 bases, up to
/// isomorphism, grouped by profile.
///
/// Works bottom-up over count vectors `(j, t, p, s)`: the graphs with a
/// given count vector are the unary images (edge join or primary spoke of
/// a 3-regular graph, secondary spoke of a graph with exactly one vertex of
/// higher degree) of graphs one step smaller, plus all bridges, at every
/// pair of degree-3 vertices and all six matchings, of graphs whose count
/// vectors sum to one bridge less. Only count vectors below some feasible
/// profile are visited. Since each recipe ends in a unary step or a bridge
/// and every site is tried, this covers every interleaving of steps.
pub fn enumerate_extremal(n: usize) -> Result<ExtremalEnumeration> {
    check_n(n)?;
    check_budget("enumeration", n, ENUMERATION_BUDGET)?;
    let targets = target_profiles(n)?;
    let tc: Vec<OperationCounts> = targets.iter().map(|p| p.counts()).collect();
    let below = |c: &OperationCounts| tc.iter().any(|f| c.j <= f.j && c.t <= f.t && c.p <= f.p && c.s <= f.s);

    let mut order: Vec<OperationCounts> = Vec::new();
    let maxc = |f: fn(&OperationCounts) -> usize| tc.iter().map(f).max().unwrap();
    for j in 0..=maxc(|c| c.j) {
        for t in 0..=maxc(|c| c.t) {
            for p in 0..=maxc(|c| c.p) {
                for s in 0..=maxc(|c| c.s) {
                    let c = OperationCounts::new(j, t, p, s);
                    if below(&c) && p <= j + 1 {
                        order.push(c);
                    }
                }
            }
        }
    }
    order.sort_by_key(|c| (c.vertex_count_from_k4(), *c));

    let mut states: BTreeMap<OperationCounts, Vec<Graph>> = BTreeMap::new();
    for c in order {
        let set = if c == OperationCounts::default() {
            BTreeSet::from([canon(&complete_graph(4)?)?])
        } else {
            grow(&states, c)?
        };
        let graphs: Vec<Graph> = set.iter().map(Graph6::to_graph).collect();
        states.insert(c, graphs);
    }

    let mut by_profile = BTreeMap::new();
    for pr in targets {
        let set: BTreeSet<Graph6> = states[&pr.counts()].iter().map(canon).collect::<Result<_>>()?;
        by_profile.insert(pr, set);
    }
    Ok(ExtremalEnumeration { n, by_profile })
}

fn grow(states: &BTreeMap<OperationCounts, Vec<Graph>>, c: OperationCounts) -> Result<BTreeSet<Graph6>> {
    let mut found: Vec<Graph6> = Vec::new();
    let prev = |dj, dt, dp, ds| {
        let (j, t, p, s) = (c.j.checked_sub(dj)?, c.t.checked_sub(dt)?, c.p.checked_sub(dp)?, c.s.checked_sub(ds)?);
        states.get(&OperationCounts::new(j, t, p, s))
    };
    let unary = |graphs: &Vec<Graph>, kind: OperationKind| -> Result<Vec<Graph6>> {
        let per: Vec<Vec<Graph6>> = graphs
            .par_iter()
            .map(|g| -> Result<Vec<Graph6>> {
                let mut out = Vec::new();
                match kind {
                    OperationKind::EdgeJoin if is_regular(g, 3) => {
                        for (st, vw) in edge_join_sites(g) {
                            out.push(canon(&edge_join_trusted(g, st, vw)?)?);
                        }
                    }
                    OperationKind::PrimarySpoke | OperationKind::SecondarySpoke => {
                        for (v, w, x) in spoke_sites(g) {
                            let (h, k) = spoke_trusted(g, v, w, x)?;
                            if k == kind {
                                out.push(canon(&h)?);
                            }
                        }
                    }
                    _ => {}
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(per.into_iter().flatten().collect())
    };
    if let Some(gs) = prev(0, 1, 0, 0) {
        found.extend(unary(gs, OperationKind::EdgeJoin)?);
    }
    if let Some(gs) = prev(0, 0, 1, 0) {
        found.extend(unary(gs, OperationKind::PrimarySpoke)?);
    }
    if let Some(gs) = prev(0, 0, 0, 1) {
        found.extend(unary(gs, OperationKind::SecondarySpoke)?);
    }
    if c.j > 0 {
        for (c1, left) in states.range(..) {
            let c2 = (|| {
                Some(OperationCounts::new(
                    (c.j - 1).checked_sub(c1.j)?,
                    c.t.checked_sub(c1.t)?,
                    c.p.checked_sub(c1.p)?,
                    c.s.checked_sub(c1.s)?,
                ))
            })();
            let Some(c2) = c2 else { continue };
            // Bridging is symmetric; take each unordered pair of states once.
            if c2 < *c1 {
                continue;
            }
            let Some(right) = states.get(&c2) else { continue };
            let pairs: Vec<(&Graph, &Graph)> =
                left.iter().flat_map(|a| right.iter().map(move |b| (a, b))).collect();
            let per: Vec<Vec<Graph6>> = pairs
                .par_iter()
                .map(|&(a, b)| -> Result<Vec<Graph6>> {
                    let mut out = Vec::new();
                    for v1 in degree3_vertices(a) {
                        for v2 in degree3_vertices(b) {
                            for m in Matching::all() {
                                out.push(canon(&bridge_trusted(a, v1, b, v2, m)?)?);
                            }
                        }
                    }
                    Ok(out)
                })
                .collect::<Result<_>>()?;
            found.extend(per.into_iter().flatten());
        }
    }
    Ok(found.into_iter().collect())
}

/// Every uniformly 3-connected graph on `n` vertices up to isomorphism, by
/// testing all `2^(n(n-1)/2)` labeled graphs. Only practical for `n <= 7`.
pub fn brute_force_uniform3(n: usize) -> Result<BTreeSet<Graph6>> {
    check_budget("brute force", n, 7)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let total: u64 = 1 << pairs.len();
    let per: Vec<BTreeSet<Graph6>> = (0..total)
        .into_par_iter()
        .fold(BTreeSet::new, |mut acc, mask| {
            let mut adj = vec![0u64; n];
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    adj[a] |= bit(b);
                    adj[b] |= bit(a);
                }
            }
            if adj.iter().all(|m| m.count_ones() >= 3) {
                let g = Graph::from_adjacency(adj);
                if check_uniformly_k_connected(&g, 3).is_ok() {
                    acc.insert(canon(&g).expect("n <= 7 is within the canonical budget"));
                }
            }
            acc
        })
        .collect();
    Ok(per.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_uniformly_k_connected;
    use crate::constructions::replay;
    use crate::generators::wheel;

    #[test]
    fn bounds() {
        assert_eq!(extremal_bound(4).unwrap(), 4);
        assert_eq!(extremal_bound(5).unwrap(), 4);
        assert_eq!(extremal_bound(10).unwrap(), 8);
        assert!(extremal_bound(3).is_err());
        assert_eq!(mader_bound(10, 3).unwrap(), 6);
        assert_eq!(mader_bound(4, 3).unwrap(), 3);
        assert!(mader_bound(3, 3).is_err());
        for n in 4..=60 {
            assert!(extremal_bound(n).unwrap() >= mader_bound(n, 3).unwrap());
        }
    }

    #[test]
    fn extremality() {
        assert!(is_extremal(&complete_graph(4).unwrap()).unwrap());
        assert!(is_extremal(&wheel(5).unwrap()).unwrap());
        assert!(!is_extremal(&wheel(10).unwrap()).unwrap());
        assert!(is_extremal(&crate::generators::cycle(5).unwrap()).is_err());
    }

    #[test]
    fn profile_table() {
        let sorted = |mut v: Vec<OperationProfile>| {
            v.sort();
            v
        };
        for n in 5..=40 {
            let closed = feasible_profiles(n).unwrap();
            assert!(closed.iter().all(|p| p.satisfies_count_identity() && p.p <= p.j + 1));
            assert_eq!(sorted(closed), sorted(profiles_by_search(n).unwrap()), "n={n}");
        }
        let ten: Vec<(usize, usize, usize, usize)> =
            feasible_profiles(10).unwrap().iter().map(|p| (p.j, p.t, p.p, p.s)).collect();
        assert_eq!(ten, [(2, 0, 2, 0), (1, 1, 2, 0), (1, 0, 2, 2)]);
        assert_eq!(feasible_profiles(5).unwrap()[0].counts(), OperationCounts::new(0, 0, 1, 0));
        assert_eq!(feasible_profiles(6).unwrap()[0].counts(), OperationCounts::new(0, 0, 1, 1));
        let p = feasible_profiles(8).unwrap()[0];
        assert_eq!((p.k, p.ell), (3, -1));
    }

    #[test]
    fn generation() {
        for n in 4..=13 {
            for seed in 0..10 {
                let (g, recipe) = generate_extremal(n, seed).unwrap();
                assert_eq!(g.n(), n);
                assert!(is_extremal(&g).unwrap(), "n={n} seed={seed}");
                assert_eq!(replay(&recipe).unwrap().graph, g);
                assert_eq!(nu(&g).unwrap(), n - recipe.counts.p);
            }
        }
        assert_eq!(generate_extremal(7, 1).unwrap(), generate_extremal(7, 1).unwrap());
    }

    #[test]
    fn fixed_profile() {
        let pr = OperationProfile::new(8, OperationCounts::new(1, 0, 2, 0));
        let (g, _) = generate_extremal_with_profile(pr, 0).unwrap();
        assert!(is_uniformly_k_connected(&g, 3));
        let bad = OperationProfile::new(8, OperationCounts::new(0, 1, 2, 0));
        assert!(generate_extremal_with_profile(bad, 0).is_err());
    }

    #[test]
    fn small_enumerations() {
        let e4 = enumerate_extremal(4).unwrap();
        assert_eq!(e4.all(), BTreeSet::from([canon(&complete_graph(4).unwrap()).unwrap()]));
        let e5 = enumerate_extremal(5).unwrap();
        assert_eq!(e5.all(), BTreeSet::from([canon(&wheel(5).unwrap()).unwrap()]));
        let e6 = enumerate_extremal(6).unwrap();
        assert_eq!(e6.all(), BTreeSet::from([canon(&wheel(6).unwrap()).unwrap()]));
        let m = e6.manifest();
        assert_eq!((m.k, m.ell, m.bound, m.total), (2, 0, 5, 1));
        assert!(enumerate_extremal(14).unwrap_err().is_budget());
    }

    #[test]
    fn brute_force_small() {
        let five = brute_force_uniform3(5).unwrap();
        assert_eq!(five, BTreeSet::from([canon(&wheel(5).unwrap()).unwrap()]));
        assert_eq!(nu(&five.first().unwrap().to_graph()).unwrap(), 4);
    }
}
