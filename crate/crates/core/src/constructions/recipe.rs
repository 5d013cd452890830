//! Executable construction traces.
//!
//! A recipe is a small program over numbered *slots*. `BASE` opens a new slot
//! holding a 3-regular 3-connected graph; `SPOKE` and `JOIN` rewrite the most
//! recently opened slot in place; `BRIDGE i v1 j v2 m0 m1 m2` consumes slots
//! `i` and `j` and opens a new slot with their bridge. Slots are numbered in
//! opening order and never reused. A complete recipe leaves exactly one live
//! slot, the result.
//!
//! Text form, one step per line (`#` comments and blank lines ignored):
//!
//! ```text
//! BASE <graph6>
//! BRIDGE <i> <v1> <j> <v2> <m0> <m1> <m2>
//! SPOKE <v> <w> <x>
//! JOIN <s> <t> <v> <w>
//! ```

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::ops::{
    bridge_trusted, edge_join_trusted, spoke_trusted, BridgeLayout, Matching, OperationKind,
};
use crate::connectivity::{check_uniformly_k_connected, is_k_connected, is_regular};
use crate::error::{Error, Result};
use crate::generators::complete_graph;
use crate::graph::{Edge, Graph, VertexId};
use crate::graph6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Base(Graph),
    Bridge {
        left: usize,
        v1: VertexId,
        right: usize,
        v2: VertexId,
        matching: Matching,
    },
    Spoke {
        v: VertexId,
        w: VertexId,
        x: VertexId,
    },
    EdgeJoin {
        st: Edge,
        vw: Edge,
    },
}

/// Numbers of bridges (`j`), edge joins (`t`), primary spokes (`p`) and
/// secondary spokes (`s`).
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct OperationCounts {
    pub j: usize,
    pub t: usize,
    pub p: usize,
    pub s: usize,
}

impl OperationCounts {
    pub fn new(j: usize, t: usize, p: usize, s: usize) -> OperationCounts {
        OperationCounts { j, t, p, s }
    }

    fn record(&mut self, kind: OperationKind) {
        match kind {
            OperationKind::Bridge => self.j += 1,
            OperationKind::EdgeJoin => self.t += 1,
            OperationKind::PrimarySpoke => self.p += 1,
            OperationKind::SecondarySpoke => self.s += 1,
        }
    }

    /// Vertex count of any graph built with these counts from K4 bases.
    pub fn vertex_count_from_k4(&self) -> usize {
        4 + 2 * self.j + 2 * self.t + self.p + self.s
    }
}

impl fmt::Display for OperationCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "j={},t={},p={},s={}", self.j, self.t, self.p, self.s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    pub steps: Vec<Step>,
    /// Claimed counts; [`replay`] recomputes and compares them.
    pub counts: OperationCounts,
}

/// What one applied step did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppliedStep {
    /// `None` for `BASE`.
    pub kind: Option<OperationKind>,
    /// Slot written by the step.
    pub slot: usize,
    pub vertices_after: usize,
    /// Renumbering of the two consumed slots, for bridges.
    pub layout: Option<BridgeLayout>,
}

#[derive(Debug, Clone)]
pub struct Replay {
    pub graph: Graph,
    pub counts: OperationCounts,
    pub trace: Vec<AppliedStep>,
    pub bases: Vec<Graph>,
    /// Leaves of the final bridge tree: the result is obtained from these
    /// graphs by bridge operations alone. A slot rewritten by a spoke or an
    /// edge join after being bridged counts as a single block.
    pub blocks: Vec<Graph>,
}

impl Replay {
    pub fn all_bases_k4(&self) -> bool {
        let k4 = complete_graph(4).unwrap();
        self.bases.iter().all(|b| *b == k4)
    }
}

#[derive(Debug, Clone)]
struct Slot {
    graph: Graph,
    live: bool,
    bases: usize,
    primaries: usize,
    /// Slots bridged into this one, while no unary step has touched it since.
    children: Option<(usize, usize)>,
}

/// Applies steps one by one, checking every precondition at its
/// application point.
#[derive(Debug, Clone, Default)]
pub struct RecipeBuilder {
    slots: Vec<Slot>,
    steps: Vec<Step>,
    trace: Vec<AppliedStep>,
    counts: OperationCounts,
    bases: Vec<Graph>,
    /// When false, uniform 3-connectivity of operands is not re-verified.
    check_class: bool,
}

impl RecipeBuilder {
    pub fn new() -> RecipeBuilder {
        RecipeBuilder {
            check_class: true,
            ..Default::default()
        }
    }

    /// A builder that trusts operands to be uniformly 3-connected. Local
    /// preconditions (degrees, edges, distinctness) are still checked.
    pub fn trusted() -> RecipeBuilder {
        RecipeBuilder::default()
    }

    pub fn counts(&self) -> OperationCounts {
        self.counts
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn live_slots(&self) -> Vec<usize> {
        (0..self.slots.len()).filter(|&i| self.slots[i].live).collect()
    }

    pub fn graph(&self, slot: usize) -> Option<&Graph> {
        self.slots.get(slot).filter(|s| s.live).map(|s| &s.graph)
    }

    pub fn last_slot(&self) -> Option<usize> {
        self.slots.len().checked_sub(1)
    }

    /// Vertex count the result would have if all live slots were bridged
    /// together now.
    pub fn projected_vertices(&self) -> usize {
        let live: Vec<_> = self.slots.iter().filter(|s| s.live).collect();
        let total: usize = live.iter().map(|s| s.graph.n()).sum();
        total - 2 * live.len().saturating_sub(1)
    }

    fn err(&self, reason: impl fmt::Display) -> Error {
        Error::Step {
            step: self.steps.len(),
            reason: reason.to_string(),
        }
    }

    fn check_uniform(&self, g: &Graph, what: &str) -> Result<()> {
        if self.check_class {
            check_uniformly_k_connected(g, 3)
                .map_err(|e| self.err(format!("{what} not uniformly 3-connected: {e:?}")))?;
        }
        Ok(())
    }

    pub fn apply(&mut self, step: Step) -> Result<Option<OperationKind>> {
        match step {
            Step::Base(g) => self.base(g).map(|_| None),
            Step::Bridge {
                left,
                v1,
                right,
                v2,
                matching,
            } => self.bridge(left, v1, right, v2, matching).map(|_| Some(OperationKind::Bridge)),
            Step::Spoke { v, w, x } => self.spoke(v, w, x).map(Some),
            Step::EdgeJoin { st, vw } => self.edge_join(st, vw).map(|_| Some(OperationKind::EdgeJoin)),
        }
    }

    /// Opens a slot with a 3-regular 3-connected base graph.
    pub fn base(&mut self, g: Graph) -> Result<usize> {
        if !is_regular(&g, 3) || !is_k_connected(&g, 3) {
            return Err(self.err("base graph is not 3-regular and 3-connected"));
        }
        let slot = self.slots.len();
        self.slots.push(Slot {
            graph: g.clone(),
            live: true,
            bases: 1,
            primaries: 0,
            children: None,
        });
        self.bases.push(g.clone());
        self.trace.push(AppliedStep {
            kind: None,
            slot,
            vertices_after: g.n(),
            layout: None,
        });
        self.steps.push(Step::Base(g));
        Ok(slot)
    }

    fn last_live(&self) -> Result<usize> {
        match self.last_slot() {
            Some(i) if self.slots[i].live => Ok(i),
            _ => Err(self.err("no open slot to operate on")),
        }
    }

    pub fn spoke(&mut self, v: VertexId, w: VertexId, x: VertexId) -> Result<OperationKind> {
        let i = self.last_live()?;
        self.check_uniform(&self.slots[i].graph, "spoke input")?;
        let (g, kind) = spoke_trusted(&self.slots[i].graph, v, w, x).map_err(|e| self.err(e))?;
        let slot = &mut self.slots[i];
        if kind == OperationKind::PrimarySpoke {
            slot.primaries += 1;
            if slot.primaries > slot.bases {
                return Err(Error::invariant(format!(
                    "slot {i} has {} primary spokes over {} bases",
                    slot.primaries, slot.bases
                )));
            }
        }
        slot.graph = g;
        slot.children = None;
        self.finish_step(Step::Spoke { v, w, x }, kind, i, None);
        Ok(kind)
    }

    pub fn edge_join(&mut self, st: Edge, vw: Edge) -> Result<()> {
        let i = self.last_live()?;
        let g = &self.slots[i].graph;
        if !is_regular(g, 3) || !is_k_connected(g, 3) {
            return Err(self.err("edge join input is not 3-regular and 3-connected"));
        }
        let g = edge_join_trusted(g, st, vw).map_err(|e| self.err(e))?;
        self.slots[i].graph = g;
        self.slots[i].children = None;
        self.finish_step(Step::EdgeJoin { st, vw }, OperationKind::EdgeJoin, i, None);
        Ok(())
    }

    pub fn bridge(
        &mut self,
        left: usize,
        v1: VertexId,
        right: usize,
        v2: VertexId,
        matching: Matching,
    ) -> Result<usize> {
        if left == right {
            return Err(self.err("bridge of a slot with itself"));
        }
        for s in [left, right] {
            if self.graph(s).is_none() {
                return Err(self.err(format!("slot {s} is not live")));
            }
        }
        let (g1, g2) = (&self.slots[left].graph, &self.slots[right].graph);
        self.check_uniform(g1, "first bridge input")?;
        self.check_uniform(g2, "second bridge input")?;
        let g = bridge_trusted(g1, v1, g2, v2, matching).map_err(|e| self.err(e))?;
        let layout = BridgeLayout {
            n1: g1.n(),
            v1,
            n2: g2.n(),
            v2,
        };
        for s in [left, right] {
            self.slots[s].live = false;
        }
        let slot = self.slots.len();
        self.slots.push(Slot {
            graph: g,
            live: true,
            bases: self.slots[left].bases + self.slots[right].bases,
            primaries: self.slots[left].primaries + self.slots[right].primaries,
            children: Some((left, right)),
        });
        self.finish_step(
            Step::Bridge {
                left,
                v1,
                right,
                v2,
                matching,
            },
            OperationKind::Bridge,
            slot,
            Some(layout),
        );
        Ok(slot)
    }

    fn finish_step(
        &mut self,
        step: Step,
        kind: OperationKind,
        slot: usize,
        layout: Option<BridgeLayout>,
    ) {
        self.counts.record(kind);
        self.trace.push(AppliedStep {
            kind: Some(kind),
            slot,
            vertices_after: self.slots[slot].graph.n(),
            layout,
        });
        self.steps.push(step);
    }

    /// Closes the recipe. Exactly one slot must remain live.
    pub fn finish(self) -> Result<(Replay, Recipe)> {
        let live = self.live_slots();
        let [last] = live.as_slice() else {
            return Err(Error::Step {
                step: self.steps.len(),
                reason: format!("recipe ends with {} live slots, expected 1", live.len()),
            });
        };
        let graph = self.slots[*last].graph.clone();
        let mut blocks = Vec::new();
        let mut stack = vec![*last];
        while let Some(i) = stack.pop() {
            match self.slots[i].children {
                Some((l, r)) => stack.extend([r, l]),
                None => blocks.push(self.slots[i].graph.clone()),
            }
        }
        let base_vertices: usize = self.bases.iter().map(Graph::n).sum();
        let c = self.counts;
        if graph.n() + 2 * c.j != base_vertices + 2 * c.t + c.p + c.s {
            return Err(Error::invariant(format!(
                "vertex count {} disagrees with counts {c} over bases of total size {base_vertices}",
                graph.n()
            )));
        }
        if self.bases.len() != c.j + 1 {
            return Err(Error::invariant(format!(
                "{} bases for {} bridges",
                self.bases.len(),
                c.j
            )));
        }
        if c.p > c.j + 1 {
            return Err(Error::invariant(format!("p = {} exceeds j + 1 = {}", c.p, c.j + 1)));
        }
        let replay = Replay {
            graph,
            counts: c,
            trace: self.trace,
            bases: self.bases,
            blocks,
        };
        let recipe = Recipe {
            steps: self.steps,
            counts: c,
        };
        Ok((replay, recipe))
    }
}

impl Recipe {
    /// Replays `steps` to derive the counts.
    pub fn new(steps: Vec<Step>) -> Result<Recipe> {
        let mut b = RecipeBuilder::new();
        for s in steps {
            b.apply(s)?;
        }
        Ok(b.finish()?.1)
    }

    /// Recipe of a bare base graph.
    pub fn base(g: Graph) -> Result<Recipe> {
        Recipe::new(vec![Step::Base(g)])
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            match step {
                Step::Base(g) => {
                    let text = graph6::encode(g).expect("base fits graph6");
                    writeln!(out, "BASE {text}").unwrap();
                }
                Step::Bridge {
                    left,
                    v1,
                    right,
                    v2,
                    matching,
                } => {
                    let [m0, m1, m2] = matching.as_array();
                    writeln!(out, "BRIDGE {left} {v1} {right} {v2} {m0} {m1} {m2}").unwrap();
                }
                Step::Spoke { v, w, x } => writeln!(out, "SPOKE {v} {w} {x}").unwrap(),
                Step::EdgeJoin { st, vw } => writeln!(
                    out,
                    "JOIN {} {} {} {}",
                    st.u(),
                    st.v(),
                    vw.u(),
                    vw.v()
                )
                .unwrap(),
            }
        }
        out
    }

    /// Parses the text form and replays it to fill in the counts.
    pub fn from_text(text: &str) -> Result<Recipe> {
        Recipe::new(parse_steps(text)?)
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses the text form without replaying it.
pub fn parse_steps(text: &str) -> Result<Vec<Step>> {
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::RecipeParse {
            line: i + 1,
            reason,
        };
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap();
        let args: Vec<&str> = words.collect();
        let nums = |count: usize| -> Result<Vec<usize>> {
            if args.len() != count {
                return Err(bad(format!(
                    "{keyword} takes {count} arguments, found {}",
                    args.len()
                )));
            }
            args.iter()
                .map(|a| a.parse::<usize>().map_err(|_| bad(format!("not a number: {a:?}"))))
                .collect()
        };
        let step = match keyword {
            "BASE" => {
                if args.len() != 1 {
                    return Err(bad("BASE takes one graph6 argument".into()));
                }
                Step::Base(graph6::decode(args[0]).map_err(|e| bad(e.to_string()))?)
            }
            "BRIDGE" => {
                let a = nums(7)?;
                Step::Bridge {
                    left: a[0],
                    v1: a[1],
                    right: a[2],
                    v2: a[3],
                    matching: Matching::new([a[4], a[5], a[6]]).map_err(|e| bad(e.to_string()))?,
                }
            }
            "SPOKE" => {
                let a = nums(3)?;
                Step::Spoke {
                    v: a[0],
                    w: a[1],
                    x: a[2],
                }
            }
            "JOIN" => {
                let a = nums(4)?;
                let edge = |u, v| Edge::try_new(u, v).map_err(|e| bad(e.to_string()));
                Step::EdgeJoin {
                    st: edge(a[0], a[1])?,
                    vw: edge(a[2], a[3])?,
                }
            }
            other => return Err(bad(format!("unknown step {other:?}"))),
        };
        steps.push(step);
    }
    Ok(steps)
}

/// Re-executes a recipe from scratch, verifying every step's preconditions
/// and the claimed counts.
pub fn replay(recipe: &Recipe) -> Result<Replay> {
    replay_with(recipe, RecipeBuilder::new())
}

/// [`replay`] without re-verifying uniform 3-connectivity of each operand.
pub fn replay_trusted(recipe: &Recipe) -> Result<Replay> {
    replay_with(recipe, RecipeBuilder::trusted())
}

fn replay_with(recipe: &Recipe, mut b: RecipeBuilder) -> Result<Replay> {
    for step in &recipe.steps {
        b.apply(step.clone())?;
    }
    let (replay, _) = b.finish()?;
    if replay.counts != recipe.counts {
        return Err(Error::invariant(format!(
            "recipe claims {} but replay yields {}",
            recipe.counts, replay.counts
        )));
    }
    if replay.all_bases_k4() && replay.graph.n() != recipe.counts.vertex_count_from_k4() {
        return Err(Error::invariant(format!(
            "n = {} but 4 + 2j + 2t + p + s = {}",
            replay.graph.n(),
            recipe.counts.vertex_count_from_k4()
        )));
    }
    Ok(replay)
}
