//! Per-graph analysis bundled into one serializable record.
//!
//! Every field that needs an exponential search runs under a budget. A field
//! whose search was skipped or over budget is `null`, with the reason under
//! the same key in `null_reasons`; nothing is estimated.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form_with_budget, are_isomorphic, DEFAULT_CANON_BUDGET};
use crate::connectivity::{connectivity_profile, nu};
use crate::constructions::{replay, Recipe};
use crate::error::{Error, Result};
use crate::extremal::{extremal_bound, feasible_profiles, OperationProfile};
use crate::graph::{Graph, VertexId};
use crate::graph6::{self, Graph6};
use crate::planar::{crossing_le_one, CrossingCertificate, CROSSING_BUDGET};
use crate::treewidth::{treewidth_exact_with_budget, unsafe_vertices, DEFAULT_TW_BUDGET};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub tw_budget: usize,
    pub canon_budget: usize,
    pub crossing_budget: usize,
    pub treewidth: bool,
    pub crossing: bool,
    pub unsafe_vertices: bool,
    pub canonical: bool,
    /// Construction of the graph, if known; fixes the operation profile.
    pub recipe: Option<Recipe>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            tw_budget: DEFAULT_TW_BUDGET,
            canon_budget: DEFAULT_CANON_BUDGET,
            crossing_budget: CROSSING_BUDGET,
            treewidth: true,
            crossing: true,
            unsafe_vertices: true,
            canonical: true,
            recipe: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub schema: u32,
    pub graph6: Graph6,
    pub canonical: Option<Graph6>,
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    /// Number of minimum-degree vertices.
    pub nu: usize,
    /// `k` when every vertex pair has local connectivity exactly `k`.
    pub uniform_k: Option<usize>,
    pub extremal: bool,
    pub profile: Option<OperationProfile>,
    pub crossing: Option<CrossingCertificate>,
    pub treewidth: Option<usize>,
    pub unsafe_vertices: Option<Vec<VertexId>>,
    pub null_reasons: BTreeMap<String, String>,
}

fn skipped(reasons: &mut BTreeMap<String, String>, field: &str, why: impl Into<String>) {
    reasons.insert(field.to_string(), why.into());
}

/// Budget overruns become nulls; any other error propagates.
fn budgeted<T>(
    r: Result<T>,
    reasons: &mut BTreeMap<String, String>,
    field: &str,
) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_budget() => {
            skipped(reasons, field, e.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Runs the selected computations on `g`. Deterministic given `opts`.
///
/// Errors only for graphs graph6 cannot hold, a malformed recipe, or a
/// report failing [`check_consistency`] (an internal fault).
pub fn analyze(g: &Graph, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let mut reasons = BTreeMap::new();
    let n = g.n();
    let graph6 = graph6::encode(g)?;

    let canonical = if !opts.canonical {
        skipped(&mut reasons, "canonical", "not requested");
        None
    } else {
        budgeted(canonical_form_with_budget(g, opts.canon_budget), &mut reasons, "canonical")?
            .map(|c| c.graph6)
    };

    let min_degree = g.min_degree().unwrap_or(0);
    let nu = if n == 0 { 0 } else { nu(g)? };
    let uniform_k = connectivity_profile(g)
        .filter(|p| p.min_local == p.max_local && p.min_local >= 1)
        .map(|p| p.min_local);
    let extremal = uniform_k == Some(3) && extremal_bound(n).is_ok_and(|b| b == nu);

    let profile = match &opts.recipe {
        Some(recipe) => {
            let built = replay(recipe)?;
            if are_isomorphic(&built.graph, g)? {
                Some(OperationProfile::new(n, built.counts))
            } else {
                skipped(&mut reasons, "profile", "recipe builds a different graph");
                None
            }
        }
        None if !extremal => {
            skipped(&mut reasons, "profile", "no recipe and graph is not extremal");
            None
        }
        None if n == 4 => Some(OperationProfile::new(4, Default::default())),
        None => match feasible_profiles(n)?.as_slice() {
            [only] => Some(*only),
            many => {
                skipped(&mut reasons, "profile", format!("{} profiles feasible for n={n}; pass a recipe", many.len()));
                None
            }
        },
    };

    let crossing = if !opts.crossing {
        skipped(&mut reasons, "crossing", "not requested");
        None
    } else if n > opts.crossing_budget {
        skipped(&mut reasons, "crossing", format!("crossing sweep budget exceeded: size {n} > {}", opts.crossing_budget));
        None
    } else {
        budgeted(crossing_le_one(g), &mut reasons, "crossing")?
    };

    let treewidth = if !opts.treewidth {
        skipped(&mut reasons, "treewidth", "not requested");
        None
    } else {
        budgeted(treewidth_exact_with_budget(g, opts.tw_budget), &mut reasons, "treewidth")?.map(|r| r.width)
    };

    let unsafe_vertices = if !opts.unsafe_vertices {
        skipped(&mut reasons, "unsafe_vertices", "not requested");
        None
    } else {
        budgeted(unsafe_vertices(g, opts.tw_budget), &mut reasons, "unsafe_vertices")?
    };

    let report = AnalysisReport {
        schema: REPORT_SCHEMA,
        graph6,
        canonical,
        n,
        m: g.m(),
        min_degree,
        nu,
        uniform_k,
        extremal,
        profile,
        crossing,
        treewidth,
        unsafe_vertices,
        null_reasons: reasons,
    };
    check_consistency(&report).map_err(|v| Error::invariant(format!("report for {}: {}", report.graph6, v.join("; "))))?;
    Ok(report)
}

/// Cross-field checks that hold for every correct report. Returns all
/// violations found.
pub fn check_consistency(r: &AnalysisReport) -> Result<(), Vec<String>> {
    let mut bad = Vec::new();
    let mut need = |ok: bool, msg: String| {
        if !ok {
            bad.push(msg);
        }
    };
    need(r.schema == REPORT_SCHEMA, format!("schema {} != {REPORT_SCHEMA}", r.schema));
    match graph6::decode(r.graph6.as_str()) {
        Ok(g) => {
            need(g.n() == r.n && g.m() == r.m, "graph6 disagrees with n or m".into());
            need(g.min_degree().unwrap_or(0) == r.min_degree, "min_degree disagrees with graph6".into());
        }
        Err(e) => need(false, format!("graph6: {e}")),
    }
    if let Some(c) = &r.canonical {
        match graph6::decode(c.as_str()) {
            Ok(h) => need(h.n() == r.n && h.m() == r.m, "canonical form has other size".into()),
            Err(e) => need(false, format!("canonical: {e}")),
        }
    }
    need(r.n == 0 || (1..=r.n).contains(&r.nu), format!("nu {} out of range", r.nu));
    need(2 * r.m >= r.n * r.min_degree, "degree sum below n * min_degree".into());
    if let Some(k) = r.uniform_k {
        // Local connectivity never exceeds either endpoint's degree.
        need(r.min_degree == k, format!("uniform_k {k} but min_degree {}", r.min_degree));
    }
    if r.extremal {
        need(r.uniform_k == Some(3), "extremal but not uniformly 3-connected".into());
        need(extremal_bound(r.n).is_ok_and(|b| b == r.nu), "extremal but nu off the bound".into());
    }
    if let Some(p) = &r.profile {
        need(p.n == r.n, "profile for another n".into());
        need(p.satisfies_count_identity(), "profile breaks n = 4 + 2j + 2t + p + s".into());
    }
    if let Some(c) = &r.crossing {
        if r.n >= 3 {
            let edge_cap = 3 * r.n - 6 + c.rank().min(1);
            need(c.rank() == 2 || r.m <= edge_cap, format!("crossing {} with {} edges", c.kind_str(), r.m));
        }
        if let CrossingCertificate::OneCrossing { pair: (e, f) } = c {
            need(e.v() < r.n && f.v() < r.n && !e.touches(*f), "crossing pair not independent edges".into());
        }
    }
    if let Some(tw) = r.treewidth {
        need(tw < r.n.max(1), format!("treewidth {tw} >= n"));
        need(tw >= r.min_degree.min(r.n.saturating_sub(1)), format!("treewidth {tw} below min degree"));
        if matches!(r.crossing, Some(CrossingCertificate::Planar)) && r.n >= 5 {
            need(r.m <= 3 * r.n - 6, "planar graph over edge bound".into());
        }
    }
    if let Some(us) = &r.unsafe_vertices {
        need(us.windows(2).all(|w| w[0] < w[1]) && us.iter().all(|&v| v < r.n), "unsafe vertices unsorted or out of range".into());
    }
    for (field, present) in [
        ("canonical", r.canonical.is_some()),
        ("profile", r.profile.is_some()),
        ("crossing", r.crossing.is_some()),
        ("treewidth", r.treewidth.is_some()),
        ("unsafe_vertices", r.unsafe_vertices.is_some()),
    ] {
        need(present != r.null_reasons.contains_key(field), format!("{field}: null iff reason given"));
    }
    need(
        r.null_reasons.keys().all(|k| ["canonical", "profile", "crossing", "treewidth", "unsafe_vertices"].contains(&k.as_str())),
        "reason for unknown field".into(),
    );
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

impl AnalysisReport {
    /// Single-line JSON, for corpus output.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Parses and re-checks a report.
    pub fn from_json(text: &str) -> Result<AnalysisReport> {
        let r: AnalysisReport =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("report JSON: {e}")))?;
        Graph6::parse(r.graph6.as_str())?;
        check_consistency(&r).map_err(|v| Error::InvalidArgument(v.join("; ")))?;
        Ok(r)
    }
}
