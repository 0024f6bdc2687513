//! Colorings that are strongly maximal on the Finite-labeled vertices and
//! unfriendly at the Infinite-labeled ones, with a frozen boundary `K`.
//!
//! Each component of `G = V ∖ K` is handled on the depth-first tree of least
//! rank. Rank 0 splits into the locally finite case (exact max-cut) and the
//! all-Infinite case (greedy). A Finite root goes through the minimal
//! Infinite vertices: the part above them is solved directly, each subtree
//! hanging below one of them recursively, the offending minimal vertices are
//! flipped, and everything is stitched. An Infinite root runs the stage
//! engine. A final pass alternates exact re-optimization of the Finite
//! vertices with flips of non-unfriendly Infinite ones until neither applies.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coloring::{cut_size, flip_candidates, opp_same, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{DegreeClass, Graph, VertexSet};
use crate::rank::{decompose, graph_rank_min_within};
use crate::solvers::engine::{CaseTag, Certificate, Engine};
use crate::solvers::oracle::{self, OracleConfig};
use crate::solvers::repair::{reoptimize, stitch_with};
use crate::solvers::stable::{greedy_within, seed_color, solve_fresh};
use crate::tree::{dfs_normal_tree_within, TreeOrder};

#[derive(Debug, Clone, Default)]
pub struct DriverConfig {
    pub oracle: OracleConfig,
    /// Colors to fall back on wherever the construction has a free choice.
    pub hint: Option<PartialColoring>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    LocallyFinite,
    Regular,
    FiniteRoot,
    InfiniteRoot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentTrace {
    pub root: usize,
    pub rank: usize,
    pub branch: Branch,
    pub vertices: Vec<usize>,
    /// Case tags applied by the engine (Infinite roots only).
    pub history: Vec<CaseTag>,
    pub certificates: BTreeMap<usize, Certificate>,
    /// Traces of the subtrees solved recursively below minimal Infinite vertices.
    pub subtrees: Vec<ComponentTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DriverOutcome {
    pub coloring: PartialColoring,
    pub components: Vec<ComponentTrace>,
    /// Vertices whose color the final pass changed.
    pub closing_changes: Vec<usize>,
}

/// Total coloring extending `k_frozen` with both guarantees; see the module docs.
pub fn recursion_driver(g_hat: &Graph, k_frozen: &PartialColoring) -> Result<PartialColoring> {
    Ok(recursion_driver_with(g_hat, k_frozen, &DriverConfig::default())?.coloring)
}

pub fn recursion_driver_with(
    g_hat: &Graph,
    k_frozen: &PartialColoring,
    cfg: &DriverConfig,
) -> Result<DriverOutcome> {
    if k_frozen.n() != g_hat.n() {
        return Err(Error::input("coloring and graph sizes differ"));
    }
    if let Some(h) = &cfg.hint {
        if h.n() != g_hat.n() {
            return Err(Error::input("hint and graph sizes differ"));
        }
    }
    let k = k_frozen.domain();
    let mut c = k_frozen.clone();
    for v in k.iter() {
        if !c.is_frozen(v) {
            c.freeze(v)?;
        }
    }
    let g_part = g_hat.vertices().difference(&k);
    let mut components = Vec::new();
    for comp in g_hat.components_within(&g_part) {
        let comp = g_hat.set_of(comp);
        components.push(solve_component(g_hat, &mut c, &comp, cfg)?);
    }
    let before = c.clone();
    let c = closing_pass(g_hat, &c, &g_part, &cfg.oracle)?;
    let closing_changes = c.diff(&before).to_vec();
    Ok(DriverOutcome { coloring: c, components, closing_changes })
}

/// Solves the uncolored connected set `comp` with everything colored around
/// it held fixed, finishing with the closing pass inside `comp`.
fn solve_component(
    g: &Graph,
    c: &mut PartialColoring,
    comp: &VertexSet,
    cfg: &DriverConfig,
) -> Result<ComponentTrace> {
    let hint = cfg.hint.as_ref();
    let min = graph_rank_min_within(g, comp)?;
    let t = dfs_normal_tree_within(g, comp, min.root)?;
    let mut trace = ComponentTrace {
        root: min.root,
        rank: min.rank,
        branch: Branch::LocallyFinite,
        vertices: comp.to_vec(),
        history: Vec::new(),
        certificates: BTreeMap::new(),
        subtrees: Vec::new(),
    };
    if min.rank == 0 {
        if g.is_finite(min.root) {
            *c = solve_fresh(g, c, comp, hint, &cfg.oracle)?;
        } else {
            trace.branch = Branch::Regular;
            // hinted vertices first, so the rest can oppose them
            for v in comp.iter() {
                if let Some(b) = hint.and_then(|h| h.get(v)) {
                    c.set(v, b);
                }
            }
            for v in comp.iter() {
                if c.is_colored(v) {
                    continue;
                }
                let b = seed_color(g, c, v, None);
                c.set(v, b);
            }
            *c = greedy_within(g, c, comp)?;
        }
    } else if g.label(min.root) == DegreeClass::Finite {
        trace.branch = Branch::FiniteRoot;
        finite_root(g, c, &t, cfg, &mut trace)?;
    } else {
        trace.branch = Branch::InfiniteRoot;
        let engine = Engine::new(g, &t, hint, cfg.oracle)?;
        let state = engine.run(c)?;
        *c = state.stable.coloring;
        trace.history = state.history;
        trace.certificates = state.certificates;
    }
    *c = closing_pass(g, c, comp, &cfg.oracle)?;
    Ok(trace)
}

/// The decomposition through the minimal Infinite vertices `S` below a Finite root.
fn finite_root(
    g: &Graph,
    c: &mut PartialColoring,
    t: &TreeOrder,
    cfg: &DriverConfig,
    trace: &mut ComponentTrace,
) -> Result<()> {
    let dec = decompose(g, t)?;
    let s = dec.s;
    let up = t.up_closure(&s);
    // children of ⌈S⌉ outside it: below S they form I, elsewhere J
    let mut i_set = Vec::new();
    let mut j_set = g.empty_set();
    for v in up.iter() {
        for &u in t.children(v) {
            if up.contains(u) {
                continue;
            }
            if s.contains(v) {
                i_set.push(u);
            } else {
                j_set.insert(u);
            }
        }
    }
    let h_part = up.union(&t.down_closure(&j_set));
    *c = solve_fresh(g, c, &h_part, cfg.hint.as_ref(), &cfg.oracle)?;
    for &u in &i_set {
        let sub = t.down_of(u);
        trace.subtrees.push(solve_component(g, c, &sub, cfg)?);
    }
    let x: Vec<usize> = s
        .iter()
        .filter(|&v| {
            let (opp, same) = opp_same(g, c, v);
            opp < same
        })
        .collect();
    for &v in &x {
        c.flip_unchecked(v);
        *c = reoptimize(g, c, &t.down_of(v), &cfg.oracle)?;
    }
    let blocks: Vec<VertexSet> = s
        .iter()
        .map(|v| {
            let mut b = t.down_of(v);
            b.remove(v);
            b
        })
        .filter(|b| !b.is_empty())
        .collect();
    *c = stitch_with(g, c, t.members(), &blocks, &cfg.oracle)?;
    Ok(())
}

/// Alternates exact re-optimization of the Finite-labeled vertices of
/// `region` with flipping the lowest non-unfriendly Infinite-labeled one.
/// Both moves never lower the cut and a flip raises it, so this stops.
fn closing_pass(
    g: &Graph,
    c: &PartialColoring,
    region: &VertexSet,
    cfg: &OracleConfig,
) -> Result<PartialColoring> {
    let mut c = reoptimize(g, c, region, cfg)?;
    loop {
        let bad = region.iter().find(|&v| {
            !g.is_finite(v) && !c.is_frozen(v) && {
                let (opp, same) = opp_same(g, &c, v);
                opp < same
            }
        });
        let Some(v) = bad else { return Ok(c) };
        let before = cut_size(g, &c);
        c.flip_unchecked(v);
        c = reoptimize(g, &c, region, cfg)?;
        debug_assert!(cut_size(g, &c) > before);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexVerdict {
    pub vertex: usize,
    pub opposite: usize,
    pub same: usize,
    pub unfriendly: bool,
}

/// Both guarantees checked on a total coloring; `K` is its frozen set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub passed: bool,
    pub strongly_maximal: bool,
    /// An improving flip-set of Finite-labeled, unfrozen vertices, if any.
    pub improving_flip: Option<Vec<usize>>,
    pub cut: usize,
    pub infinite_vertices: Vec<VertexVerdict>,
    pub non_unfriendly: Vec<usize>,
}

pub fn verify_theorem(g_hat: &Graph, c: &PartialColoring) -> Result<TheoremReport> {
    verify_theorem_with(g_hat, c, &OracleConfig::default())
}

/// The witness flip-set is `c △ c*` for the optimum `c*` over the
/// candidates that stays closest to `c` on ties.
pub fn verify_theorem_with(g_hat: &Graph, c: &PartialColoring, cfg: &OracleConfig) -> Result<TheoremReport> {
    if c.n() != g_hat.n() {
        return Err(Error::input("coloring and graph sizes differ"));
    }
    if let Some(v) = (0..g_hat.n()).find(|&v| !c.is_colored(v)) {
        return Err(Error::contract(format!("coloring is not total: vertex {v} is uncolored")));
    }
    let cand = flip_candidates(g_hat, c, &g_hat.vertices());
    let best = oracle::solve(g_hat, c, &cand, Some(c), cfg)?;
    let improving_flip = (cut_size(g_hat, &best) > cut_size(g_hat, c)).then(|| best.diff(c).to_vec());
    let mut infinite_vertices = Vec::new();
    let mut non_unfriendly = Vec::new();
    for v in (0..g_hat.n()).filter(|&v| !g_hat.is_finite(v) && !c.is_frozen(v)) {
        let (opposite, same) = opp_same(g_hat, c, v);
        let unfriendly = opposite >= same;
        if !unfriendly {
            non_unfriendly.push(v);
        }
        infinite_vertices.push(VertexVerdict { vertex: v, opposite, same, unfriendly });
    }
    let strongly_maximal = improving_flip.is_none();
    Ok(TheoremReport {
        passed: strongly_maximal && non_unfriendly.is_empty(),
        strongly_maximal,
        improving_flip,
        cut: cut_size(g_hat, c),
        infinite_vertices,
        non_unfriendly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_unfriendly_at;
    use crate::graph::DegreeClass::{Finite as F, Infinite as I};
    use crate::solvers::oracle::oracle_maxcut;

    #[test]
    fn all_finite_matches_maxcut_value() {
        let g = Graph::cycle(5);
        let out = recursion_driver(&g, &PartialColoring::new(5)).unwrap();
        let opt = oracle_maxcut(&g, &PartialColoring::new(5), &g.vertices()).unwrap();
        assert_eq!(cut_size(&g, &out), cut_size(&g, &opt));
        assert!(verify_theorem(&g, &out).unwrap().passed);
    }

    #[test]
    fn all_infinite_is_unfriendly() {
        let g = Graph::complete(5).with_labels(vec![I; 5]).unwrap();
        let out = recursion_driver_with(&g, &PartialColoring::new(5), &DriverConfig::default()).unwrap();
        assert_eq!(out.components[0].branch, Branch::Regular);
        for v in 0..5 {
            assert!(is_unfriendly_at(&g, &out.coloring, v).unwrap());
        }
    }

    #[test]
    fn star_with_frozen_neighbor() {
        // star center 0 (Infinite), leaves 1..3, frozen 4 adjacent to the center
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], vec![I, F, F, F, F]).unwrap();
        let mut k = PartialColoring::new(5);
        k.set(4, true);
        k.freeze(4).unwrap();
        let out = recursion_driver(&g, &k).unwrap();
        assert_eq!(out.get(4), Some(true));
        assert!(out.is_frozen(4));
        let report = verify_theorem(&g, &out).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn finite_root_branch() {
        // F root 0 - I vertex 1 with two Finite leaves; F root side leaf 4
        let g = Graph::new(5, &[(0, 1), (1, 2), (1, 3), (0, 4)], vec![F, I, F, F, F]).unwrap();
        let out = recursion_driver_with(&g, &PartialColoring::new(5), &DriverConfig::default()).unwrap();
        let report = verify_theorem(&g, &out.coloring).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn k4_all_same_fails_with_split() {
        let g = Graph::complete(4);
        let report = verify_theorem(&g, &PartialColoring::from_bits(&[0, 0, 0, 0])).unwrap();
        assert!(!report.passed);
        let f = report.improving_flip.unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn maxcut_passes_verification() {
        let g = Graph::complete_bipartite(2, 3);
        let c = oracle_maxcut(&g, &PartialColoring::new(5), &g.vertices()).unwrap();
        assert!(verify_theorem(&g, &c).unwrap().passed);
    }

    #[test]
    fn non_unfriendly_infinite_vertex_reported() {
        let g = Graph::star(2).with_labels(vec![I, F, F]).unwrap();
        let report = verify_theorem(&g, &PartialColoring::from_bits(&[0, 0, 0])).unwrap();
        assert_eq!(report.non_unfriendly, vec![0]);
        assert!(!report.passed);
    }

    #[test]
    fn partial_coloring_rejected() {
        let g = Graph::path(2);
        assert!(matches!(verify_theorem(&g, &PartialColoring::new(2)), Err(Error::Contract(_))));
    }
}
