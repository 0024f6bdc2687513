//! Stable colorings and the two lemmas that grow them: solving fresh
//! subtrees below an antichain, and re-fixing old subtrees after new
//! vertices appear next to them.

use serde::Serialize;

use crate::coloring::{opp_same, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::solvers::greedy::greedy_unfriendly;
use crate::solvers::oracle::{self, OracleConfig};
use crate::solvers::repair::reoptimize;
use crate::tree::TreeOrder;

/// A partial coloring whose domain inside the tree splits as `h_part ⊔ ⌊x_part⌋`.
///
/// Colored vertices outside the tree (the frozen boundary) are not part of
/// the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableColoring {
    pub coloring: PartialColoring,
    pub h_part: VertexSet,
    pub x_part: VertexSet,
}

/// Which stability property failed, and where.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum StabilityViolation {
    /// Domain is not `h_part ⊔ ⌊x_part⌋`, or the parts are malformed.
    S1(String),
    /// An improving flip-set inside `⌊x_part⌋`.
    S2(Vec<usize>),
    /// Vertex outside the domain declaring infinitely many neighbors in `⌊v⌋`.
    S3 { outside: usize, v: usize },
}

impl StableColoring {
    /// Colored tree members.
    pub fn domain(&self, t: &TreeOrder) -> VertexSet {
        self.coloring.domain().intersection(t.members())
    }

    /// Checks S1-S3 against the tree `t` and the allowed `h` region.
    pub fn violation(
        &self,
        g: &Graph,
        t: &TreeOrder,
        h: &VertexSet,
        cfg: &OracleConfig,
    ) -> Result<Option<StabilityViolation>> {
        let dom = self.domain(t);
        let below = t.down_closure(&self.x_part);
        if !self.h_part.is_subset(h) {
            return Ok(Some(StabilityViolation::S1("h_part leaves H".into())));
        }
        if !t.is_antichain(&self.x_part) {
            return Ok(Some(StabilityViolation::S1("x_part is not an antichain".into())));
        }
        if self.h_part.intersects(&below) {
            return Ok(Some(StabilityViolation::S1("h_part meets ⌊x_part⌋".into())));
        }
        if self.h_part.union(&below) != dom {
            return Ok(Some(StabilityViolation::S1(
                "domain differs from h_part ∪ ⌊x_part⌋".into(),
            )));
        }
        if let Some(v) = dom.difference(&below).iter().find(|&v| g.is_finite(v)) {
            return Ok(Some(StabilityViolation::S1(format!(
                "Finite-labeled vertex {v} lies outside ⌊x_part⌋"
            ))));
        }
        if let Some(f) = crate::coloring::improving_flip(g, &self.coloring, &below, cfg)? {
            return Ok(Some(StabilityViolation::S2(f.to_vec())));
        }
        let outside = t.members().difference(&dom);
        for v in self.x_part.iter() {
            let sub = t.down_of(v);
            if let Some(w) = outside.iter().find(|&w| g.declares_infinite(w, &sub)) {
                return Ok(Some(StabilityViolation::S3 { outside: w, v }));
            }
        }
        Ok(None)
    }
}

/// Color for a newly absorbed vertex: the hint if it has one, otherwise the
/// color opposite to most of its colored neighbors (ties give 0).
pub(crate) fn seed_color(g: &Graph, c: &PartialColoring, v: usize, hint: Option<&PartialColoring>) -> bool {
    if let Some(h) = hint.and_then(|h| h.get(v)) {
        return h;
    }
    let mut ones = 0usize;
    let mut zeros = 0usize;
    for &u in g.neighbors(v) {
        match c.get(u) {
            Some(true) => ones += 1,
            Some(false) => zeros += 1,
            None => {}
        }
    }
    zeros > ones
}

/// Extends `c_prime` to `⌊x⌋`, strongly maximal there.
///
/// Each `v ∈ x` is seeded, each child subtree is solved exactly with the
/// current coloring fixed around it, and the Finite-labeled vertices of
/// `⌊v⌋` are re-optimized last.
pub fn extend_subtrees(
    g: &Graph,
    t: &TreeOrder,
    c_prime: &PartialColoring,
    x: &VertexSet,
) -> Result<PartialColoring> {
    extend_subtrees_with(g, t, c_prime, x, None, &OracleConfig::default())
}

pub fn extend_subtrees_with(
    g: &Graph,
    t: &TreeOrder,
    c_prime: &PartialColoring,
    x: &VertexSet,
    hint: Option<&PartialColoring>,
    cfg: &OracleConfig,
) -> Result<PartialColoring> {
    let x = g.normalize(x)?;
    if let Some(v) = x.iter().find(|&v| !t.contains(v)) {
        return Err(Error::input(format!("vertex {v} is not in the tree")));
    }
    if !t.is_antichain(&x) {
        return Err(Error::input("x is not an antichain"));
    }
    let below = t.down_closure(&x);
    if let Some(v) = below.iter().find(|&v| c_prime.is_colored(v)) {
        return Err(Error::contract(format!(
            "vertex {v} of ⌊x⌋ is already colored"
        )));
    }
    let mut c = c_prime.clone();
    for v in x.iter() {
        let col = seed_color(g, &c, v, hint);
        c.set(v, col);
        for &u in t.children(v) {
            c = solve_fresh(g, &c, &t.down_of(u), hint, cfg)?;
        }
        c = reoptimize(g, &c, &t.down_of(v), cfg)?;
    }
    Ok(c)
}

/// Colors the uncolored set `region` strongly maximally with the colored
/// vertices around it fixed. Exact max-cut when it fits; otherwise a greedy
/// pass over the whole region followed by exact optimization of its
/// Finite-labeled part.
pub(crate) fn solve_fresh(
    g: &Graph,
    c: &PartialColoring,
    region: &VertexSet,
    hint: Option<&PartialColoring>,
    cfg: &OracleConfig,
) -> Result<PartialColoring> {
    match oracle::solve(g, c, region, hint, cfg) {
        Ok(out) => Ok(out),
        Err(Error::Capacity { .. }) => {
            let mut seeded = c.clone();
            for v in region.iter() {
                seeded.set(v, hint.and_then(|h| h.get(v)).unwrap_or(false));
            }
            let seeded = greedy_within(g, &seeded, region)?;
            reoptimize(g, &seeded, region, cfg)
        }
        Err(e) => Err(e),
    }
}

/// Greedy unfriendly flips restricted to `region`; everything else is held.
pub(crate) fn greedy_within(g: &Graph, c: &PartialColoring, region: &VertexSet) -> Result<PartialColoring> {
    let mut held = c.clone();
    for v in c.domain().difference(region).iter() {
        if !held.is_frozen(v) {
            held.freeze(v)?;
        }
    }
    let out = greedy_unfriendly(g, &held)?.coloring;
    let mut restored = c.clone();
    for v in region.iter() {
        if let Some(col) = out.get(v) {
            restored.set(v, col);
        }
    }
    Ok(restored)
}

/// Re-fixes the subtrees of a stable coloring after its domain grew.
///
/// `c_prime` must extend `sc.coloring`. Every `⌊v⌋` (`v ∈ x_part`) with a
/// neighbor among the new vertices has its Finite-labeled vertices
/// re-optimized; the other subtrees are left alone.
pub fn fix_stable(
    g: &Graph,
    t: &TreeOrder,
    sc: &StableColoring,
    c_prime: &PartialColoring,
) -> Result<PartialColoring> {
    fix_stable_with(g, t, sc, c_prime, &OracleConfig::default())
}

pub fn fix_stable_with(
    g: &Graph,
    t: &TreeOrder,
    sc: &StableColoring,
    c_prime: &PartialColoring,
    cfg: &OracleConfig,
) -> Result<PartialColoring> {
    if !sc.coloring.is_extended_by(c_prime) {
        return Err(Error::contract("c_prime does not extend the stable coloring"));
    }
    let new = c_prime.domain().difference(&sc.coloring.domain());
    fix_subtrees(g, t, c_prime, &sc.x_part, &new, cfg)
}

pub(crate) fn fix_subtrees(
    g: &Graph,
    t: &TreeOrder,
    c: &PartialColoring,
    x_part: &VertexSet,
    new: &VertexSet,
    cfg: &OracleConfig,
) -> Result<PartialColoring> {
    let mut c = c.clone();
    for v in x_part.iter() {
        let sub = t.down_of(v);
        if g.neighborhood(&sub)?.intersects(new) {
            c = reoptimize(g, &c, &sub, cfg)?;
        }
    }
    Ok(c)
}

/// Flips newly absorbed H-vertices that are not unfriendly and re-optimizes
/// `region` after each round, until every one of them is unfriendly among
/// its colored neighbors. Each flip raises the cut, so this terminates.
pub(crate) fn oppose(
    g: &Graph,
    c: &PartialColoring,
    new_h: &VertexSet,
    region: &VertexSet,
    cfg: &OracleConfig,
) -> Result<PartialColoring> {
    let mut c = reoptimize(g, c, region, cfg)?;
    loop {
        let bad = new_h.iter().find(|&w| {
            let (opp, same) = opp_same(g, &c, w);
            opp < same && !c.is_frozen(w)
        });
        let Some(w) = bad else { break };
        c.flip_unchecked(w);
        c = reoptimize(g, &c, region, cfg)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DegreeClass::{Finite as F, Infinite as I};
    use crate::tree::dfs_normal_tree;

    fn strongly_maximal(g: &Graph, c: &PartialColoring, region: &VertexSet, cfg: &OracleConfig) -> Result<bool> {
        crate::coloring::is_strongly_maximal_in_with(g, c, region, cfg)
    }

    #[test]
    fn extend_nothing() {
        let g = Graph::path(3);
        let t = dfs_normal_tree(&g, 0).unwrap();
        let c = PartialColoring::new(3);
        assert_eq!(extend_subtrees(&g, &t, &c, &g.empty_set()).unwrap(), c);
    }

    #[test]
    fn extend_single_leaf() {
        let g = Graph::path(3);
        let t = dfs_normal_tree(&g, 0).unwrap();
        let mut c = PartialColoring::new(3);
        c.set(0, false);
        c.set(1, true);
        let out = extend_subtrees(&g, &t, &c, &g.set_of([2])).unwrap();
        assert_eq!(out.get(2), Some(false));
        assert!(strongly_maximal(&g, &out, &g.set_of([2]), &OracleConfig::default()).unwrap());
    }

    #[test]
    fn extend_two_incomparable_subtrees() {
        // root 0 with two paths 1-2 and 3-4
        let g = Graph::unlabeled(5, &[(0, 1), (1, 2), (0, 3), (3, 4)]).unwrap();
        let t = dfs_normal_tree(&g, 0).unwrap();
        let mut c = PartialColoring::new(5);
        c.set(0, true);
        let x = g.set_of([1, 3]);
        let out = extend_subtrees(&g, &t, &c, &x).unwrap();
        assert_eq!(out, PartialColoring::from_bits(&[1, 0, 1, 0, 1]));
        assert!(strongly_maximal(&g, &out, &t.down_closure(&x), &OracleConfig::default()).unwrap());
    }

    #[test]
    fn extend_rejects_comparable() {
        let g = Graph::path(3);
        let t = dfs_normal_tree(&g, 0).unwrap();
        let c = PartialColoring::new(3);
        assert!(matches!(
            extend_subtrees(&g, &t, &c, &g.set_of([1, 2])),
            Err(Error::Input(_))
        ));
    }

    fn hub_with_subtrees() -> (Graph, TreeOrder, StableColoring) {
        // hub 0 and vertex 5 (both Infinite) sit above subtree 1-2; subtree
        // 3-4 hangs off the hub. Vertex 5 is the one that turns up later.
        let g = Graph::new(
            6,
            &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (1, 5), (2, 5)],
            vec![I, F, F, F, F, I],
        )
        .unwrap();
        let t = TreeOrder::from_parents(0, vec![Some(0), Some(5), Some(1), Some(0), Some(3), Some(0)]).unwrap();
        assert!(t.is_normal(&g));
        let mut c = PartialColoring::new(6);
        for (v, b) in [(0, true), (1, false), (2, true), (3, false), (4, true)] {
            c.set(v, b);
        }
        let sc = StableColoring { coloring: c, h_part: g.set_of([0]), x_part: g.set_of([1, 3]) };
        (g, t, sc)
    }

    #[test]
    fn fix_unchanged_without_new_vertices() {
        let (g, t, sc) = hub_with_subtrees();
        assert_eq!(fix_stable(&g, &t, &sc, &sc.coloring).unwrap(), sc.coloring);
    }

    #[test]
    fn fix_touches_only_adjacent_subtree() {
        let (g, t, sc) = hub_with_subtrees();
        let mut c2 = sc.coloring.clone();
        c2.set(5, true);
        let out = fix_stable(&g, &t, &sc, &c2).unwrap();
        // vertex 2 now sits between 1 (0) and 5 (1): either color is optimal,
        // ties keep the current one
        assert_eq!(out.get(3), Some(false));
        assert_eq!(out.get(4), Some(true));
        assert!(strongly_maximal(&g, &out, &t.down_of(1), &OracleConfig::default()).unwrap());
        let mut c3 = sc.coloring.clone();
        c3.set(5, false);
        let out = fix_stable(&g, &t, &sc, &c3).unwrap();
        assert_eq!(out.get(2), Some(true));
    }

    #[test]
    fn fix_requires_extension() {
        let (g, t, sc) = hub_with_subtrees();
        let mut bad = sc.coloring.clone();
        bad.set(0, false);
        assert!(matches!(fix_stable(&g, &t, &sc, &bad), Err(Error::Contract(_))));
    }

    #[test]
    fn stable_violations_detected() {
        let (g, t, sc) = hub_with_subtrees();
        let h = g.set_of([0, 5]);
        let cfg = OracleConfig::default();
        assert_eq!(sc.violation(&g, &t, &h, &cfg).unwrap(), None);
        let mut bad = sc.clone();
        bad.coloring.set(2, false);
        assert!(matches!(bad.violation(&g, &t, &h, &cfg).unwrap(), Some(StabilityViolation::S2(_))));
        let mut g2 = g.clone();
        g2.declare_omega(5, 2).unwrap();
        assert_eq!(
            sc.violation(&g2, &t, &h, &cfg).unwrap(),
            Some(StabilityViolation::S3 { outside: 5, v: 1 })
        );
        let mut bad = sc.clone();
        bad.x_part = g.set_of([1, 2, 3]);
        assert!(matches!(bad.violation(&g, &t, &h, &cfg).unwrap(), Some(StabilityViolation::S1(_))));
    }
}
