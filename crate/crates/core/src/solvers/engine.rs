//! The stage-by-stage construction for an Infinite-labeled root.
//!
//! Starting from an unfriendly coloring of the largest part of `H` in which
//! every vertex declares infinitely many neighbors, each step absorbs more of
//! the tree by one of five cases, tried in order with the smallest vertex id
//! first. Stability (S1-S3) and the persistence of Infinite-labeled colors are
//! checked after every step; a violation is an engine error, never silently
//! repaired.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coloring::PartialColoring;
use crate::error::{Error, Result};
use crate::graph::{DegreeClass, Graph, VertexSet};
use crate::rank::decompose;
use crate::solvers::oracle::OracleConfig;
use crate::solvers::stable::{
    extend_subtrees_with, fix_subtrees, greedy_within, oppose, seed_color, StableColoring,
};
use crate::tree::TreeOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Init,
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    /// Finite-stage fallback: absorbs the lowest uncovered part of `H` when
    /// none of the five cases applies (truncations can lose the declared
    /// adjacencies the cases rely on).
    Completion,
}

/// Opposite- and same-colored declared-infinite neighbors of an absorbed
/// H-vertex inside the region it was absorbed against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub case: CaseTag,
    pub opposite: usize,
    pub same: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineState {
    pub stage: usize,
    pub stable: StableColoring,
    pub history: Vec<CaseTag>,
    pub certificates: BTreeMap<usize, Certificate>,
}

/// One link of the chain built when the engine stops short of the whole tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub w: usize,
    pub u: Option<usize>,
    pub x: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StallReport {
    pub uncovered: Vec<usize>,
    pub chain: Vec<ChainLink>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Plan {
    Case1 { w: usize, x: VertexSet },
    Case2 { w: usize, v: usize },
    Case3 { w: usize },
    Case4 { w: usize },
    Case5 { w: usize, u: usize },
    Completion { w: usize },
}

pub struct Engine<'a> {
    g: &'a Graph,
    t: &'a TreeOrder,
    s: VertexSet,
    h: VertexSet,
    hint: Option<&'a PartialColoring>,
    cfg: OracleConfig,
}

impl<'a> Engine<'a> {
    /// The tree must be normal and rooted at an Infinite-labeled vertex.
    pub fn new(
        g: &'a Graph,
        t: &'a TreeOrder,
        hint: Option<&'a PartialColoring>,
        cfg: OracleConfig,
    ) -> Result<Self> {
        if g.label(t.root()) != DegreeClass::Infinite {
            return Err(Error::contract(format!(
                "engine root {} is Finite-labeled",
                t.root()
            )));
        }
        if let Some((u, v)) = t.normality_violation(g) {
            return Err(Error::contract(format!("tree is not normal: edge {u}-{v}")));
        }
        let dec = decompose(g, t)?;
        Ok(Engine { g, t, s: dec.s, h: dec.h, hint, cfg })
    }

    pub fn s(&self) -> &VertexSet {
        &self.s
    }

    pub fn h(&self) -> &VertexSet {
        &self.h
    }

    fn inf(&self, w: usize, set: &VertexSet) -> bool {
        self.g.declares_infinite(w, set)
    }

    fn below(&self, v: usize) -> VertexSet {
        self.t.down_of(v)
    }

    /// Largest `H₀ ⊆ H` in which every vertex declares infinitely many
    /// neighbors, by pruning to the greatest fixed point.
    pub fn regular_core(&self) -> VertexSet {
        let mut core = self.h.clone();
        loop {
            let drop: Vec<usize> = core.iter().filter(|&w| !self.inf(w, &core)).collect();
            if drop.is_empty() {
                return core;
            }
            for w in drop {
                core.remove(w);
            }
        }
    }

    /// `c₀`: the frozen boundary in `base` plus an unfriendly coloring of `H₀`.
    pub fn initial(&self, base: &PartialColoring) -> Result<EngineState> {
        if base.n() != self.g.n() {
            return Err(Error::input("coloring and graph sizes differ"));
        }
        if let Some(v) = self.t.members().iter().find(|&v| base.is_colored(v)) {
            return Err(Error::contract(format!("tree vertex {v} is already colored")));
        }
        let core = self.regular_core();
        let mut c = base.clone();
        for w in core.iter() {
            c.set(w, self.hint.and_then(|h| h.get(w)).unwrap_or(false));
        }
        let c = greedy_within(self.g, &c, &core)?;
        let stable = StableColoring { coloring: c, h_part: core, x_part: self.g.empty_set() };
        let state = EngineState {
            stage: 0,
            stable,
            history: vec![CaseTag::Init],
            certificates: BTreeMap::new(),
        };
        self.check(&state.stable)?;
        Ok(state)
    }

    /// S1-S3 as an engine error.
    pub fn check(&self, sc: &StableColoring) -> Result<()> {
        match sc.violation(self.g, self.t, &self.h, &self.cfg)? {
            None => Ok(()),
            Some(v) => Err(Error::Engine(format!("stability violated: {v:?}"))),
        }
    }

    fn plan(&self, st: &StableColoring) -> Option<Plan> {
        let dom = st.domain(self.t);
        let h_out = self.h.difference(&dom);
        let s_out = self.s.difference(&dom);
        for w in h_out.iter() {
            let x = VertexSet::from_iter_in(
                self.g.n(),
                self.t.children(w).iter().copied().filter(|&u| {
                    s_out.contains(u) && self.g.omega_neighbors(w).contains(&u)
                }),
            );
            if !x.is_empty() {
                return Some(Plan::Case1 { w, x });
            }
        }
        for w in h_out.iter() {
            for v in s_out.iter() {
                if self.inf(w, &self.below(v)) {
                    return Some(Plan::Case2 { w, v });
                }
            }
        }
        for w in h_out.iter() {
            let mut strict = self.below(w);
            strict.remove(w);
            if strict.is_subset(&dom) {
                return Some(Plan::Case3 { w });
            }
        }
        let h_in = self.h.intersection(&dom);
        for w in h_out.iter() {
            if self.inf(w, &h_in) {
                return Some(Plan::Case4 { w });
            }
        }
        for w in h_out.iter() {
            for &u in self.t.children(w) {
                let sub = self.below(u);
                if sub.is_subset(&dom) && self.inf(w, &sub) {
                    return Some(Plan::Case5 { w, u });
                }
            }
        }
        let x_below = self.t.down_closure(&st.x_part);
        for w in self.h.iter().filter(|&w| !x_below.contains(w)) {
            let sub = self.below(w);
            let mut strict = sub.intersection(&self.h);
            strict.remove(w);
            if strict.is_subset(&dom) && !sub.is_subset(&dom) {
                return Some(Plan::Completion { w });
            }
        }
        None
    }

    /// H-vertices outside the domain declaring infinitely many neighbors in `region`.
    fn declaring(&self, dom: &VertexSet, region: &VertexSet) -> VertexSet {
        VertexSet::from_iter_in(
            self.g.n(),
            self.h.difference(dom).iter().filter(|&w| self.inf(w, region)),
        )
    }

    /// Seeds uncolored vertices in root-to-leaf order.
    fn seed(&self, c: &mut PartialColoring, vs: &VertexSet) {
        let mut order = vs.to_vec();
        order.sort_by_key(|&v| (self.t.depth(v), v));
        for v in order {
            if !c.is_colored(v) {
                let col = seed_color(self.g, c, v, self.hint);
                c.set(v, col);
            }
        }
    }

    fn certify(
        &self,
        c: &PartialColoring,
        vs: &VertexSet,
        region: &VertexSet,
        case: CaseTag,
        into: &mut BTreeMap<usize, Certificate>,
    ) {
        for w in vs.iter() {
            let (mut opposite, mut same) = (0, 0);
            for &u in self.g.omega_neighbors(w) {
                if !region.contains(u) {
                    continue;
                }
                match (c.get(u), c.get(w)) {
                    (Some(a), Some(b)) if a != b => opposite += 1,
                    (Some(_), Some(_)) => same += 1,
                    _ => {}
                }
            }
            into.insert(w, Certificate { case, opposite, same });
        }
    }

    /// Applies the first applicable case, or returns `None` when none applies.
    pub fn case_step(&self, state: &EngineState) -> Result<Option<EngineState>> {
        self.check(&state.stable)?;
        match self.plan(&state.stable) {
            None => Ok(None),
            Some(plan) => self.apply(state, plan).map(Some),
        }
    }

    fn apply(&self, state: &EngineState, plan: Plan) -> Result<EngineState> {
        let old = &state.stable;
        let dom = old.domain(self.t);
        let mut certificates = state.certificates.clone();
        let (tag, coloring, h_part, x_part) = match plan {
            Plan::Case1 { x, .. } => {
                let sub = self.t.down_closure(&x);
                let new_h = self.g.neighborhood(&sub)?.intersection(self.t.members()).difference(&dom);
                let (c, h_part, x_part) = self.absorb(old, &x, &new_h, CaseTag::Case1, &mut certificates)?;
                (CaseTag::Case1, c, h_part, x_part)
            }
            Plan::Case2 { v, .. } => {
                let x = self.g.set_of([v]);
                let new_h = self.declaring(&dom, &self.below(v));
                let (c, h_part, x_part) = self.absorb(old, &x, &new_h, CaseTag::Case2, &mut certificates)?;
                (CaseTag::Case2, c, h_part, x_part)
            }
            Plan::Case3 { w } | Plan::Completion { w } => {
                let tag = if matches!(plan, Plan::Case3 { .. }) { CaseTag::Case3 } else { CaseTag::Completion };
                let sub = self.below(w);
                let mut i_w = self.declaring(&dom, &sub);
                i_w.remove(w);
                let xs = self.s.intersection(&sub).difference(&dom);
                let mut c = old.coloring.clone();
                let mut fresh = i_w.clone();
                if !c.is_colored(w) {
                    fresh.insert(w);
                }
                self.seed(&mut c, &fresh);
                let c = extend_subtrees_with(self.g, self.t, &c, &xs, self.hint, &self.cfg)?;
                let c = oppose(self.g, &c, &fresh, &sub, &self.cfg)?;
                let rest = old.x_part.difference(&sub);
                let new = c.domain().difference(&old.coloring.domain());
                let c = fix_subtrees(self.g, self.t, &c, &rest, &new, &self.cfg)?;
                self.certify(&c, &i_w, &sub, tag, &mut certificates);
                let mut x_part = rest;
                x_part.insert(w);
                let h_part = old.h_part.difference(&sub).union(&i_w);
                (tag, c, h_part, x_part)
            }
            Plan::Case4 { w } => {
                let h_in = self.h.intersection(&dom);
                let c0 = &old.coloring;
                let count = |col: bool, vs: &mut dyn Iterator<Item = usize>| {
                    vs.filter(|&u| c0.get(u) == Some(col)).count()
                };
                let omega_in: Vec<usize> = self
                    .g
                    .omega_neighbors(w)
                    .iter()
                    .copied()
                    .filter(|&u| h_in.contains(u))
                    .collect();
                let (z, o) = (
                    count(false, &mut omega_in.iter().copied()),
                    count(true, &mut omega_in.iter().copied()),
                );
                let i = if o != z {
                    o > z
                } else {
                    let (az, ao) = (
                        count(false, &mut self.g.neighbors(w).iter().copied()),
                        count(true, &mut self.g.neighbors(w).iter().copied()),
                    );
                    ao > az
                };
                let mut c = c0.clone();
                c.set(w, !i);
                let new = self.g.set_of([w]);
                let c = fix_subtrees(self.g, self.t, &c, &old.x_part, &new, &self.cfg)?;
                self.certify(&c, &new, &h_in, CaseTag::Case4, &mut certificates);
                let mut h_part = old.h_part.clone();
                h_part.insert(w);
                (CaseTag::Case4, c, h_part, old.x_part.clone())
            }
            Plan::Case5 { u, .. } => {
                let sub = self.below(u);
                let i_w = self.declaring(&dom, &sub);
                let mut c = old.coloring.clone();
                self.seed(&mut c, &i_w);
                let c = oppose(self.g, &c, &i_w, &sub, &self.cfg)?;
                let rest = old.x_part.difference(&sub);
                let c = fix_subtrees(self.g, self.t, &c, &rest, &i_w, &self.cfg)?;
                self.certify(&c, &i_w, &sub, CaseTag::Case5, &mut certificates);
                let mut x_part = rest;
                x_part.insert(u);
                let h_part = old.h_part.difference(&sub).union(&i_w);
                (CaseTag::Case5, c, h_part, x_part)
            }
        };
        let next = StableColoring { coloring, h_part, x_part };
        self.check_progress(old, &next)?;
        self.check(&next)?;
        let mut history = state.history.clone();
        history.push(tag);
        Ok(EngineState { stage: state.stage + 1, stable: next, history, certificates })
    }

    /// Case 1 and 2 share everything but the choice of `x` and `new_h`.
    fn absorb(
        &self,
        old: &StableColoring,
        x: &VertexSet,
        new_h: &VertexSet,
        tag: CaseTag,
        certificates: &mut BTreeMap<usize, Certificate>,
    ) -> Result<(PartialColoring, VertexSet, VertexSet)> {
        let sub = self.t.down_closure(x);
        let mut c = old.coloring.clone();
        self.seed(&mut c, new_h);
        let c = extend_subtrees_with(self.g, self.t, &c, x, self.hint, &self.cfg)?;
        let c = oppose(self.g, &c, new_h, &sub, &self.cfg)?;
        let new = c.domain().difference(&old.coloring.domain());
        let c = fix_subtrees(self.g, self.t, &c, &old.x_part, &new, &self.cfg)?;
        self.certify(&c, new_h, &sub, tag, certificates);
        Ok((c, old.h_part.union(new_h), old.x_part.union(x)))
    }

    fn check_progress(&self, old: &StableColoring, next: &StableColoring) -> Result<()> {
        let before = old.domain(self.t);
        let after = next.domain(self.t);
        if !before.is_subset(&after) || before == after {
            return Err(Error::Engine("step did not strictly grow the domain".into()));
        }
        for v in 0..self.g.n() {
            if old.coloring.is_colored(v)
                && !self.g.is_finite(v)
                && old.coloring.get(v) != next.coloring.get(v)
            {
                return Err(Error::Engine(format!(
                    "Infinite-labeled vertex {v} changed color"
                )));
            }
            if old.coloring.is_frozen(v) && old.coloring.get(v) != next.coloring.get(v) {
                return Err(Error::Engine(format!("frozen vertex {v} changed color")));
            }
        }
        Ok(())
    }

    /// Runs to a halt. A halt short of the whole tree is reported with the
    /// stall chain.
    pub fn run(&self, base: &PartialColoring) -> Result<EngineState> {
        let mut state = self.initial(base)?;
        while let Some(next) = self.case_step(&state)? {
            state = next;
        }
        let report = self.stall_chain(&state);
        if !report.uncovered.is_empty() {
            return Err(Error::Engine(format!(
                "stalled with uncovered vertices {:?}; chain {:?}",
                report.uncovered, report.chain
            )));
        }
        Ok(state)
    }

    /// The chain `(w_n, u_n, x_n)` through the uncovered part of the tree:
    /// `w_n` is the first uncovered H-vertex below the previous link, `u_n` a
    /// child of `w_n` whose subtree it declares infinitely many neighbors in
    /// and which is not yet covered, `x_n` an uncovered vertex there.
    pub fn stall_chain(&self, state: &EngineState) -> StallReport {
        let dom = state.stable.domain(self.t);
        let uncovered = self.t.members().difference(&dom);
        let mut chain = Vec::new();
        let mut top = self.t.root();
        loop {
            let w = self.t.subtree(top).iter().copied().find(|&v| {
                self.h.contains(v) && uncovered.contains(v)
            });
            let Some(w) = w else { break };
            let u = self.t.children(w).iter().copied().find(|&u| {
                let sub = self.below(u);
                self.inf(w, &sub) && !sub.is_subset(&dom)
            });
            let x = u.and_then(|u| self.below(u).difference(&dom).first());
            chain.push(ChainLink { w, u, x });
            match u {
                Some(u) if chain.len() <= self.g.n() => top = u,
                _ => break,
            }
        }
        StallReport { uncovered: uncovered.to_vec(), chain }
    }
}

/// One step on a fresh engine with no hint and default capacity.
pub fn case_step(g: &Graph, t: &TreeOrder, state: &EngineState) -> Result<Option<EngineState>> {
    Engine::new(g, t, None, OracleConfig::default())?.case_step(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_unfriendly_at;
    use crate::graph::DegreeClass::{Finite as F, Infinite as I};
    use crate::tree::dfs_normal_tree;

    fn omega_star(leaves: usize) -> Graph {
        let mut labels = vec![F; leaves + 1];
        labels[0] = I;
        let mut g = Graph::star(leaves).with_labels(labels).unwrap();
        for leaf in 1..=leaves {
            g.declare_omega(0, leaf).unwrap();
        }
        g
    }

    #[test]
    fn star_case1_covers_everything() {
        let g = omega_star(4);
        let t = dfs_normal_tree(&g, 0).unwrap();
        let e = Engine::new(&g, &t, None, OracleConfig::default()).unwrap();
        let st = e.initial(&PartialColoring::new(5)).unwrap();
        assert!(st.stable.h_part.is_empty());
        let next = e.case_step(&st).unwrap().unwrap();
        assert_eq!(next.history, vec![CaseTag::Init, CaseTag::Case1]);
        assert!(next.stable.coloring.is_total());
        let center = next.stable.coloring.get(0);
        for leaf in 1..5 {
            assert_ne!(next.stable.coloring.get(leaf), center);
        }
        assert_eq!(next.certificates[&0], Certificate { case: CaseTag::Case1, opposite: 4, same: 0 });
        assert!(e.case_step(&next).unwrap().is_none());
    }

    #[test]
    fn plain_star_falls_to_case3() {
        let g = Graph::star(3).with_labels(vec![I, F, F, F]).unwrap();
        let t = dfs_normal_tree(&g, 0).unwrap();
        let e = Engine::new(&g, &t, None, OracleConfig::default()).unwrap();
        let st = e.run(&PartialColoring::new(4)).unwrap();
        // no declared adjacency: only the completion step can absorb the leaves
        assert_eq!(st.history, vec![CaseTag::Init, CaseTag::Completion]);
        assert!(is_unfriendly_at(&g, &st.stable.coloring, 0).unwrap());
    }

    #[test]
    fn regular_clique_halts_at_once() {
        let mut g = Graph::complete(4).with_labels(vec![I; 4]).unwrap();
        for (u, v) in g.edges() {
            g.declare_omega(u, v).unwrap();
            g.declare_omega(v, u).unwrap();
        }
        let t = dfs_normal_tree(&g, 0).unwrap();
        let e = Engine::new(&g, &t, None, OracleConfig::default()).unwrap();
        let st = e.initial(&PartialColoring::new(4)).unwrap();
        assert_eq!(st.stable.h_part, g.vertices());
        assert!(e.case_step(&st).unwrap().is_none());
        for v in 0..4 {
            assert!(is_unfriendly_at(&g, &st.stable.coloring, v).unwrap());
        }
    }

    #[test]
    fn case4_takes_the_minority_side() {
        // root 0 declares its Finite leaves 1, 2; vertex 3 declares 0 and
        // carries an undeclared Finite leaf 4
        let mut g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (3, 4)], vec![I, F, F, I, F]).unwrap();
        g.declare_omega(0, 1).unwrap();
        g.declare_omega(0, 2).unwrap();
        g.declare_omega(3, 0).unwrap();
        let t = dfs_normal_tree(&g, 0).unwrap();
        let e = Engine::new(&g, &t, None, OracleConfig::default()).unwrap();
        let st = e.initial(&PartialColoring::new(5)).unwrap();
        assert!(st.stable.h_part.is_empty());
        let st = e.case_step(&st).unwrap().unwrap();
        assert_eq!(st.history.last(), Some(&CaseTag::Case1));
        assert_eq!(st.stable.h_part.to_vec(), vec![0]);
        let st = e.case_step(&st).unwrap().unwrap();
        assert_eq!(st.history.last(), Some(&CaseTag::Case4));
        assert_ne!(st.stable.coloring.get(3), st.stable.coloring.get(0));
        assert_eq!(st.certificates[&3], Certificate { case: CaseTag::Case4, opposite: 1, same: 0 });
        let st = e.case_step(&st).unwrap().unwrap();
        assert_eq!(st.history.last(), Some(&CaseTag::Completion));
        assert!(st.stable.coloring.is_total());
        assert!(e.case_step(&st).unwrap().is_none());
    }

    #[test]
    fn case3_absorbs_covered_subtree() {
        // 1 declares its leaf 2 and is absorbed first; then 0 has everything
        // below it covered
        let mut g = Graph::new(3, &[(0, 1), (1, 2)], vec![I, I, F]).unwrap();
        g.declare_omega(1, 2).unwrap();
        let t = dfs_normal_tree(&g, 0).unwrap();
        let e = Engine::new(&g, &t, None, OracleConfig::default()).unwrap();
        let done = e.run(&PartialColoring::new(3)).unwrap();
        assert_eq!(done.history, vec![CaseTag::Init, CaseTag::Case1, CaseTag::Case3]);
        assert_eq!(done.stable.x_part.to_vec(), vec![0]);
        assert!(done.stable.h_part.is_empty());
    }

    #[test]
    fn case5_absorbs_declared_subtree() {
        // unreachable from a stable state once Case 4 is tried first, so the
        // step is exercised directly
        let mut g = Graph::new(4, &[(0, 1), (1, 2), (0, 2), (0, 3)], vec![I, I, F, F]).unwrap();
        g.declare_omega(0, 2).unwrap();
        let t = dfs_normal_tree(&g, 0).unwrap();
        let e = Engine::new(&g, &t, None, OracleConfig::default()).unwrap();
        let mut c = PartialColoring::new(4);
        c.set(1, false);
        c.set(2, true);
        let st = EngineState {
            stage: 3,
            stable: StableColoring { coloring: c, h_part: g.empty_set(), x_part: g.set_of([1]) },
            history: vec![CaseTag::Init],
            certificates: BTreeMap::new(),
        };
        assert_eq!(e.plan(&st.stable), Some(Plan::Case5 { w: 0, u: 1 }));
        let next = e.apply(&st, Plan::Case5 { w: 0, u: 1 }).unwrap();
        assert_eq!(next.stable.h_part.to_vec(), vec![0]);
        assert_eq!(next.stable.x_part.to_vec(), vec![1]);
        assert_eq!(next.stable.coloring.get(1), Some(false));
        assert_eq!(next.certificates[&0], Certificate { case: CaseTag::Case5, opposite: 1, same: 0 });
    }

    #[test]
    fn persistence_violation_is_loud() {
        let g = omega_star(2);
        let t = dfs_normal_tree(&g, 0).unwrap();
        let e = Engine::new(&g, &t, None, OracleConfig::default()).unwrap();
        let old = StableColoring {
            coloring: PartialColoring::from_bits(&[0, 1, 1]),
            h_part: g.set_of([0]),
            x_part: g.set_of([1, 2]),
        };
        let mut next = old.clone();
        next.coloring.set(0, true);
        assert!(matches!(e.check_progress(&old, &next), Err(Error::Engine(_))));
    }

    #[test]
    fn stall_chain_on_constructed_state() {
        // path of Infinite vertices 0-1-2 with a Finite leaf 3 under 2; 0
        // declares into ⌊1⌋ and 1 into ⌊2⌋
        let mut g = Graph::path(4).with_labels(vec![I, I, I, F]).unwrap();
        g.declare_omega(0, 1).unwrap();
        g.declare_omega(1, 2).unwrap();
        let t = dfs_normal_tree(&g, 0).unwrap();
        let e = Engine::new(&g, &t, None, OracleConfig::default()).unwrap();
        let st = EngineState {
            stage: 0,
            stable: StableColoring {
                coloring: PartialColoring::new(4),
                h_part: g.empty_set(),
                x_part: g.empty_set(),
            },
            history: vec![CaseTag::Init],
            certificates: BTreeMap::new(),
        };
        let r = e.stall_chain(&st);
        assert_eq!(r.uncovered, vec![0, 1, 2, 3]);
        assert_eq!(
            r.chain,
            vec![
                ChainLink { w: 0, u: Some(1), x: Some(1) },
                ChainLink { w: 1, u: Some(2), x: Some(2) },
                ChainLink { w: 2, u: None, x: None },
            ]
        );
        // the real run covers everything
        let done = e.run(&PartialColoring::new(4)).unwrap();
        assert!(done.stable.coloring.is_total());
    }
}
