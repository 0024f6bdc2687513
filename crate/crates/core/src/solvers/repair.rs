//! Flip repair, stitching and domain growth.
//!
//! All three are finite realizations of compactness statements: a coloring
//! that is strongly maximal somewhere stays close to a strongly maximal one
//! after a local disturbance. Improvements are searched by flip-set size first
//! and by the exact oracle only when small sets are exhausted.

use crate::coloring::{
    cut_size, flip, flip_candidates, improving_flip, is_strongly_maximal_in_with, is_unfriendly_at,
    opp_same, PartialColoring, DEFAULT_FLIP_BOUND,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::solvers::oracle::{self, OracleConfig};

/// Combination budget for the small flip-set search before the oracle takes over.
const SMALL_SEARCH_BUDGET: usize = 200_000;

/// Applies improving flip-sets inside `region` until none is left.
///
/// Returns the final coloring and the flip-sets applied, in order. Each step
/// strictly increases the cut.
pub fn improve_in(
    g: &Graph,
    c: &PartialColoring,
    region: &VertexSet,
    cfg: &OracleConfig,
) -> Result<(PartialColoring, Vec<VertexSet>)> {
    let mut cur = c.clone();
    let mut steps = Vec::new();
    loop {
        let cand = flip_candidates(g, &cur, region).to_vec();
        let f = match smallest_improving(g, &cur, &cand, DEFAULT_FLIP_BOUND) {
            Some(f) => Some(g.set_of(f)),
            None => improving_flip(g, &cur, region, cfg)?,
        };
        let Some(f) = f else { break };
        let before = cut_size(g, &cur);
        cur = flip(&cur, &f)?;
        debug_assert!(cut_size(g, &cur) > before);
        steps.push(f);
    }
    Ok((cur, steps))
}

/// Smallest improving flip-set of size at most `bound`, first in
/// lexicographic order within its size. `None` also when the budget runs out.
fn smallest_improving(
    g: &Graph,
    c: &PartialColoring,
    cand: &[usize],
    bound: usize,
) -> Option<Vec<usize>> {
    let mut budget = SMALL_SEARCH_BUDGET;
    let mut cur = c.clone();
    for size in 1..=bound.min(cand.len()) {
        let mut chosen = Vec::with_capacity(size);
        match search(g, &mut cur, cand, 0, size, 0, &mut chosen, &mut budget) {
            Search::Found(f) => return Some(f),
            Search::Exhausted => return None,
            Search::None => {}
        }
    }
    None
}

enum Search {
    Found(Vec<usize>),
    None,
    Exhausted,
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &Graph,
    cur: &mut PartialColoring,
    cand: &[usize],
    start: usize,
    remaining: usize,
    gain: i64,
    chosen: &mut Vec<usize>,
    budget: &mut usize,
) -> Search {
    if remaining == 0 {
        return if gain > 0 { Search::Found(chosen.clone()) } else { Search::None };
    }
    for i in start..=cand.len().saturating_sub(remaining) {
        if *budget == 0 {
            return Search::Exhausted;
        }
        *budget -= 1;
        let v = cand[i];
        let (opp, same) = opp_same(g, cur, v);
        cur.flip_unchecked(v);
        chosen.push(v);
        let r = search(g, cur, cand, i + 1, remaining - 1, gain + same as i64 - opp as i64, chosen, budget);
        chosen.pop();
        cur.flip_unchecked(v);
        if !matches!(r, Search::None) {
            return r;
        }
    }
    Search::None
}

fn require_total(g: &Graph, c: &PartialColoring) -> Result<()> {
    if c.n() != g.n() {
        return Err(Error::input("coloring and graph sizes differ"));
    }
    match (0..g.n()).find(|&v| !c.is_colored(v)) {
        Some(v) => Err(Error::contract(format!("coloring is not total: vertex {v} is uncolored"))),
        None => Ok(()),
    }
}

/// Flips `v` and repairs the damage inside `V ∖ d`.
///
/// `c` must be total and strongly maximal in `V ∖ d`; `v ∈ d` must be
/// unfrozen and either Finite-labeled or not unfriendly under `c`. The result
/// is strongly maximal in `V ∖ d` and differs from `c * {v}` only on
/// Finite-labeled vertices there.
pub fn repair_flip(g: &Graph, c: &PartialColoring, d: &VertexSet, v: usize) -> Result<PartialColoring> {
    repair_flip_with(g, c, d, v, &OracleConfig::default())
}

pub fn repair_flip_with(
    g: &Graph,
    c: &PartialColoring,
    d: &VertexSet,
    v: usize,
    cfg: &OracleConfig,
) -> Result<PartialColoring> {
    require_total(g, c)?;
    let d = g.normalize(d)?;
    g.check_vertex(v)?;
    if !d.contains(v) {
        return Err(Error::contract(format!("vertex {v} is not in d")));
    }
    let outside = g.vertices().difference(&d);
    if !is_strongly_maximal_in_with(g, c, &outside, cfg)? {
        return Err(Error::contract("coloring is not strongly maximal outside d"));
    }
    check_flippable(g, c, v)?;
    repair_unchecked(g, c, &outside, v, cfg)
}

fn check_flippable(g: &Graph, c: &PartialColoring, v: usize) -> Result<()> {
    if c.is_frozen(v) {
        return Err(Error::contract(format!("vertex {v} is frozen")));
    }
    if !g.is_finite(v) && is_unfriendly_at(g, c, v)? {
        return Err(Error::contract(format!(
            "Infinite-labeled vertex {v} is already unfriendly"
        )));
    }
    Ok(())
}

fn repair_unchecked(
    g: &Graph,
    c: &PartialColoring,
    outside: &VertexSet,
    v: usize,
    cfg: &OracleConfig,
) -> Result<PartialColoring> {
    let mut flipped = c.clone();
    flipped.flip_unchecked(v);
    Ok(improve_in(g, &flipped, outside, cfg)?.0)
}

/// Flips every vertex of `s ⊆ d` in turn, repairing `V ∖ d` after each.
///
/// Each member must qualify under the input coloring as in [`repair_flip`].
/// The output is strongly maximal in `V ∖ d` and close to `c * s` there.
pub fn repair_set(g: &Graph, c: &PartialColoring, d: &VertexSet, s: &VertexSet) -> Result<PartialColoring> {
    repair_set_with(g, c, d, s, &OracleConfig::default())
}

pub fn repair_set_with(
    g: &Graph,
    c: &PartialColoring,
    d: &VertexSet,
    s: &VertexSet,
    cfg: &OracleConfig,
) -> Result<PartialColoring> {
    require_total(g, c)?;
    let d = g.normalize(d)?;
    let s = g.normalize(s)?;
    if !s.is_subset(&d) {
        return Err(Error::contract("s is not a subset of d"));
    }
    if s.is_empty() {
        return Ok(c.clone());
    }
    let outside = g.vertices().difference(&d);
    if !is_strongly_maximal_in_with(g, c, &outside, cfg)? {
        return Err(Error::contract("coloring is not strongly maximal outside d"));
    }
    for v in s.iter() {
        check_flippable(g, c, v)?;
    }
    let mut cur = c.clone();
    for v in s.iter() {
        cur = repair_unchecked(g, &cur, &outside, v, cfg)?;
    }
    Ok(cur)
}

/// Merges colorings that are strongly maximal on separated blocks into one
/// strongly maximal in `a`, changing only Finite-labeled vertices of `a`.
///
/// Blocks must be disjoint subsets of `a` with no edges between them, and
/// `c_tilde` must be strongly maximal in each. Ties in the re-optimization
/// prefer `c_tilde`, so nothing moves when nothing has to.
pub fn stitch(
    g: &Graph,
    c_tilde: &PartialColoring,
    a: &VertexSet,
    blocks: &[VertexSet],
) -> Result<PartialColoring> {
    stitch_with(g, c_tilde, a, blocks, &OracleConfig::default())
}

pub fn stitch_with(
    g: &Graph,
    c_tilde: &PartialColoring,
    a: &VertexSet,
    blocks: &[VertexSet],
    cfg: &OracleConfig,
) -> Result<PartialColoring> {
    if c_tilde.n() != g.n() {
        return Err(Error::input("coloring and graph sizes differ"));
    }
    let a = g.normalize(a)?;
    let blocks: Vec<VertexSet> = blocks.iter().map(|b| g.normalize(b)).collect::<Result<_>>()?;
    if let Some(v) = a.iter().find(|&v| !c_tilde.is_colored(v)) {
        return Err(Error::contract(format!("vertex {v} of a is uncolored")));
    }
    for (i, b) in blocks.iter().enumerate() {
        if !b.is_subset(&a) {
            return Err(Error::input(format!("block {i} is not contained in a")));
        }
        for (j, other) in blocks.iter().enumerate().skip(i + 1) {
            if b.intersects(other) {
                return Err(Error::input(format!("blocks {i} and {j} overlap")));
            }
            if let Some((u, w)) = crossing_edge(g, b, other) {
                return Err(Error::input(format!(
                    "blocks {i} and {j} are adjacent via edge {u}-{w}"
                )));
            }
        }
    }
    for (i, b) in blocks.iter().enumerate() {
        if !is_strongly_maximal_in_with(g, c_tilde, b, cfg)? {
            return Err(Error::contract(format!("coloring is not strongly maximal in block {i}")));
        }
    }
    reoptimize(g, c_tilde, &a, cfg)
}

fn crossing_edge(g: &Graph, a: &VertexSet, b: &VertexSet) -> Option<(usize, usize)> {
    a.iter()
        .find_map(|u| g.neighbors(u).iter().find(|&&w| b.contains(w)).map(|&w| (u, w)))
}

/// Max-cut over the Finite-labeled, colored, unfrozen vertices of `region`,
/// everything else fixed, preferring the current colors on ties.
pub(crate) fn reoptimize(
    g: &Graph,
    c: &PartialColoring,
    region: &VertexSet,
    cfg: &OracleConfig,
) -> Result<PartialColoring> {
    let free = flip_candidates(g, c, region);
    if free.is_empty() {
        return Ok(c.clone());
    }
    oracle::solve(g, c, &free, Some(c), cfg)
}

/// Widens the region where `c` is strongly maximal from `a_small` to `a_big`.
///
/// The added vertices must be Finite-labeled. The witness comes from
/// stitching with the single block `a_small`.
pub fn grow_domain(
    g: &Graph,
    c: &PartialColoring,
    a_small: &VertexSet,
    a_big: &VertexSet,
) -> Result<PartialColoring> {
    let cfg = OracleConfig::default();
    let a_small = g.normalize(a_small)?;
    let a_big = g.normalize(a_big)?;
    if !a_small.is_subset(&a_big) {
        return Err(Error::contract("a_small is not contained in a_big"));
    }
    if let Some(v) = a_big.difference(&a_small).iter().find(|&v| !g.is_finite(v)) {
        return Err(Error::contract(format!(
            "added vertex {v} is Infinite-labeled"
        )));
    }
    stitch_with(g, c, &a_big, &[a_small], &cfg)
}

/// Extends a coloring strongly maximal on its domain `D` to every vertex.
///
/// `V ∖ D` must be Finite-labeled. `extension` supplies colors outside `D`
/// (any total coloring agreeing with `c` on `D`); the witness re-optimizes
/// inside `D` around the block `D ∖ N(V ∖ D)`, which the extension cannot
/// disturb.
pub fn grow_domain_total(
    g: &Graph,
    c: &PartialColoring,
    extension: &PartialColoring,
) -> Result<PartialColoring> {
    let cfg = OracleConfig::default();
    require_total(g, extension)?;
    if !c.is_extended_by(extension) {
        return Err(Error::contract("extension disagrees with the coloring on its domain"));
    }
    let dom = c.domain();
    let rest = g.vertices().difference(&dom);
    if let Some(v) = rest.iter().find(|&v| !g.is_finite(v)) {
        return Err(Error::contract(format!(
            "uncolored vertex {v} is Infinite-labeled"
        )));
    }
    if !is_strongly_maximal_in_with(g, c, &dom, &cfg)? {
        return Err(Error::contract("coloring is not strongly maximal on its domain"));
    }
    let block = dom.difference(&g.neighborhood(&rest)?);
    stitch_with(g, extension, &dom, &[block], &cfg)
}
