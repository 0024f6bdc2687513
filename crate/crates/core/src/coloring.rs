//! Partial 2-colorings and the cut algebra over them: flips, `trans`,
//! `dtrans`, unfriendliness, closeness, and (almost) strong maximality.
//!
//! Every edge count on a partial coloring only sees edges whose endpoints
//! are both colored.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::solvers::oracle::{self, OracleConfig};

/// Largest candidate set that strong-maximality checks enumerate exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Default flip-distance bound for the almost-strong-maximality search.
pub const DEFAULT_FLIP_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    colors: Vec<Option<bool>>,
    frozen: VertexSet,
}

impl PartialColoring {
    /// The empty coloring over `n` vertices.
    pub fn new(n: usize) -> Self {
        PartialColoring {
            colors: vec![None; n],
            frozen: VertexSet::new(n),
        }
    }

    pub fn total(colors: &[bool]) -> Self {
        PartialColoring {
            colors: colors.iter().map(|&c| Some(c)).collect(),
            frozen: VertexSet::new(colors.len()),
        }
    }

    /// Total coloring from 0/1 values.
    pub fn from_bits(bits: &[u8]) -> Self {
        let colors: Vec<bool> = bits.iter().map(|&b| b != 0).collect();
        PartialColoring::total(&colors)
    }

    /// Total coloring whose vertex `v` gets bit `v` of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let colors: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        PartialColoring::total(&colors)
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn get(&self, v: usize) -> Option<bool> {
        self.colors.get(v).copied().flatten()
    }

    /// Color of a vertex known to be colored.
    pub fn color(&self, v: usize) -> bool {
        self.colors[v].expect("vertex is colored")
    }

    pub fn is_colored(&self, v: usize) -> bool {
        self.get(v).is_some()
    }

    pub fn set(&mut self, v: usize, c: bool) {
        self.colors[v] = Some(c);
    }

    pub fn unset(&mut self, v: usize) {
        self.colors[v] = None;
        self.frozen.remove(v);
    }

    pub fn freeze(&mut self, v: usize) -> Result<()> {
        if !self.is_colored(v) {
            return Err(Error::contract(format!("cannot freeze uncolored vertex {v}")));
        }
        self.frozen.insert(v);
        Ok(())
    }

    pub fn unfreeze_all(&mut self) {
        self.frozen = VertexSet::new(self.n());
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        self.frozen.contains(v)
    }

    pub fn frozen(&self) -> &VertexSet {
        &self.frozen
    }

    pub fn domain(&self) -> VertexSet {
        VertexSet::from_iter_in(
            self.n(),
            (0..self.n()).filter(|&v| self.colors[v].is_some()),
        )
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn colors(&self) -> &[Option<bool>] {
        &self.colors
    }

    /// Colors as 0/1 values, `None` for uncolored vertices.
    pub fn bits(&self) -> Vec<Option<u8>> {
        self.colors.iter().map(|c| c.map(u8::from)).collect()
    }

    /// Copy restricted to `keep`; frozen markers outside `keep` are dropped.
    pub fn restricted(&self, keep: &VertexSet) -> PartialColoring {
        let mut out = PartialColoring::new(self.n());
        for v in keep.iter() {
            if let Some(c) = self.get(v) {
                out.set(v, c);
                if self.is_frozen(v) {
                    out.frozen.insert(v);
                }
            }
        }
        out
    }

    /// Vertices colored in both and colored differently.
    pub fn diff(&self, other: &PartialColoring) -> VertexSet {
        VertexSet::from_iter_in(
            self.n(),
            (0..self.n()).filter(|&v| match (self.get(v), other.get(v)) {
                (Some(a), Some(b)) => a != b,
                _ => false,
            }),
        )
    }

    /// Whether `other` agrees with `self` on every vertex `self` colors.
    pub fn is_extended_by(&self, other: &PartialColoring) -> bool {
        (0..self.n()).all(|v| match self.get(v) {
            Some(c) => other.get(v) == Some(c),
            None => true,
        })
    }

    pub(crate) fn flip_unchecked(&mut self, v: usize) {
        if let Some(c) = self.colors[v] {
            self.colors[v] = Some(!c);
        }
    }
}

fn check_coloring(g: &Graph, c: &PartialColoring) -> Result<()> {
    if c.n() != g.n() {
        return Err(Error::input(format!(
            "coloring covers {} vertices, graph has {}",
            c.n(),
            g.n()
        )));
    }
    Ok(())
}

/// `c * F`: the coloring that differs from `c` exactly on `f`.
pub fn flip(c: &PartialColoring, f: &VertexSet) -> Result<PartialColoring> {
    let mut out = c.clone();
    for v in f.iter() {
        if v >= c.n() {
            return Err(Error::OutOfRange { vertex: v, n: c.n() });
        }
        if !c.is_colored(v) {
            return Err(Error::contract(format!("flip of uncolored vertex {v}")));
        }
        if c.is_frozen(v) {
            return Err(Error::contract(format!("flip of frozen vertex {v}")));
        }
        out.flip_unchecked(v);
    }
    Ok(out)
}

/// Cut edges of `c`, as `(min, max)` pairs in lexicographic order.
pub fn trans_edges(g: &Graph, c: &PartialColoring) -> Vec<(usize, usize)> {
    g.edges()
        .into_iter()
        .filter(|&(u, v)| matches!((c.get(u), c.get(v)), (Some(a), Some(b)) if a != b))
        .collect()
}

/// `trans(c, F)`: cut edges with at least one endpoint in `f`.
pub fn trans_at(g: &Graph, c: &PartialColoring, f: &VertexSet) -> Vec<(usize, usize)> {
    trans_edges(g, c)
        .into_iter()
        .filter(|&(u, v)| f.contains(u) || f.contains(v))
        .collect()
}

/// `|trans(c)|`.
pub fn cut_size(g: &Graph, c: &PartialColoring) -> usize {
    let mut cut = 0;
    for u in 0..g.n() {
        let Some(cu) = c.get(u) else { continue };
        for &v in g.neighbors(u) {
            if u < v && matches!(c.get(v), Some(cv) if cv != cu) {
                cut += 1;
            }
        }
    }
    cut
}

/// Cut edges lost minus cut edges gained when flipping `f`.
///
/// Negative exactly when flipping `f` strictly increases the cut.
pub fn dtrans(g: &Graph, c: &PartialColoring, f: &VertexSet) -> Result<i64> {
    check_coloring(g, c)?;
    let f = g.normalize(f)?;
    let mut d = 0i64;
    for u in f.iter() {
        let Some(cu) = c.get(u) else {
            return Err(Error::contract(format!("flip set contains uncolored vertex {u}")));
        };
        for &v in g.neighbors(u) {
            if f.contains(v) {
                continue;
            }
            match c.get(v) {
                Some(cv) if cv != cu => d += 1,
                Some(_) => d -= 1,
                None => {}
            }
        }
    }
    Ok(d)
}

/// Number of opposite- and same-colored neighbors of a colored vertex,
/// skipping uncolored neighbors.
pub(crate) fn opp_same(g: &Graph, c: &PartialColoring, v: usize) -> (usize, usize) {
    let cv = c.color(v);
    let mut opp = 0;
    let mut same = 0;
    for &u in g.neighbors(v) {
        match c.get(u) {
            Some(cu) if cu != cv => opp += 1,
            Some(_) => same += 1,
            None => {}
        }
    }
    (opp, same)
}

/// Whether `v` has at least as many opposite- as same-colored neighbors.
///
/// An uncolored `v` or neighbor makes the answer undetermined, which is an error.
pub fn is_unfriendly_at(g: &Graph, c: &PartialColoring, v: usize) -> Result<bool> {
    check_coloring(g, c)?;
    g.check_vertex(v)?;
    if !c.is_colored(v) {
        return Err(Error::Undetermined { vertex: v, neighbor: v });
    }
    if let Some(&u) = g.neighbors(v).iter().find(|&&u| !c.is_colored(u)) {
        return Err(Error::Undetermined { vertex: v, neighbor: u });
    }
    let (opp, same) = opp_same(g, c, v);
    Ok(opp >= same)
}

/// Finite-labeled, colored, unfrozen members of `a`: the admissible flip vertices.
pub fn flip_candidates(g: &Graph, c: &PartialColoring, a: &VertexSet) -> VertexSet {
    let mut out = g.empty_set();
    for v in a.iter() {
        if v < g.n() && g.is_finite(v) && c.is_colored(v) && !c.is_frozen(v) {
            out.insert(v);
        }
    }
    out
}

fn check_region(g: &Graph, c: &PartialColoring, a: &VertexSet) -> Result<VertexSet> {
    check_coloring(g, c)?;
    let a = g.normalize(a)?;
    if let Some(v) = a.iter().find(|&v| !c.is_colored(v)) {
        return Err(Error::contract(format!(
            "region vertex {v} lies outside the coloring's domain"
        )));
    }
    Ok(a)
}

/// An improving flip-set inside `a`, if one exists.
///
/// Exhaustive over subsets of the candidates when there are at most
/// [`EXHAUSTIVE_LIMIT`] of them; otherwise decided by the exact max-cut oracle.
pub fn improving_flip(
    g: &Graph,
    c: &PartialColoring,
    a: &VertexSet,
    cfg: &OracleConfig,
) -> Result<Option<VertexSet>> {
    let a = check_region(g, c, a)?;
    let cand = flip_candidates(g, c, &a).to_vec();
    if cand.is_empty() {
        return Ok(None);
    }
    if cand.len() <= EXHAUSTIVE_LIMIT {
        return Ok(exhaustive_improving(g, c, &cand));
    }
    let free = g.set_of(cand.iter().copied());
    let mut base = c.clone();
    for &v in &cand {
        base.unset(v);
    }
    let best = oracle::solve(g, &base, &free, Some(c), cfg)?;
    if cut_size(g, &best) > cut_size(g, c) {
        Ok(Some(best.diff(c)))
    } else {
        Ok(None)
    }
}

/// Gray-code walk over every subset of `cand`, tracking the cut gain.
fn exhaustive_improving(g: &Graph, c: &PartialColoring, cand: &[usize]) -> Option<VertexSet> {
    let mut cur = c.clone();
    let mut gain: i64 = 0;
    let mut members = g.empty_set();
    let total: u64 = 1 << cand.len();
    for step in 1..total {
        let bit = step.trailing_zeros() as usize;
        let v = cand[bit];
        let (opp, same) = opp_same(g, &cur, v);
        gain += same as i64 - opp as i64;
        cur.flip_unchecked(v);
        if members.contains(v) {
            members.remove(v);
        } else {
            members.insert(v);
        }
        if gain > 0 {
            return Some(members);
        }
    }
    None
}

/// No flip-set of Finite-labeled vertices of `a` has negative `dtrans`.
pub fn is_strongly_maximal_in(g: &Graph, c: &PartialColoring, a: &VertexSet) -> Result<bool> {
    is_strongly_maximal_in_with(g, c, a, &OracleConfig::default())
}

pub fn is_strongly_maximal_in_with(
    g: &Graph,
    c: &PartialColoring,
    a: &VertexSet,
    cfg: &OracleConfig,
) -> Result<bool> {
    Ok(improving_flip(g, c, a, cfg)?.is_none())
}

/// Certificate that two colorings are close in a region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosenessWitness {
    pub diff: Vec<usize>,
    pub region: Vec<usize>,
}

/// `c` and `other` are close in `a` when they differ only on Finite-labeled
/// vertices of `a` (finiteness is automatic on finite graphs).
pub fn is_close(
    g: &Graph,
    c: &PartialColoring,
    other: &PartialColoring,
    a: &VertexSet,
) -> Option<ClosenessWitness> {
    let diff = c.diff(other);
    let inside = diff.iter().all(|v| a.contains(v) && g.is_finite(v));
    inside.then(|| ClosenessWitness {
        diff: diff.to_vec(),
        region: a.to_vec(),
    })
}

/// Tri-state answer of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<T> {
    Yes(T),
    No,
    Unknown,
}

impl<T> Verdict<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }
}

/// Searches for a coloring strongly maximal in `a` and close to `c` there,
/// differing from `c` in at most `bound` vertices.
///
/// Returns `No` only when the bound covers every candidate, so the search was
/// complete; otherwise an exhausted search reports `Unknown`.
pub fn is_almost_strongly_maximal_in(
    g: &Graph,
    c: &PartialColoring,
    a: &VertexSet,
    bound: usize,
) -> Result<Verdict<PartialColoring>> {
    let a = check_region(g, c, a)?;
    let cfg = OracleConfig::default();
    let cand = flip_candidates(g, c, &a).to_vec();
    let free = g.set_of(cand.iter().copied());
    let mut base = c.clone();
    for &v in &cand {
        base.unset(v);
    }
    let best = oracle::solve(g, &base, &free, Some(c), &cfg)?;
    let target = cut_size(g, &best) as i64 - cut_size(g, c) as i64;
    let limit = bound.min(cand.len());
    for size in 0..=limit {
        let mut cur = c.clone();
        let mut chosen = Vec::with_capacity(size);
        if let Some(found) = search_combinations(g, &mut cur, &cand, 0, size, 0, target, &mut chosen) {
            let f = g.set_of(found);
            return Ok(Verdict::Yes(flip(c, &f)?));
        }
    }
    if bound >= cand.len() {
        Ok(Verdict::No)
    } else {
        Ok(Verdict::Unknown)
    }
}

#[allow(clippy::too_many_arguments)]
fn search_combinations(
    g: &Graph,
    cur: &mut PartialColoring,
    cand: &[usize],
    start: usize,
    remaining: usize,
    gain: i64,
    target: i64,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if remaining == 0 {
        return (gain == target).then(|| chosen.clone());
    }
    for i in start..=cand.len().saturating_sub(remaining) {
        let v = cand[i];
        let (opp, same) = opp_same(g, cur, v);
        cur.flip_unchecked(v);
        chosen.push(v);
        let found = search_combinations(
            g,
            cur,
            cand,
            i + 1,
            remaining - 1,
            gain + same as i64 - opp as i64,
            target,
            chosen,
        );
        chosen.pop();
        cur.flip_unchecked(v);
        if found.is_some() {
            return found;
        }
    }
    None
}
