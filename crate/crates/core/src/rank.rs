//! Tree-rank of labeled vertices and the minimal-vertex decomposition.
//!
//! A vertex has rank 0 when its down-closure is label-homogeneous. Otherwise
//! its rank is the least value exceeding the rank of every opposite-class
//! vertex strictly below it. On finite trees every vertex is ranked.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DegreeClass, Graph, VertexSet};
use crate::tree::{dfs_normal_tree, TreeOrder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    /// Rank per vertex; `None` outside the tree.
    rank: Vec<Option<usize>>,
    root: usize,
}

impl RankTable {
    pub fn get(&self, v: usize) -> Option<usize> {
        self.rank.get(v).copied().flatten()
    }

    pub fn ranks(&self) -> &[Option<usize>] {
        &self.rank
    }

    pub fn root_rank(&self) -> usize {
        self.rank[self.root].expect("root is ranked")
    }
}

/// Ranks of every tree vertex, computed bottom-up.
///
/// The tree must be normal in `g`; otherwise this is a contract violation.
pub fn rank_table(g: &Graph, t: &TreeOrder) -> Result<RankTable> {
    if let Some((u, v)) = t.normality_violation(g) {
        return Err(Error::contract(format!(
            "tree is not normal: edge {u}-{v} joins incomparable vertices"
        )));
    }
    Ok(rank_table_unchecked(g, t))
}

pub(crate) fn rank_table_unchecked(g: &Graph, t: &TreeOrder) -> RankTable {
    let n = g.n();
    // below[v][class]: max rank of class members strictly below v, if any
    let mut below: Vec<[Option<usize>; 2]> = vec![[None, None]; n];
    let mut rank = vec![None; n];
    for &v in t.preorder().iter().rev() {
        let own = class_index(g.label(v));
        let opp = below[v][1 - own];
        let r = match opp {
            None => 0,
            Some(max) => max + 1,
        };
        rank[v] = Some(r);
        if v != t.root() {
            let p = t.parent(v).expect("member");
            for c in 0..2 {
                below[p][c] = max_opt(below[p][c], below[v][c]);
            }
            below[p][own] = max_opt(below[p][own], Some(r));
        }
    }
    RankTable { rank, root: t.root() }
}

fn class_index(c: DegreeClass) -> usize {
    match c {
        DegreeClass::Finite => 0,
        DegreeClass::Infinite => 1,
    }
}

fn max_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// `rank_T(G)`: the rank of the root.
pub fn graph_rank(g: &Graph, t: &TreeOrder) -> Result<usize> {
    Ok(rank_table(g, t)?.root_rank())
}

/// Minimum of `rank_T(G)` over the depth-first trees from every root, with
/// the smallest root id among ties. This is an upper bound on the rank
/// minimized over all normal spanning trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinRank {
    pub rank: usize,
    pub root: usize,
}

pub fn graph_rank_min(g: &Graph) -> Result<MinRank> {
    graph_rank_min_within(g, &g.vertices())
}

pub fn graph_rank_min_within(g: &Graph, within: &VertexSet) -> Result<MinRank> {
    let mut best: Option<MinRank> = None;
    for root in within.iter() {
        let t = crate::tree::dfs_normal_tree_within(g, within, root)?;
        let rank = rank_table_unchecked(g, &t).root_rank();
        if best.as_ref().map_or(true, |b| rank < b.rank) {
            best = Some(MinRank { rank, root });
        }
        if rank == 0 {
            break;
        }
    }
    best.ok_or_else(|| Error::input("rank of an empty graph is undefined"))
}

/// Convenience: the depth-first tree achieving [`graph_rank_min`].
pub fn min_rank_tree(g: &Graph) -> Result<(TreeOrder, MinRank)> {
    let m = graph_rank_min(g)?;
    Ok((dfs_normal_tree(g, m.root)?, m))
}

/// Minimal vertices of the minority class and the part of the tree above them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Class of the root; `s` collects minimal vertices of the opposite class.
    pub root_class: DegreeClass,
    pub s: VertexSet,
    /// Tree members outside `⌊S⌋`.
    pub h: VertexSet,
}

/// For a Finite root, `S` is the set of ≤-minimal Infinite-labeled vertices;
/// for an Infinite root, the ≤-minimal Finite-labeled ones. `H` is the rest of
/// the tree outside `⌊S⌋`, and is checked to be Infinite-only in the second case.
pub fn decompose(g: &Graph, t: &TreeOrder) -> Result<Decomposition> {
    let root_class = g.label(t.root());
    let target = root_class.opposite();
    let candidates = VertexSet::from_iter_in(
        g.n(),
        t.members().iter().filter(|&v| g.label(v) == target),
    );
    let s = t.minimal(&candidates);
    let h = t.members().difference(&t.down_closure(&s));
    if root_class == DegreeClass::Infinite {
        if let Some(v) = h.iter().find(|&v| g.is_finite(v)) {
            return Err(Error::Internal(format!(
                "Finite-labeled vertex {v} lies outside the down-closure of the minimal Finite set"
            )));
        }
    }
    Ok(Decomposition { root_class, s, h })
}
