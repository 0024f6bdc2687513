//! Exact constrained max-cut.
//!
//! The free vertices are split into connected components of `G[free]`; each
//! component is independent once everything else is fixed. Tree components
//! are solved by dynamic programming, the rest by branch and bound with a
//! cut upper bound. Among optimal assignments the one returned is the
//! lexicographically smallest in vertex-id order, where the preferred color of
//! each vertex (0 unless a preference coloring says otherwise) sorts first.

use crate::coloring::PartialColoring;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default cap on the size of a cyclic free component.
pub const DEFAULT_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest free component (containing a cycle) branch and bound accepts.
    pub cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_CAP }
    }
}

/// Max-cut over `free` with the rest of `c0` fixed; ties go to the
/// lexicographically smallest color vector.
pub fn oracle_maxcut(g: &Graph, c0: &PartialColoring, free: &VertexSet) -> Result<PartialColoring> {
    solve(g, c0, free, None, &OracleConfig::default())
}

/// Max-cut over `free` with the colored vertices of `c0` outside `free`
/// fixed. Vertices neither colored nor free are ignored. Ties prefer `pref`.
pub fn solve(
    g: &Graph,
    c0: &PartialColoring,
    free: &VertexSet,
    pref: Option<&PartialColoring>,
    cfg: &OracleConfig,
) -> Result<PartialColoring> {
    if c0.n() != g.n() {
        return Err(Error::input("coloring and graph sizes differ"));
    }
    let free = g.normalize(free)?;
    if let Some(v) = free.iter().find(|&v| c0.is_frozen(v)) {
        return Err(Error::contract(format!("free vertex {v} is frozen")));
    }
    let mut out = c0.clone();
    for v in free.iter() {
        out.unset(v);
    }
    for comp in g.components_within(&free) {
        let local = Component::build(g, &out, &comp, pref);
        let assignment = if local.is_tree() {
            local.solve_tree()
        } else if comp.len() > cfg.cap {
            return Err(Error::Capacity {
                what: "max-cut oracle component",
                size: comp.len(),
                cap: cfg.cap,
            });
        } else {
            local.solve_bnb()
        };
        for (i, &v) in comp.iter().enumerate() {
            out.set(v, assignment[i]);
        }
    }
    Ok(out)
}

struct Component {
    /// `gain[i][c]`: cut edges to fixed vertices when local vertex `i` takes color `c`.
    gain: Vec<[i64; 2]>,
    adj: Vec<Vec<usize>>,
    pref: Vec<bool>,
    edges: usize,
}

impl Component {
    fn build(g: &Graph, fixed: &PartialColoring, comp: &[usize], pref: Option<&PartialColoring>) -> Self {
        let k = comp.len();
        let mut index = std::collections::HashMap::with_capacity(k);
        for (i, &v) in comp.iter().enumerate() {
            index.insert(v, i);
        }
        let mut gain = vec![[0i64; 2]; k];
        let mut adj = vec![Vec::new(); k];
        let mut edges = 0;
        for (i, &v) in comp.iter().enumerate() {
            for &u in g.neighbors(v) {
                if let Some(&j) = index.get(&u) {
                    adj[i].push(j);
                    if i < j {
                        edges += 1;
                    }
                } else if let Some(cu) = fixed.get(u) {
                    // v earns this edge by taking the color opposite to u
                    gain[i][usize::from(!cu)] += 1;
                }
            }
        }
        let pref = comp
            .iter()
            .map(|&v| pref.and_then(|p| p.get(v)).unwrap_or(false))
            .collect();
        Component { gain, adj, pref, edges }
    }

    fn len(&self) -> usize {
        self.gain.len()
    }

    fn is_tree(&self) -> bool {
        self.edges + 1 == self.len()
    }

    fn value(&self, a: &[bool]) -> i64 {
        let mut val = 0;
        for i in 0..self.len() {
            val += self.gain[i][usize::from(a[i])];
            for &j in &self.adj[i] {
                if i < j && a[i] != a[j] {
                    val += 1;
                }
            }
        }
        val
    }

    /// Optimum of the tree under per-vertex constraints.
    fn tree_optimum(&self, fixed: &[Option<bool>]) -> i64 {
        const NEG: i64 = i64::MIN / 4;
        let k = self.len();
        let mut order = Vec::with_capacity(k);
        let mut parent = vec![usize::MAX; k];
        let mut seen = vec![false; k];
        seen[0] = true;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        let mut dp = vec![[0i64; 2]; k];
        for &u in order.iter().rev() {
            for c in 0..2 {
                if fixed[u].is_some_and(|f| usize::from(f) != c) {
                    dp[u][c] = NEG;
                    continue;
                }
                let mut val = self.gain[u][c];
                for &w in &self.adj[u] {
                    if parent[w] == u {
                        let same = dp[w][c];
                        let other = dp[w][1 - c] + 1;
                        val += same.max(other);
                    }
                }
                dp[u][c] = val;
            }
        }
        dp[0][0].max(dp[0][1])
    }

    fn solve_tree(&self) -> Vec<bool> {
        let k = self.len();
        let mut fixed: Vec<Option<bool>> = vec![None; k];
        let best = self.tree_optimum(&fixed);
        for i in 0..k {
            fixed[i] = Some(self.pref[i]);
            if self.tree_optimum(&fixed) != best {
                fixed[i] = Some(!self.pref[i]);
            }
        }
        fixed.into_iter().map(|c| c.expect("assigned")).collect()
    }

    /// Feasible starting value: the preferred assignment after single-vertex improvements.
    fn lower_bound(&self) -> i64 {
        let mut a = self.pref.clone();
        loop {
            let mut improved = false;
            for i in 0..self.len() {
                let mut delta = self.gain[i][usize::from(!a[i])] - self.gain[i][usize::from(a[i])];
                for &j in &self.adj[i] {
                    delta += if a[j] == a[i] { 1 } else { -1 };
                }
                if delta > 0 {
                    a[i] = !a[i];
                    improved = true;
                }
            }
            if !improved {
                return self.value(&a);
            }
        }
    }

    fn solve_bnb(&self) -> Vec<bool> {
        let k = self.len();
        // edges with both endpoints at local index >= i
        let mut suffix_edges = vec![0i64; k + 1];
        for i in (0..k).rev() {
            let later = self.adj[i].iter().filter(|&&j| j > i).count() as i64;
            suffix_edges[i] = suffix_edges[i + 1] + later;
        }
        let mut search = Bnb {
            comp: self,
            suffix_edges,
            assign: vec![false; k],
            seen: vec![[0i64; 2]; k],
            best_val: self.lower_bound(),
            found: false,
            best: Vec::new(),
        };
        search.rec(0, 0);
        debug_assert!(search.found);
        search.best
    }
}

struct Bnb<'a> {
    comp: &'a Component,
    suffix_edges: Vec<i64>,
    assign: Vec<bool>,
    /// `seen[j][c]`: assigned neighbors of `j` colored `c`.
    seen: Vec<[i64; 2]>,
    best_val: i64,
    found: bool,
    best: Vec<bool>,
}

impl Bnb<'_> {
    fn accepts(&self, val: i64) -> bool {
        if self.found {
            val > self.best_val
        } else {
            val >= self.best_val
        }
    }

    fn rec(&mut self, i: usize, cur: i64) {
        let k = self.comp.len();
        if i == k {
            if self.accepts(cur) {
                self.best_val = cur;
                self.found = true;
                self.best = self.assign.clone();
            }
            return;
        }
        let mut bound = cur + self.suffix_edges[i];
        for j in i..k {
            let g = self.comp.gain[j];
            bound += (g[0] + self.seen[j][1]).max(g[1] + self.seen[j][0]);
        }
        if !self.accepts(bound) {
            return;
        }
        let first = self.comp.pref[i];
        for c in [first, !first] {
            let ci = usize::from(c);
            let gained = self.comp.gain[i][ci] + self.seen[i][1 - ci];
            self.assign[i] = c;
            for &j in &self.comp.adj[i] {
                if j > i {
                    self.seen[j][ci] += 1;
                }
            }
            self.rec(i + 1, cur + gained);
            for &j in &self.comp.adj[i] {
                if j > i {
                    self.seen[j][ci] -= 1;
                }
            }
        }
    }
}
