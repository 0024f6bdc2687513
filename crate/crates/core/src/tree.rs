//! Rooted spanning trees and their tree-order.
//!
//! `u <= v` means `u` lies on the path from the root to `v`. Up-closures
//! collect ancestors, down-closures collect descendants; both include the
//! set itself. A tree is normal in a graph when every edge joins comparable
//! vertices; depth-first trees always are.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeOrder {
    root: usize,
    /// `parent[root] == Some(root)`; `None` for vertices outside the tree.
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    children: Vec<Vec<usize>>,
    /// Preorder position of each member.
    tin: Vec<usize>,
    /// Subtree size of each member.
    size: Vec<usize>,
    preorder: Vec<usize>,
    members: VertexSet,
}

impl TreeOrder {
    /// Builds a tree from a parent map over `n` vertices. Vertices with
    /// `None` are not members. Children are kept in ascending id order.
    pub fn from_parents(root: usize, parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if root >= n {
            return Err(Error::OutOfRange { vertex: root, n });
        }
        if parent[root] != Some(root) {
            return Err(Error::input(format!("root {root} must be its own parent")));
        }
        let mut children = vec![Vec::new(); n];
        let mut members = VertexSet::new(n);
        for v in 0..n {
            let Some(p) = parent[v] else { continue };
            if p >= n {
                return Err(Error::OutOfRange { vertex: p, n });
            }
            if parent[p].is_none() {
                return Err(Error::input(format!("parent {p} of {v} is not in the tree")));
            }
            if v != root && p == v {
                return Err(Error::input(format!("vertex {v} is its own parent but is not the root")));
            }
            members.insert(v);
            if v != root {
                children[p].push(v);
            }
        }
        let mut depth = vec![0; n];
        let mut tin = vec![usize::MAX; n];
        let mut size = vec![0; n];
        let mut preorder = Vec::with_capacity(members.len());
        let mut stack = vec![(root, 0usize)];
        tin[root] = 0;
        preorder.push(root);
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < children[v].len() {
                let c = children[v][*next];
                *next += 1;
                depth[c] = depth[v] + 1;
                tin[c] = preorder.len();
                preorder.push(c);
                stack.push((c, 0));
            } else {
                size[v] = preorder.len() - tin[v];
                stack.pop();
            }
        }
        if preorder.len() != members.len() {
            let stray = members.iter().find(|&v| tin[v] == usize::MAX).unwrap_or(root);
            return Err(Error::input(format!(
                "parent map is not a tree: vertex {stray} does not reach root {root}"
            )));
        }
        Ok(TreeOrder {
            root,
            parent,
            depth,
            children,
            tin,
            size,
            preorder,
            members,
        })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    /// Parent of a member; the root maps to itself.
    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent.get(v).copied().flatten()
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Members in preorder.
    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    /// `S(v)`: the children of `v`, ascending.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn successors(&self, v: usize) -> VertexSet {
        VertexSet::from_iter_in(self.n(), self.children[v].iter().copied())
    }

    /// `u <= v` in the tree-order.
    pub fn le(&self, u: usize, v: usize) -> bool {
        self.contains(u)
            && self.contains(v)
            && self.tin[u] <= self.tin[v]
            && self.tin[v] < self.tin[u] + self.size[u]
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.le(u, v) || self.le(v, u)
    }

    /// Descendants of `v` including `v`, in preorder.
    pub fn subtree(&self, v: usize) -> &[usize] {
        &self.preorder[self.tin[v]..self.tin[v] + self.size[v]]
    }

    /// `⌈v⌉` as a vertex list from the root down to `v`.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while cur != self.root {
            cur = self.parent[cur].expect("member");
            out.push(cur);
        }
        out.reverse();
        out
    }

    pub fn up_closure(&self, a: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n());
        for v in a.iter().filter(|&v| self.contains(v)) {
            let mut cur = v;
            while out.insert(cur) && cur != self.root {
                cur = self.parent[cur].expect("member");
            }
        }
        out
    }

    pub fn down_closure(&self, a: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n());
        for v in a.iter().filter(|&v| self.contains(v)) {
            if out.contains(v) {
                continue;
            }
            for &u in self.subtree(v) {
                out.insert(u);
            }
        }
        out
    }

    pub fn down_of(&self, v: usize) -> VertexSet {
        VertexSet::from_iter_in(self.n(), self.subtree(v).iter().copied())
    }

    pub fn up_of(&self, v: usize) -> VertexSet {
        VertexSet::from_iter_in(self.n(), self.ancestors(v))
    }

    /// `[A]`: union of up- and down-closures.
    pub fn full_closure(&self, a: &VertexSet) -> VertexSet {
        self.up_closure(a).union(&self.down_closure(a))
    }

    pub fn is_antichain(&self, a: &VertexSet) -> bool {
        let mut members: Vec<usize> = a.iter().filter(|&v| self.contains(v)).collect();
        members.sort_by_key(|&v| self.tin[v]);
        // in preorder, a comparable pair shows up as consecutive nesting
        members
            .windows(2)
            .all(|w| !self.le(w[0], w[1]))
    }

    /// ≤-minimal members of `a`.
    pub fn minimal(&self, a: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n());
        let mut last: Option<usize> = None;
        let mut members: Vec<usize> = a.iter().filter(|&v| self.contains(v)).collect();
        members.sort_by_key(|&v| self.tin[v]);
        for v in members {
            if let Some(l) = last {
                if self.le(l, v) {
                    continue;
                }
            }
            out.insert(v);
            last = Some(v);
        }
        out
    }

    pub fn lca(&self, u: usize, v: usize) -> usize {
        let (mut a, mut b) = (u, v);
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].expect("member");
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].expect("member");
        }
        while a != b {
            a = self.parent[a].expect("member");
            b = self.parent[b].expect("member");
        }
        a
    }

    /// `uTv`: the unique tree path from `u` to `v`.
    pub fn tree_path(&self, u: usize, v: usize) -> Vec<usize> {
        let top = self.lca(u, v);
        let mut up = vec![u];
        let mut cur = u;
        while cur != top {
            cur = self.parent[cur].expect("member");
            up.push(cur);
        }
        let mut down = Vec::new();
        let mut cur = v;
        while cur != top {
            down.push(cur);
            cur = self.parent[cur].expect("member");
        }
        down.reverse();
        up.extend(down);
        up
    }

    /// An edge of `g` (inside the tree) whose endpoints are incomparable.
    pub fn normality_violation(&self, g: &Graph) -> Option<(usize, usize)> {
        g.edges()
            .into_iter()
            .filter(|&(u, v)| self.contains(u) && self.contains(v))
            .find(|&(u, v)| !self.comparable(u, v))
    }

    pub fn is_normal(&self, g: &Graph) -> bool {
        self.normality_violation(g).is_none()
    }

    /// Members of the subtree at `v` whose neighborhood escapes `⌈v⌉ ∖ {v}`.
    /// Empty for normal trees.
    pub fn boundary_escape(&self, g: &Graph, v: usize) -> Vec<usize> {
        let down = self.down_of(v);
        let up = self.up_of(v);
        let mut out = Vec::new();
        for &u in self.subtree(v) {
            for &w in g.neighbors(u) {
                if self.contains(w) && !down.contains(w) && !up.contains(w) {
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Depth-first spanning tree of `g` from `root`, exploring neighbors in
/// ascending id order.
pub fn dfs_normal_tree(g: &Graph, root: usize) -> Result<TreeOrder> {
    dfs_normal_tree_within(g, &g.vertices(), root)
}

/// Depth-first spanning tree of `G[within]`. Fails if `G[within]` is disconnected.
pub fn dfs_normal_tree_within(g: &Graph, within: &VertexSet, root: usize) -> Result<TreeOrder> {
    g.check_vertex(root)?;
    if !within.contains(root) {
        return Err(Error::input(format!("root {root} is outside the vertex set")));
    }
    let n = g.n();
    let mut parent = vec![None; n];
    parent[root] = Some(root);
    let mut stack = vec![(root, 0usize)];
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        let nbrs = g.neighbors(v);
        let mut pushed = None;
        while *next < nbrs.len() {
            let u = nbrs[*next];
            *next += 1;
            if within.contains(u) && parent[u].is_none() {
                parent[u] = Some(v);
                pushed = Some(u);
                break;
            }
        }
        match pushed {
            Some(u) => stack.push((u, 0)),
            None => {
                stack.pop();
            }
        }
    }
    if let Some(unreached) = within.iter().find(|&v| parent[v].is_none()) {
        return Err(Error::Disconnected { root, unreached });
    }
    TreeOrder::from_parents(root, parent)
}

/// One depth-first tree per connected component, each rooted at its least vertex.
pub fn dfs_normal_forest(g: &Graph) -> Vec<TreeOrder> {
    g.components()
        .into_iter()
        .map(|comp| {
            let within = g.set_of(comp.iter().copied());
            dfs_normal_tree_within(g, &within, comp[0]).expect("component is connected")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_iter_in(n, v.iter().copied())
    }

    #[test]
    fn dfs_examples() {
        let k3 = Graph::complete(3);
        let t = dfs_normal_tree(&k3, 0).unwrap();
        assert_eq!(t.parents(), &[Some(0), Some(0), Some(1)]);
        assert!(t.le(0, 2));
        assert!(t.is_normal(&k3));

        let c4 = Graph::cycle(4);
        let t = dfs_normal_tree(&c4, 0).unwrap();
        assert_eq!(t.parents(), &[Some(0), Some(0), Some(1), Some(2)]);
        assert!(t.is_normal(&c4));

        let two = Graph::unlabeled(2, &[]).unwrap();
        assert_eq!(
            dfs_normal_tree(&two, 0),
            Err(Error::Disconnected { root: 0, unreached: 1 })
        );
    }

    #[test]
    fn bfs_tree_of_c4_is_not_normal() {
        let c4 = Graph::cycle(4);
        let t = TreeOrder::from_parents(0, vec![Some(0), Some(0), Some(1), Some(0)]).unwrap();
        assert!(!t.is_normal(&c4));
        assert_eq!(t.normality_violation(&c4), Some((2, 3)));
    }

    #[test]
    fn path_tree_is_normal() {
        let p = Graph::path(5);
        let t = TreeOrder::from_parents(0, vec![Some(0), Some(0), Some(1), Some(2), Some(3)]).unwrap();
        assert!(t.is_normal(&p));
    }

    #[test]
    fn closures_on_path() {
        let p = Graph::path(3);
        let t = dfs_normal_tree(&p, 0).unwrap();
        assert_eq!(t.up_closure(&set(3, &[1])).to_vec(), vec![0, 1]);
        assert_eq!(t.down_closure(&set(3, &[1])).to_vec(), vec![1, 2]);
        assert_eq!(t.down_closure(&set(3, &[0])).to_vec(), vec![0, 1, 2]);
        assert_eq!(t.full_closure(&set(3, &[1])).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn antichains() {
        let p = Graph::path(3);
        let t = dfs_normal_tree(&p, 0).unwrap();
        assert!(t.is_antichain(&set(3, &[1])));
        assert!(!t.is_antichain(&set(3, &[1, 2])));
        let star = Graph::star(3);
        let t = dfs_normal_tree(&star, 0).unwrap();
        assert!(t.is_antichain(&set(4, &[1, 3])));
        assert_eq!(t.minimal(&set(4, &[0, 2])).to_vec(), vec![0]);
    }

    #[test]
    fn successors_and_paths() {
        let p = Graph::path(3);
        let t = dfs_normal_tree(&p, 0).unwrap();
        assert_eq!(t.successors(0).to_vec(), vec![1]);
        assert_eq!(t.tree_path(0, 2), vec![0, 1, 2]);
        assert_eq!(t.tree_path(2, 0), vec![2, 1, 0]);
        assert_eq!(t.tree_path(1, 1), vec![1]);
        let star = Graph::star(3);
        let t = dfs_normal_tree(&star, 0).unwrap();
        assert_eq!(t.tree_path(1, 3), vec![1, 0, 3]);
    }

    #[test]
    fn rejects_non_trees() {
        assert!(TreeOrder::from_parents(0, vec![Some(0), Some(2), Some(1)]).is_err());
        assert!(TreeOrder::from_parents(0, vec![Some(1), Some(0)]).is_err());
    }

    #[test]
    fn forest_per_component() {
        let g = Graph::unlabeled(5, &[(0, 3), (1, 2), (2, 4)]).unwrap();
        let f = dfs_normal_forest(&g);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].root(), 0);
        assert_eq!(f[1].root(), 1);
        assert!(f.iter().all(|t| t.is_normal(&g)));
    }

    #[test]
    fn normal_tree_keeps_neighborhoods_above() {
        let g = Graph::unlabeled(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 1), (4, 5)]).unwrap();
        let t = dfs_normal_tree(&g, 0).unwrap();
        for v in 0..6 {
            assert!(t.boundary_escape(&g, v).is_empty());
        }
    }
}
