//! Finite simple graphs with degree-class labels.
//!
//! Vertices are dense ids `0..n`. Every vertex carries a [`DegreeClass`]
//! which is presentation metadata: a finite truncation of an infinite star
//! has a center of finite degree that is still labeled [`DegreeClass::Infinite`].
//!
//! A graph may additionally declare, per vertex, a set of neighbors that
//! belong to an infinite family in the presented graph ("omega" neighbors).
//! The stable-coloring engine reads every "infinitely many neighbors in Y"
//! predicate from this declaration and never from raw counts.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeClass {
    Finite,
    Infinite,
}

impl DegreeClass {
    pub fn opposite(self) -> Self {
        match self {
            DegreeClass::Finite => DegreeClass::Infinite,
            DegreeClass::Infinite => DegreeClass::Finite,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DegreeClass::Finite => "finite",
            DegreeClass::Infinite => "infinite",
        }
    }
}

impl Default for DegreeClass {
    fn default() -> Self {
        DegreeClass::Finite
    }
}

/// A subset of `0..capacity`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(capacity),
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(capacity);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn from_iter_in(capacity: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = VertexSet::new(capacity);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let was = self.bits.contains(v);
        self.bits.insert(v);
        !was
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.set(v, false);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn symmetric_difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.bits.symmetric_difference_with(&other.bits);
        s
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    adj_bits: Vec<VertexSet>,
    labels: Vec<DegreeClass>,
    omega: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .field("labels", &self.labels)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)], labels: Vec<DegreeClass>) -> Result<Self> {
        if labels.len() != n {
            return Err(Error::input(format!(
                "expected {n} labels, got {}",
                labels.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        let mut adj_bits = vec![VertexSet::new(n); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::input(format!("edges[{i}]: self-loop at vertex {u}")));
            }
            if adj_bits[u].contains(v) {
                return Err(Error::input(format!("edges[{i}]: duplicate edge {u}-{v}")));
            }
            adj_bits[u].insert(v);
            adj_bits[v].insert(u);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            adj,
            adj_bits,
            labels,
            omega: vec![Vec::new(); n],
            names: None,
            edge_count: edges.len(),
        })
    }

    pub fn unlabeled(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new(n, edges, vec![DegreeClass::Finite; n])
    }

    pub fn empty() -> Self {
        Graph::unlabeled(0, &[]).expect("empty graph")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::unlabeled(n, &edges).expect("path")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((0, n - 1));
        }
        Graph::unlabeled(n, &edges).expect("cycle")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::unlabeled(n, &edges).expect("complete")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::unlabeled(a + b, &edges).expect("complete bipartite")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::unlabeled(leaves + 1, &edges).expect("star")
    }

    pub fn with_labels(mut self, labels: Vec<DegreeClass>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::input(format!(
                "expected {} labels, got {}",
                self.n,
                labels.len()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Attaches external names, one per vertex.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::input(format!(
                "expected {} names, got {}",
                self.n,
                names.len()
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, v: usize) -> Option<&str> {
        self.names.as_ref().map(|n| n[v].as_str())
    }

    /// Declares `u` as a member of an infinite neighbor family of `w`.
    pub fn declare_omega(&mut self, w: usize, u: usize) -> Result<()> {
        self.check_vertex(w)?;
        self.check_vertex(u)?;
        if !self.adj_bits[w].contains(u) {
            return Err(Error::input(format!(
                "omega declaration {w}->{u} is not an edge"
            )));
        }
        if let Err(pos) = self.omega[w].binary_search(&u) {
            self.omega[w].insert(pos, u);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn label(&self, v: usize) -> DegreeClass {
        self.labels[v]
    }

    pub fn labels(&self) -> &[DegreeClass] {
        &self.labels
    }

    pub fn is_finite(&self, v: usize) -> bool {
        self.labels[v] == DegreeClass::Finite
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.adj_bits[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj_bits[u].contains(v)
    }

    /// Declared-infinite neighbors of `w`, ascending.
    pub fn omega_neighbors(&self, w: usize) -> &[usize] {
        &self.omega[w]
    }

    pub fn has_omega(&self) -> bool {
        self.omega.iter().any(|o| !o.is_empty())
    }

    /// Whether `N(w) ∩ set` is declared infinite.
    pub fn declares_infinite(&self, w: usize, set: &VertexSet) -> bool {
        self.omega[w].iter().any(|&u| set.contains(u))
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n)
    }

    pub fn set_of(&self, it: impl IntoIterator<Item = usize>) -> VertexSet {
        VertexSet::from_iter_in(self.n, it)
    }

    pub fn vertices_with(&self, class: DegreeClass) -> VertexSet {
        self.set_of((0..self.n).filter(|&v| self.labels[v] == class))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::OutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, a: &VertexSet) -> Result<()> {
        if a.capacity() != self.n {
            if let Some(v) = a.iter().find(|&v| v >= self.n) {
                return Err(Error::OutOfRange { vertex: v, n: self.n });
            }
        }
        Ok(())
    }

    /// Coerces a set to this graph's capacity after a range check.
    pub(crate) fn normalize(&self, a: &VertexSet) -> Result<VertexSet> {
        self.check_set(a)?;
        if a.capacity() == self.n {
            Ok(a.clone())
        } else {
            Ok(self.set_of(a.iter()))
        }
    }

    /// `N(A)`: vertices outside `a` adjacent to some member of `a`.
    pub fn neighborhood(&self, a: &VertexSet) -> Result<VertexSet> {
        let a = self.normalize(a)?;
        let mut out = self.empty_set();
        for v in a.iter() {
            out.union_with(&self.adj_bits[v]);
        }
        out.difference_with(&a);
        Ok(out)
    }

    /// `G[A]`, with vertices renumbered in ascending order of their old ids.
    /// Declared omega neighbors inside `a` are carried over.
    pub fn induced(&self, a: &VertexSet) -> Result<Graph> {
        Ok(self.induced_with_map(a)?.0)
    }

    /// Like [`Graph::induced`], also returning the new-to-old vertex map.
    pub fn induced_with_map(&self, a: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        let a = self.normalize(a)?;
        let map: Vec<usize> = a.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &u) in map.iter().enumerate() {
            for &v in &self.adj[u] {
                if u < v && index[v] != usize::MAX {
                    edges.push((i, index[v]));
                }
            }
        }
        let labels = map.iter().map(|&v| self.labels[v]).collect();
        let mut g = Graph::new(map.len(), &edges, labels)?;
        if let Some(names) = &self.names {
            g.names = Some(map.iter().map(|&v| names[v].clone()).collect());
        }
        for (i, &u) in map.iter().enumerate() {
            for &v in &self.omega[u] {
                if index[v] != usize::MAX {
                    g.declare_omega(i, index[v])?;
                }
            }
        }
        Ok((g, map))
    }

    /// Connected components of `G[within]`, each ascending, ordered by least member.
    pub fn components_within(&self, within: &VertexSet) -> Vec<Vec<usize>> {
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        for s in within.iter() {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if within.contains(v) && seen.insert(v) {
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }
}
