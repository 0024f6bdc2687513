//! Finitely presented countable graphs.
//!
//! A presentation is a labeled quotient digraph. Nodes tagged `one` stand for
//! a single concrete vertex; nodes tagged `omega` are replicated, one copy per
//! arc instance that creates them. The start copies are every `one` node plus
//! the first listed node. For an arc `a -> b`:
//!
//! * if `b` is a `one` node, every copy of `a` is adjacent to `b`;
//! * otherwise each copy of `a` gets one fresh `b`-child (arc tag `one`) or
//!   infinitely many (arc tag `omega`).
//!
//! Every copy has a level. Start copies sit at level 1. A child sits at its
//! parent's level, plus one when the arc stays inside a strongly connected
//! component of the quotient; the `k`-th child along an `omega` arc sits
//! `k - 1` levels further. `truncate(p, d)` keeps the copies of level at most
//! `d`, so each depth adds a fresh neighbor along every `omega` arc and one
//! more step along every cycle. Vertex ids are assigned by (level, name), so
//! a shallower truncation is an induced prefix of a deeper one.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DegreeClass, Graph};

/// Largest truncation the generator will build.
pub const MAX_TRUNCATION: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mult {
    One,
    Omega,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Node {
    pub id: String,
    #[serde(default = "finite")]
    pub class: DegreeClass,
    #[serde(default = "omega")]
    pub mult: Mult,
}

fn finite() -> DegreeClass {
    DegreeClass::Finite
}

fn omega() -> Mult {
    Mult::Omega
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    nodes: Vec<Node>,
    /// (from, to, tag) as node indices.
    arcs: Vec<(usize, usize, Mult)>,
    builtin: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    #[serde(default)]
    nodes: Vec<Node>,
    #[serde(default)]
    arcs: Vec<(String, String, Mult)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    builtin: Option<String>,
}

/// A start node, a path to a closed walk, and the walk itself.
///
/// `stem` runs from a start node to `cycle[0]` inclusive. `cycle` lists the
/// walk without repeating its first node; its last node has an arc back to
/// the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LassoWitness {
    pub stem: Vec<String>,
    pub cycle: Vec<String>,
}

impl Node {
    pub fn new(id: &str, class: DegreeClass, mult: Mult) -> Self {
        Node { id: id.into(), class, mult }
    }
}

impl Presentation {
    pub fn new(nodes: Vec<Node>, arcs: &[(&str, &str, Mult)]) -> Result<Self> {
        let arcs: Vec<(String, String, Mult)> =
            arcs.iter().map(|&(a, b, m)| (a.to_owned(), b.to_owned(), m)).collect();
        Presentation::build(nodes, arcs, None, true)
    }

    /// Like [`Presentation::new`] without the check that labels match the
    /// degrees of the expansion. Enough for quotient-level analysis such as
    /// [`detect_alternating_ray`]; truncations may then carry labels their
    /// degrees do not justify.
    pub fn quotient(nodes: Vec<Node>, arcs: &[(&str, &str, Mult)]) -> Result<Self> {
        let arcs: Vec<(String, String, Mult)> =
            arcs.iter().map(|&(a, b, m)| (a.to_owned(), b.to_owned(), m)).collect();
        Presentation::build(nodes, arcs, None, false)
    }

    fn build(
        nodes: Vec<Node>,
        arcs: Vec<(String, String, Mult)>,
        builtin: Option<String>,
        check_labels: bool,
    ) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Presentation("quotient has no nodes".into()));
        }
        let mut index = BTreeMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if index.insert(n.id.clone(), i).is_some() {
                return Err(Error::Presentation(format!("duplicate node id {:?}", n.id)));
            }
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Presentation(format!("arc endpoint {id:?} is not a node")))
        };
        let mut out = Vec::with_capacity(arcs.len());
        for (a, b, m) in &arcs {
            let (a, b) = (lookup(a)?, lookup(b)?);
            if nodes[b].mult == Mult::One && *m == Mult::Omega {
                return Err(Error::Presentation(format!(
                    "omega arc {:?} -> {:?} targets a single vertex",
                    nodes[a].id, nodes[b].id
                )));
            }
            if a == b && nodes[a].mult == Mult::One {
                return Err(Error::Presentation(format!(
                    "arc {:?} -> {:?} is a self-loop on a single vertex",
                    nodes[a].id, nodes[b].id
                )));
            }
            if out.iter().any(|&(x, y, _)| x == a && y == b) {
                return Err(Error::Presentation(format!(
                    "duplicate arc {:?} -> {:?}",
                    nodes[a].id, nodes[b].id
                )));
            }
            out.push((a, b, *m));
        }
        let p = Presentation { nodes, arcs: out, builtin };
        if check_labels {
            p.check_labels()?;
        }
        Ok(p)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[(usize, usize, Mult)] {
        &self.arcs
    }

    pub fn builtin_id(&self) -> Option<&str> {
        self.builtin.as_deref()
    }

    fn starts(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| i == 0 || self.nodes[i].mult == Mult::One)
            .collect()
    }

    fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().filter(move |x| x.0 == a).map(|x| x.1)
    }

    /// Strongly connected component index per node (Tarjan).
    fn scc_ids(&self) -> Vec<usize> {
        let succ: Vec<Vec<usize>> = (0..self.nodes.len()).map(|a| self.successors(a).collect()).collect();
        scc_ids(&succ)
    }

    fn is_nontrivial(&self, comp: &[usize], ids: &[usize]) -> bool {
        comp.len() > 1 || self.arcs.iter().any(|&(a, b, _)| a == b && ids[a] == ids[comp[0]])
    }

    fn reachable(&self, succ: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut queue: VecDeque<usize> = self.starts().into();
        for &s in &queue {
            seen[s] = true;
        }
        while let Some(a) = queue.pop_front() {
            for b in succ(a) {
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen
    }

    /// Whether copies of each node are infinitely many.
    fn infinitely_many(&self) -> Vec<bool> {
        let n = self.nodes.len();
        let creating = |a: usize| -> Vec<usize> {
            self.arcs
                .iter()
                .filter(|x| x.0 == a && self.nodes[x.1].mult == Mult::Omega)
                .map(|x| x.1)
                .collect()
        };
        let reach = self.reachable(creating);
        let succ: Vec<Vec<usize>> = (0..n).map(creating).collect();
        let ids = scc_ids(&succ);
        let mut inf = vec![false; n];
        let mut queue = VecDeque::new();
        for a in (0..n).filter(|&a| reach[a]) {
            let members: Vec<usize> = (0..n).filter(|&b| ids[b] == ids[a]).collect();
            let cyclic = members.len() > 1 || succ[a].contains(&a);
            if cyclic {
                queue.push_back(a);
            }
            for &(x, b, m) in &self.arcs {
                if x == a && m == Mult::Omega {
                    queue.push_back(b);
                }
            }
        }
        while let Some(a) = queue.pop_front() {
            if std::mem::replace(&mut inf[a], true) {
                continue;
            }
            queue.extend(succ[a].iter().copied());
        }
        inf
    }

    /// Labels must match the degrees the expansion produces.
    fn check_labels(&self) -> Result<()> {
        let inf = self.infinitely_many();
        let reach = self.reachable(|a| self.successors(a).collect());
        for (i, node) in self.nodes.iter().enumerate() {
            if !reach[i] {
                continue;
            }
            let omega_out = self.arcs.iter().any(|&(a, _, m)| a == i && m == Mult::Omega);
            let hub = node.mult == Mult::One && self.arcs.iter().any(|&(a, b, _)| b == i && inf[a]);
            let infinite = omega_out || hub;
            if infinite != (node.class == DegreeClass::Infinite) {
                return Err(Error::Presentation(format!(
                    "node {:?} is labeled {} but its copies have {} degree",
                    node.id,
                    node.class.as_str(),
                    if infinite { "infinite" } else { "finite" }
                )));
            }
        }
        Ok(())
    }
}

/// Tarjan's algorithm; component ids are in reverse topological order.
fn scc_ids(succ: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // explicit call stack of (node, next successor position)
        let mut calls = vec![(root, 0usize)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
            if let Some(&w) = succ[v].get(*pos) {
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(u, _)) = calls.last() {
                low[u] = low[u].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    comp
}

pub fn load_presentation(bytes: &[u8]) -> Result<Presentation> {
    let file: PresentationFile =
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    if file.nodes.is_empty() {
        return match file.builtin {
            Some(name) => builtin(&name),
            None => Err(Error::Parse("presentation needs nodes or a builtin name".into())),
        };
    }
    Presentation::build(file.nodes, file.arcs, file.builtin, true)
}

pub fn save_presentation(p: &Presentation) -> Result<String> {
    let file = PresentationFile {
        nodes: p.nodes.clone(),
        arcs: p
            .arcs
            .iter()
            .map(|&(a, b, m)| (p.nodes[a].id.clone(), p.nodes[b].id.clone(), m))
            .collect(),
        builtin: p.builtin.clone(),
    };
    crate::io::to_json(&file)
}

struct Instance {
    node: usize,
    level: usize,
    name: String,
}

/// The finite subgraph spanned by copies of level at most `depth`.
///
/// Vertices carry their node's label and a name recording how they were
/// created (`R.R.R`, `C.L3`). Copies along an `omega` arc are declared as an
/// infinite family of their parent; copies of a node with infinitely many
/// copies are declared as such a family of every `one` node they attach to.
pub fn truncate(p: &Presentation, depth: usize) -> Result<Graph> {
    if depth == 0 {
        return Err(Error::input("truncation depth must be at least 1"));
    }
    let ids = p.scc_ids();
    let inf = p.infinitely_many();
    let mut copies: Vec<Instance> = Vec::new();
    let mut single = vec![usize::MAX; p.nodes.len()];
    for s in p.starts() {
        if p.nodes[s].mult == Mult::One {
            single[s] = copies.len();
        }
        copies.push(Instance { node: s, level: 1, name: p.nodes[s].id.clone() });
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut omega: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < copies.len() {
        let (a, level) = (copies[i].node, copies[i].level);
        for &(x, b, m) in &p.arcs {
            if x != a {
                continue;
            }
            if p.nodes[b].mult == Mult::One {
                let j = single[b];
                edges.push((i, j));
                if inf[a] {
                    omega.push((j, i));
                }
                continue;
            }
            let base = level + usize::from(ids[a] == ids[b]);
            let mut k = 1;
            while base + k - 1 <= depth {
                let name = match m {
                    Mult::One => format!("{}.{}", copies[i].name, p.nodes[b].id),
                    Mult::Omega => format!("{}.{}{}", copies[i].name, p.nodes[b].id, k),
                };
                let j = copies.len();
                copies.push(Instance { node: b, level: base + k - 1, name });
                edges.push((i, j));
                if m == Mult::Omega {
                    omega.push((i, j));
                }
                if copies.len() > MAX_TRUNCATION {
                    return Err(Error::Capacity { what: "truncation", size: copies.len(), cap: MAX_TRUNCATION });
                }
                if m == Mult::One {
                    break;
                }
                k += 1;
            }
        }
        i += 1;
    }
    let mut order: Vec<usize> = (0..copies.len()).collect();
    order.sort_by(|&x, &y| {
        (copies[x].level, &copies[x].name).cmp(&(copies[y].level, &copies[y].name))
    });
    let mut new_id = vec![0; copies.len()];
    for (pos, &c) in order.iter().enumerate() {
        new_id[c] = pos;
    }
    let mut edges: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(u, v)| {
            let (u, v) = (new_id[u], new_id[v]);
            (u.min(v), u.max(v))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let labels = order.iter().map(|&c| p.nodes[copies[c].node].class).collect();
    let names = order.iter().map(|&c| copies[c].name.clone()).collect();
    let mut g = Graph::new(order.len(), &edges, labels)
        .map_err(|e| Error::Presentation(format!("inconsistent expansion: {e}")))?
        .with_names(names)?;
    for (w, u) in omega {
        g.declare_omega(new_id[w], new_id[u])?;
    }
    Ok(g)
}

/// Büchi-style emptiness check on the quotient: a witness exists iff some
/// nontrivial strongly connected component reachable from a start node
/// carries both labels.
pub fn detect_alternating_ray(p: &Presentation) -> Option<LassoWitness> {
    let ids = p.scc_ids();
    let succ: Vec<Vec<usize>> = (0..p.nodes.len()).map(|a| p.successors(a).collect()).collect();
    let reach = p.reachable(|a| succ[a].clone());
    let ncomp = ids.iter().copied().max().map_or(0, |m| m + 1);
    for c in 0..ncomp {
        let comp: Vec<usize> = (0..p.nodes.len()).filter(|&a| ids[a] == c && reach[a]).collect();
        if comp.is_empty() || !p.is_nontrivial(&comp, &ids) {
            continue;
        }
        let f = comp.iter().find(|&&a| p.nodes[a].class == DegreeClass::Finite);
        let i = comp.iter().find(|&&a| p.nodes[a].class == DegreeClass::Infinite);
        let (Some(&f), Some(&i)) = (f, i) else { continue };
        let inside = |a: usize| -> Vec<usize> { succ[a].iter().copied().filter(|&b| ids[b] == c).collect() };
        let mut cycle = bfs_path(&[f], i, &inside);
        let back = bfs_path(&[i], f, &inside);
        cycle.extend(&back[1..back.len() - 1]);
        let stem = bfs_path(&p.starts(), f, &|a| succ[a].clone());
        let name = |v: &Vec<usize>| v.iter().map(|&a| p.nodes[a].id.clone()).collect();
        return Some(LassoWitness { stem: name(&stem), cycle: name(&cycle) });
    }
    None
}

/// Shortest path from any source to `target`; both ends included.
fn bfs_path(sources: &[usize], target: usize, succ: &dyn Fn(usize) -> Vec<usize>) -> Vec<usize> {
    let mut prev: BTreeMap<usize, Option<usize>> = sources.iter().map(|&s| (s, None)).collect();
    let mut queue: VecDeque<usize> = sources.iter().copied().collect();
    while let Some(a) = queue.pop_front() {
        if a == target {
            break;
        }
        for b in succ(a) {
            if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(b) {
                e.insert(Some(a));
                queue.push_back(b);
            }
        }
    }
    let mut path = vec![target];
    while let Some(&Some(p)) = prev.get(path.last().expect("nonempty")) {
        path.push(p);
    }
    path.reverse();
    path
}

/// Checks that `w` is a lasso of `p` whose cycle carries both labels.
pub fn check_lasso(p: &Presentation, w: &LassoWitness) -> bool {
    let idx = |id: &String| p.nodes.iter().position(|n| &n.id == id);
    let (Some(stem), Some(cycle)) = (
        w.stem.iter().map(idx).collect::<Option<Vec<usize>>>(),
        w.cycle.iter().map(idx).collect::<Option<Vec<usize>>>(),
    ) else {
        return false;
    };
    let arc = |a: usize, b: usize| p.arcs.iter().any(|&(x, y, _)| x == a && y == b);
    let (Some(&first), Some(&last)) = (stem.first(), stem.last()) else { return false };
    if cycle.is_empty() || !p.starts().contains(&first) || last != cycle[0] {
        return false;
    }
    let stem_ok = stem.windows(2).all(|s| arc(s[0], s[1]));
    let cycle_ok = (0..cycle.len()).all(|k| arc(cycle[k], cycle[(k + 1) % cycle.len()]));
    let has = |class| cycle.iter().any(|&a| p.nodes[a].class == class);
    stem_ok && cycle_ok && has(DegreeClass::Finite) && has(DegreeClass::Infinite)
}

pub const BUILTINS: [&str; 8] = [
    "ray",
    "double_ray",
    "star",
    "infinite_clique_surrogate",
    "comb_hub",
    "star_of_rays",
    "hub_tree",
    "alternating_comb",
];



/// The built-in families. Every ray of a family projects to an infinite
/// quotient walk after finitely many steps, and every infinite walk lifts
/// through fresh copies, so the quotient-level detector is exact on them.
pub fn builtin(name: &str) -> Result<Presentation> {
    use DegreeClass::{Finite as F, Infinite as I};
    use Mult::{One, Omega};
    let (nodes, arcs): (Vec<Node>, Vec<(&str, &str, Mult)>) = match name {
        // P_d
        "ray" => (vec![Node::new("R", F, Omega)], vec![("R", "R", One)]),
        "double_ray" => (
            vec![Node::new("C", F, One), Node::new("L", F, Omega), Node::new("R", F, Omega)],
            vec![("C", "L", One), ("C", "R", One), ("L", "L", One), ("R", "R", One)],
        ),
        // K_{1,d}
        "star" => (vec![Node::new("C", I, One), Node::new("L", F, Omega)], vec![("C", "L", Omega)]),
        // every vertex has infinitely many children: all degrees infinite, as in K_omega
        "infinite_clique_surrogate" => (vec![Node::new("K", I, Omega)], vec![("K", "K", Omega)]),
        // a ray with a tooth on every spine vertex and one hub seeing the whole spine
        "comb_hub" => (
            vec![Node::new("S", F, Omega), Node::new("T", F, Omega), Node::new("H", I, One)],
            vec![("S", "S", One), ("S", "T", One), ("S", "H", One)],
        ),
        "star_of_rays" => (
            vec![Node::new("H", I, One), Node::new("R", F, Omega)],
            vec![("H", "R", Omega), ("R", "R", One)],
        ),
        // a ray of hubs, each with infinitely many leaves
        "hub_tree" => (
            vec![Node::new("H", I, Omega), Node::new("L", F, Omega)],
            vec![("H", "H", One), ("H", "L", Omega)],
        ),
        // spine alternating Finite and Infinite vertices; the Infinite ones carry infinitely many teeth
        "alternating_comb" => (
            vec![Node::new("A", F, Omega), Node::new("B", I, Omega), Node::new("T", F, Omega)],
            vec![("A", "B", One), ("B", "A", One), ("B", "T", Omega)],
        ),
        _ => {
            return Err(Error::Presentation(format!(
                "unknown builtin {name:?} (known: {})",
                BUILTINS.join(", ")
            )))
        }
    };
    let mut p = Presentation::new(nodes, &arcs)?;
    p.builtin = Some(name.to_owned());
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use DegreeClass::{Finite as F, Infinite as I};
    use Mult::Omega;

    #[test]
    fn ray_truncates_to_path() {
        let g = truncate(&builtin("ray").unwrap(), 5).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert!(g.labels().iter().all(|&l| l == F));
    }

    #[test]
    fn star_truncates_to_k1d() {
        let g = truncate(&builtin("star").unwrap(), 4).unwrap();
        assert_eq!(g.n(), 5);
        let center = (0..5).find(|&v| g.label(v) == I).unwrap();
        assert_eq!(g.degree(center), 4);
        assert_eq!(g.omega_neighbors(center).len(), 4);
    }

    #[test]
    fn comb_hub_depth_three() {
        let g = truncate(&builtin("comb_hub").unwrap(), 3).unwrap();
        // spine P3, three teeth, one hub
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 2 + 3 + 3);
        let hub = (0..7).find(|&v| g.label(v) == I).unwrap();
        assert_eq!(g.name(hub), Some("H"));
        for &s in g.neighbors(hub) {
            assert!(g.name(s).unwrap().starts_with('S') && !g.name(s).unwrap().ends_with('T'));
        }
        assert_eq!(g.omega_neighbors(hub), g.neighbors(hub));
    }

    #[test]
    fn truncations_are_monotone() {
        for name in BUILTINS {
            let p = builtin(name).unwrap();
            for d in 1..6 {
                let (a, b) = (truncate(&p, d).unwrap(), truncate(&p, d + 1).unwrap());
                assert!(a.n() <= b.n());
                let prefix = b.induced(&b.set_of(0..a.n())).unwrap();
                assert_eq!(prefix, a, "{name} at depth {d}");
            }
        }
    }

    #[test]
    fn detector_small_cases() {
        let self_loop = Presentation::new(vec![Node::new("A", F, Omega)], &[("A", "A", Mult::One)]).unwrap();
        assert_eq!(detect_alternating_ray(&self_loop), None);

        let two_cycle = Presentation::new(
            vec![Node::new("A", F, Omega), Node::new("B", I, Omega), Node::new("T", F, Omega)],
            &[("A", "B", Mult::One), ("B", "A", Mult::One), ("B", "T", Mult::Omega)],
        )
        .unwrap();
        let w = detect_alternating_ray(&two_cycle).unwrap();
        assert!(check_lasso(&two_cycle, &w));
        assert_eq!(w.cycle.len(), 2);

        let no_return = Presentation::new(
            vec![Node::new("A", F, Omega), Node::new("B", I, Omega), Node::new("T", F, Omega)],
            &[("A", "A", Mult::One), ("A", "B", Mult::One), ("B", "B", Mult::One), ("B", "T", Mult::Omega)],
        )
        .unwrap();
        assert_eq!(detect_alternating_ray(&no_return), None);
    }

    #[test]
    fn builtin_verdicts() {
        for name in BUILTINS {
            let p = builtin(name).unwrap();
            let w = detect_alternating_ray(&p);
            assert_eq!(w.is_some(), name == "alternating_comb", "{name}");
            if let Some(w) = w {
                assert!(check_lasso(&p, &w));
            }
        }
    }

    #[test]
    fn unknown_builtin_and_bad_labels() {
        assert!(matches!(builtin("nope"), Err(Error::Presentation(_))));
        let mislabeled = Presentation::new(
            vec![Node::new("C", F, Mult::One), Node::new("L", F, Omega)],
            &[("C", "L", Mult::Omega)],
        );
        assert!(matches!(mislabeled, Err(Error::Presentation(_))));
        let omega_into_single = Presentation::new(
            vec![Node::new("A", I, Omega), Node::new("B", F, Mult::One)],
            &[("A", "B", Mult::Omega)],
        );
        assert!(omega_into_single.is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = builtin("comb_hub").unwrap();
        let text = save_presentation(&p).unwrap();
        assert_eq!(load_presentation(text.as_bytes()).unwrap(), p);
        let by_name = load_presentation(br#"{"builtin":"star"}"#).unwrap();
        assert_eq!(by_name, builtin("star").unwrap());
    }

    #[test]
    fn depth_zero_rejected() {
        assert!(matches!(truncate(&builtin("ray").unwrap(), 0), Err(Error::Input(_))));
    }
}
