//! Corpora and brute-force oracles shared by the integration suites.
//!
//! Nothing here calls into the solvers: every oracle works from raw edge
//! lists and bitmasks so that it can disagree with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use unfriendly::{DegreeClass, Graph, PartialColoring};

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Adjacency bitmasks of a graph given by its edges.
pub fn masks(n: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn is_connected_masks(adj: &[u32]) -> bool {
    let n = adj.len();
    if n == 0 {
        return false;
    }
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen.count_ones() as usize == n
}

/// Canonical code: the least upper-triangle bit string over all relabelings
/// that list vertices by nondecreasing degree.
fn canonical(adj: &[u32]) -> u64 {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| adj[v].count_ones());
    let degs: Vec<u32> = order.iter().map(|&v| adj[v].count_ones()).collect();
    let mut best = u64::MAX;
    let mut perm = order.clone();
    permute_blocks(adj, &degs, &mut perm, 0, &mut best);
    best
}

fn permute_blocks(adj: &[u32], degs: &[u32], perm: &mut Vec<usize>, start: usize, best: &mut u64) {
    let n = perm.len();
    if start == n {
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if adj[perm[i]] >> perm[j] & 1 == 1 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        *best = (*best).min(code);
        return;
    }
    let mut end = start;
    while end < n && degs[end] == degs[start] {
        end += 1;
    }
    heap_block(adj, degs, perm, start, end, end - start, best);
}

/// Heap's algorithm over `perm[start..end]`, recursing into the next block at each leaf.
fn heap_block(adj: &[u32], degs: &[u32], perm: &mut Vec<usize>, start: usize, end: usize, k: usize, best: &mut u64) {
    if k <= 1 {
        permute_blocks(adj, degs, perm, end, best);
        return;
    }
    for i in 0..k - 1 {
        heap_block(adj, degs, perm, start, end, k - 1, best);
        if k % 2 == 0 {
            perm.swap(start + i, start + k - 1);
        } else {
            perm.swap(start, start + k - 1);
        }
    }
    heap_block(adj, degs, perm, start, end, k - 1, best);
}

fn edges_of(adj: &[u32]) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for u in 0..adj.len() {
        for v in u + 1..adj.len() {
            if adj[u] >> v & 1 == 1 {
                e.push((u, v));
            }
        }
    }
    e
}

/// One representative per isomorphism class of connected graphs on 1..=max_n
/// vertices, as edge lists. For `max_n = 7` there are 996 of them.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    // all graphs on n vertices, from all graphs on n - 1 plus a vertex
    let mut level: Vec<Vec<u32>> = vec![vec![0]];
    for n in 1..=max_n {
        if n > 1 {
            let mut seen = BTreeSet::new();
            let mut next = Vec::new();
            for g in &level {
                for nb in 0u32..(1 << (n - 1)) {
                    let mut adj = g.clone();
                    adj.push(nb);
                    for (v, a) in adj.iter_mut().enumerate().take(n - 1) {
                        if nb >> v & 1 == 1 {
                            *a |= 1 << (n - 1);
                        }
                    }
                    if seen.insert(canonical(&adj)) {
                        next.push(adj);
                    }
                }
            }
            level = next;
        }
        for adj in &level {
            if is_connected_masks(adj) {
                out.push((n, edges_of(adj)));
            }
        }
    }
    out
}

/// A connected graph: a random spanning tree plus each other pair with probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut set = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        set.insert((a.min(b), a.max(b)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                set.insert((u, v));
            }
        }
    }
    set.into_iter().collect()
}

pub fn random_labels(rng: &mut ChaCha8Rng, n: usize) -> Vec<DegreeClass> {
    (0..n)
        .map(|_| if rng.gen_bool(0.5) { DegreeClass::Infinite } else { DegreeClass::Finite })
        .collect()
}

pub fn labels_from_mask(n: usize, mask: u32) -> Vec<DegreeClass> {
    (0..n)
        .map(|v| if mask >> v & 1 == 1 { DegreeClass::Infinite } else { DegreeClass::Finite })
        .collect()
}

/// Number of cut edges of the total coloring `bits`.
pub fn cut_of(edges: &[(usize, usize)], bits: u32) -> usize {
    edges.iter().filter(|&&(u, v)| (bits >> u ^ bits >> v) & 1 == 1).count()
}

pub fn bits_of(c: &PartialColoring) -> u32 {
    (0..c.n()).fold(0, |acc, v| acc | (u32::from(c.get(v).expect("total coloring")) << v))
}

pub fn brute_max_cut(n: usize, edges: &[(usize, usize)]) -> usize {
    (0u32..1 << n).map(|b| cut_of(edges, b)).max().unwrap_or(0)
}

/// Some subset of `movable` whose flip raises the cut of the total coloring `bits`.
pub fn brute_improving(edges: &[(usize, usize)], bits: u32, movable: u32) -> Option<u32> {
    let base = cut_of(edges, bits);
    let mut sub = movable;
    while sub != 0 {
        if cut_of(edges, bits ^ sub) > base {
            return Some(sub);
        }
        sub = (sub - 1) & movable;
    }
    None
}

pub fn opp_same_bits(edges: &[(usize, usize)], bits: u32, v: usize) -> (usize, usize) {
    let mut opp = 0;
    let mut same = 0;
    for &(a, b) in edges {
        let u = if a == v {
            b
        } else if b == v {
            a
        } else {
            continue;
        };
        if (bits >> u ^ bits >> v) & 1 == 1 {
            opp += 1;
        } else {
            same += 1;
        }
    }
    (opp, same)
}

/// Independent check of both guarantees: no flip-set of Finite-labeled
/// unfrozen vertices raises the cut, and every unfrozen Infinite-labeled
/// vertex has at least as many opposite as same neighbors.
pub fn brute_theorem_check(g: &Graph, c: &PartialColoring) -> Result<(), String> {
    let n = g.n();
    let edges = g.edges();
    let bits = bits_of(c);
    let mut movable = 0u32;
    for v in 0..n {
        if g.label(v) == DegreeClass::Finite && !c.is_frozen(v) {
            movable |= 1 << v;
        }
    }
    if let Some(f) = brute_improving(&edges, bits, movable) {
        return Err(format!("improving flip-set {f:#b}"));
    }
    for v in 0..n {
        if g.label(v) == DegreeClass::Infinite && !c.is_frozen(v) {
            let (o, s) = opp_same_bits(&edges, bits, v);
            if o < s {
                return Err(format!("Infinite vertex {v} has {o} opposite, {s} same"));
            }
        }
    }
    Ok(())
}

/// Direct-from-definition tree rank on a rooted tree given by parent
/// pointers (the root is its own parent).
pub fn rank_by_definition(parent: &[usize], root: usize, infinite: &[bool]) -> Vec<usize> {
    let n = parent.len();
    let below = |v: usize| -> Vec<usize> {
        (0..n)
            .filter(|&u| {
                let mut x = u;
                loop {
                    if x == v {
                        return true;
                    }
                    if x == root {
                        return false;
                    }
                    x = parent[x];
                }
            })
            .collect()
    };
    let mut memo = vec![None; n];
    fn go(v: usize, below: &dyn Fn(usize) -> Vec<usize>, infinite: &[bool], memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(r) = memo[v] {
            return r;
        }
        let down = below(v);
        let homogeneous = down.iter().all(|&u| infinite[u] == infinite[v]);
        let r = if homogeneous {
            0
        } else {
            1 + down
                .iter()
                .filter(|&&u| u != v && infinite[u] != infinite[v])
                .map(|&u| go(u, below, infinite, memo))
                .max()
                .expect("an opposite-class descendant exists")
        };
        memo[v] = Some(r);
        r
    }
    (0..n).map(|v| go(v, &below, infinite, &mut memo)).collect()
}

/// Tree from a Prüfer sequence over `n = seq.len() + 2` vertices.
pub fn prufer_tree(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::new();
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Brute-force lasso search on a digraph: is there a simple cycle, reachable
/// from a start node, whose nodes carry both labels?
pub fn brute_lasso(n: usize, arcs: &[(usize, usize)], infinite: &[bool], starts: &[usize]) -> bool {
    let mut reach = vec![false; n];
    let mut stack: Vec<usize> = starts.to_vec();
    while let Some(a) = stack.pop() {
        if std::mem::replace(&mut reach[a], true) {
            continue;
        }
        stack.extend(arcs.iter().filter(|x| x.0 == a).map(|x| x.1));
    }
    // simple cycles whose least node is `s`
    fn extend(s: usize, path: &mut Vec<usize>, arcs: &[(usize, usize)], infinite: &[bool]) -> bool {
        let last = *path.last().unwrap();
        for &(a, b) in arcs {
            if a != last || b < s {
                continue;
            }
            if b == s {
                let f = path.iter().any(|&x| !infinite[x]);
                let i = path.iter().any(|&x| infinite[x]);
                if f && i {
                    return true;
                }
            } else if !path.contains(&b) {
                path.push(b);
                if extend(s, path, arcs, infinite) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    (0..n).any(|s| reach[s] && extend(s, &mut vec![s], arcs, infinite))
}
