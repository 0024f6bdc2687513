//! Truncation ladders: solve growing truncations of a presentation and watch
//! vertex colors settle.
//!
//! Vertices are matched across depths by name. In warm-start mode each depth
//! is solved with the previous depth's colors as the hint, so free choices
//! and tie-breaks reproduce the shallower solution wherever it still fits.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coloring::{opp_same, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{DegreeClass, Graph};
use crate::presentation::{truncate, Presentation};
use crate::solvers::driver::{recursion_driver_with, verify_theorem, ComponentTrace, DriverConfig};
use crate::solvers::engine::CaseTag;

pub const DEFAULT_DEPTHS: [usize; 3] = [4, 8, 16];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum LadderMode {
    Independent,
    #[default]
    WarmStart,
}

impl std::str::FromStr for LadderMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "independent" => Ok(LadderMode::Independent),
            "warm-start" | "warm_start" => Ok(LadderMode::WarmStart),
            _ => Err(Error::input(format!("unknown ladder mode {s:?} (independent | warm-start)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DepthReport {
    pub depth: usize,
    pub vertices: usize,
    pub edges: usize,
    pub cut: usize,
    pub passed: bool,
    pub strongly_maximal: bool,
    pub non_unfriendly: Vec<String>,
    /// Vertices the driver's final pass had to recolor.
    pub closing_changes: usize,
    /// Colors by vertex id, as a 0/1 string. Ids of a shallower truncation
    /// are a prefix of the deeper ones.
    pub colors: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableVertex {
    /// Id in the deepest truncation.
    pub vertex: usize,
    pub name: String,
    pub color: u8,
    /// Least solved depth from which the color never changes.
    pub stable_from: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Determined,
    BoundaryUndetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderVerdict {
    pub vertex: usize,
    pub name: String,
    pub class: DegreeClass,
    pub color: u8,
    pub status: VerdictStatus,
    /// Counts over the neighbors present in the deepest truncation.
    pub opposite: usize,
    pub same: usize,
    /// `opposite >= same`: definitive when determined, a window statement otherwise.
    pub unfriendly: bool,
    /// Opposite/same counts over the declared infinite neighbor family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared: Option<(usize, usize)>,
    /// The engine case that certified this vertex, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_by: Option<CaseTag>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Truncated {
    pub depth: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderReport {
    pub presentation: Option<String>,
    pub mode: LadderMode,
    pub depths: Vec<usize>,
    /// Set when some depth could not be solved; the report covers the depths before it.
    pub truncated: Option<Truncated>,
    pub guarantees: Vec<DepthReport>,
    pub stable_prefix: Vec<StableVertex>,
    pub first_depth_vertices: usize,
    /// First-depth vertices whose color is the same at every solved depth.
    pub first_depth_stable: usize,
    pub first_depth_coverage: f64,
    pub verdicts: Vec<LadderVerdict>,
    pub determined_pass: bool,
}

struct Solved {
    depth: usize,
    graph: Graph,
    coloring: PartialColoring,
    certified: BTreeMap<usize, CaseTag>,
}

pub fn ladder_run(p: &Presentation, depths: &[usize], mode: LadderMode) -> Result<LadderReport> {
    if depths.is_empty() {
        return Err(Error::input("no depths given"));
    }
    if depths[0] == 0 || depths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input("depths must be positive and strictly increasing"));
    }
    let mut solved: Vec<Solved> = Vec::new();
    let mut guarantees = Vec::new();
    let mut truncated = None;
    for &d in depths {
        let step = solve_depth(p, d, mode, solved.last());
        match step {
            Ok((s, report)) => {
                solved.push(s);
                guarantees.push(report);
            }
            Err(e @ Error::Capacity { .. }) if !solved.is_empty() => {
                truncated = Some(Truncated { depth: d, reason: e.to_string() });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let last = solved.last().expect("first depth solved");

    // colors per depth, by name of the deepest truncation's vertices
    let deep = &last.graph;
    let mut stable_prefix = Vec::new();
    let mut first_stable = 0;
    let first_n = solved[0].graph.n();
    for v in 0..deep.n() {
        let name = deep.name(v).expect("truncations are named");
        let history: Vec<(usize, bool)> = solved
            .iter()
            .filter_map(|s| lookup(&s.graph, name, v).and_then(|u| s.coloring.get(u)).map(|c| (s.depth, c)))
            .collect();
        let color = history.last().expect("present at the deepest depth").1;
        let since = history
            .iter()
            .rev()
            .take_while(|&&(_, c)| c == color)
            .last()
            .map(|&(d, _)| d)
            .expect("nonempty");
        if v < first_n && since == solved[0].depth {
            first_stable += 1;
        }
        if since < last.depth {
            stable_prefix.push(StableVertex { vertex: v, name: name.to_owned(), color: color as u8, stable_from: since });
        }
    }

    let verdicts = verdicts(p, last)?;
    let determined_pass = verdicts
        .iter()
        .all(|v| v.status == VerdictStatus::BoundaryUndetermined || v.unfriendly);
    Ok(LadderReport {
        presentation: p.builtin_id().map(str::to_owned),
        mode,
        depths: solved.iter().map(|s| s.depth).collect(),
        truncated,
        guarantees,
        stable_prefix,
        first_depth_vertices: first_n,
        first_depth_stable: first_stable,
        first_depth_coverage: if first_n == 0 { 1.0 } else { first_stable as f64 / first_n as f64 },
        verdicts,
        determined_pass,
    })
}

/// Vertex of `g` named `name`; truncations share ids, so `guess` usually hits.
fn lookup(g: &Graph, name: &str, guess: usize) -> Option<usize> {
    if guess < g.n() && g.name(guess) == Some(name) {
        return Some(guess);
    }
    (0..g.n()).find(|&u| g.name(u) == Some(name))
}

fn solve_depth(
    p: &Presentation,
    depth: usize,
    mode: LadderMode,
    prev: Option<&Solved>,
) -> Result<(Solved, DepthReport)> {
    let g = truncate(p, depth)?;
    let hint = match (mode, prev) {
        (LadderMode::WarmStart, Some(prev)) => {
            let mut h = PartialColoring::new(g.n());
            for u in 0..prev.graph.n() {
                let name = prev.graph.name(u).expect("named");
                if let (Some(v), Some(c)) = (lookup(&g, name, u), prev.coloring.get(u)) {
                    h.set(v, c);
                }
            }
            Some(h)
        }
        _ => None,
    };
    let cfg = DriverConfig { hint: hint.clone(), ..DriverConfig::default() };
    let out = recursion_driver_with(&g, &PartialColoring::new(g.n()), &cfg)?;
    let mut coloring = out.coloring;
    // with nothing frozen the complement is equally good; keep the orientation of the hint
    if let Some(h) = &hint {
        let (agree, disagree) = h
            .domain()
            .iter()
            .fold((0, 0), |(a, d), v| if h.get(v) == coloring.get(v) { (a + 1, d) } else { (a, d + 1) });
        if disagree > agree {
            for v in 0..g.n() {
                coloring.flip_unchecked(v);
            }
        }
    }
    let report = verify_theorem(&g, &coloring)?;
    let mut certified = BTreeMap::new();
    collect_certificates(&out.components, &mut certified);
    let depth_report = DepthReport {
        depth,
        vertices: g.n(),
        edges: g.edge_count(),
        cut: report.cut,
        passed: report.passed,
        strongly_maximal: report.strongly_maximal,
        non_unfriendly: report
            .non_unfriendly
            .iter()
            .map(|&v| g.name(v).unwrap_or_default().to_owned())
            .collect(),
        closing_changes: out.closing_changes.len(),
        colors: (0..g.n()).map(|v| if coloring.get(v) == Some(true) { '1' } else { '0' }).collect(),
    };
    Ok((Solved { depth, graph: g, coloring, certified }, depth_report))
}

fn collect_certificates(traces: &[ComponentTrace], into: &mut BTreeMap<usize, CaseTag>) {
    for t in traces {
        for (&v, cert) in &t.certificates {
            into.insert(v, cert.case);
        }
        collect_certificates(&t.subtrees, into);
    }
}

/// A vertex is determined when one more level adds no neighbor to it.
fn verdicts(p: &Presentation, last: &Solved) -> Result<Vec<LadderVerdict>> {
    let g = &last.graph;
    let next = truncate(p, last.depth + 1)?;
    let c = &last.coloring;
    let mut out = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let (opposite, same) = opp_same(g, c, v);
        let closed = g.label(v) == DegreeClass::Finite && next.degree(v) == g.degree(v);
        let declared = (!g.omega_neighbors(v).is_empty()).then(|| {
            let color = c.get(v);
            let opp = g.omega_neighbors(v).iter().filter(|&&u| c.get(u) != color).count();
            (opp, g.omega_neighbors(v).len() - opp)
        });
        out.push(LadderVerdict {
            vertex: v,
            name: g.name(v).unwrap_or_default().to_owned(),
            class: g.label(v),
            color: c.get(v).map_or(0, u8::from),
            status: if closed { VerdictStatus::Determined } else { VerdictStatus::BoundaryUndetermined },
            opposite,
            same,
            unfriendly: opposite >= same,
            declared,
            certified_by: last.certified.get(&v).copied(),
        });
    }
    Ok(out)
}
