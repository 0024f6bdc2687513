//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failed (the witness is in the
//! output), 2 usage, parse or input error, 3 solver capacity exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::coloring::{opp_same, PartialColoring};
use crate::error::Error;
use crate::graph::Graph;
use crate::io::{self, to_json, IdMap};
use crate::ladder::{ladder_run, LadderMode, LadderReport, VerdictStatus};
use crate::presentation::{self, Presentation, BUILTINS};
use crate::rank::{graph_rank_min, rank_table};
use crate::solvers::driver::{recursion_driver_with, verify_theorem, DriverConfig, TheoremReport};
use crate::solvers::{greedy_unfriendly, oracle_maxcut};
use crate::tree::dfs_normal_tree;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "unfriendly", version, about = "Unfriendly partitions of labeled graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the primary output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized search orders. Every solver shipped is deterministic, so it is only recorded.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print diagnostics (driver traces, timings) on standard error.
    #[arg(long, short, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMode {
    Greedy,
    Exact,
    Driver,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliLadderMode {
    Independent,
    WarmStart,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Color a graph, keeping the vertices colored in --frozen fixed.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        frozen: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SolveMode::Driver)]
        mode: SolveMode,
    },
    /// Check strong maximality on Finite vertices and unfriendliness on Infinite ones.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Tree ranks of a graph.
    Rank {
        #[arg(long)]
        input: PathBuf,
        /// Root of the depth-first tree; defaults to the root of least rank.
        #[arg(long)]
        root: Option<usize>,
    },
    /// Depth-first normal spanning tree, or a normality check of a given tree.
    Nst {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Check this tree instead of building one.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Look for an alternating ray in a presentation (file or builtin name).
    Detect {
        #[arg(long)]
        input: String,
    },
    /// Finite truncation of a presentation (file or builtin name).
    Truncate {
        #[arg(long)]
        input: String,
        #[arg(long)]
        depth: usize,
    },
    /// Solve a ladder of truncations and report color stabilization.
    Ladder {
        #[arg(long)]
        input: String,
        #[arg(long, value_delimiter = ',', default_values_t = crate::ladder::DEFAULT_DEPTHS)]
        depths: Vec<usize>,
        #[arg(long, value_enum, default_value_t = CliLadderMode::WarmStart)]
        mode: CliLadderMode,
    },
}

/// Primary output of a subcommand and the exit code it implies.
struct Outcome {
    json: String,
    table: String,
    code: i32,
}

/// Runs the CLI on `argv`, writing the primary output to `out` (or the
/// `--output` file) and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(o) => {
            let body = match cli.format {
                Format::Json => o.json,
                Format::Table => o.table,
            };
            let written = match &cli.output {
                Some(path) => std::fs::write(path, body.as_bytes())
                    .with_context(|| format!("writing {}", path.display())),
                None => out.write_all(body.as_bytes()).context("writing output"),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e:#}");
                return EXIT_USAGE;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<Error>() {
        Some(Error::Capacity { .. }) => EXIT_CAPACITY,
        Some(Error::Engine(_) | Error::Internal(_) | Error::Undetermined { .. }) => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

fn read(path: &Path) -> anyhow::Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    let bytes = read(path)?;
    io::load_graph(&bytes).map_err(|e| anyhow::Error::new(e).context(format!("in {}", path.display())))
}

fn load_coloring(path: &Path, n: usize) -> anyhow::Result<PartialColoring> {
    let bytes = read(path)?;
    io::load_coloring(&bytes, n).map_err(|e| anyhow::Error::new(e).context(format!("in {}", path.display())))
}

/// A presentation file, or the name of a builtin family.
fn load_presentation(input: &str) -> anyhow::Result<Presentation> {
    let path = Path::new(input);
    if path.exists() {
        let bytes = read(path)?;
        return presentation::load_presentation(&bytes)
            .map_err(|e| anyhow::Error::new(e).context(format!("in {input}")));
    }
    if BUILTINS.contains(&input) {
        return Ok(presentation::builtin(input)?);
    }
    bail!(Error::Input(format!(
        "{input:?} is neither a file nor a builtin ({})",
        BUILTINS.join(", ")
    )))
}

fn execute(cli: &Cli, err: &mut dyn Write) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Solve { input, frozen, mode } => solve(cli, input, frozen.as_deref(), *mode, err),
        Command::Verify { graph, coloring } => {
            let g = load_graph(graph)?;
            let c = load_coloring(coloring, g.n())?;
            let report = verify_theorem(&g, &c)?;
            let code = if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok(Outcome { json: to_json(&report)?, table: theorem_table(&report), code })
        }
        Command::Rank { input, root } => {
            let g = load_graph(input)?;
            let min = graph_rank_min(&g)?;
            let root = root.unwrap_or(min.root);
            g.check_vertex(root)?;
            let t = dfs_normal_tree(&g, root)?;
            let table = rank_table(&g, &t)?;
            let per_vertex = IdMap((0..g.n()).filter_map(|v| table.get(v).map(|r| (v, r))).collect());
            let value = json!({
                "per_vertex": per_vertex,
                "root": root,
                "root_rank": table.root_rank(),
                "min_over_roots": min.rank,
                "min_root": min.root,
            });
            let mut text = format!("root {root}: rank {}\nminimum over roots: {} (root {})\n", table.root_rank(), min.rank, min.root);
            for v in 0..g.n() {
                if let Some(r) = table.get(v) {
                    let _ = writeln!(text, "  {v:>4} {:<8} {r}", g.label(v).as_str());
                }
            }
            Ok(Outcome { json: to_json(&value)?, table: text, code: EXIT_OK })
        }
        Command::Nst { input, root, check } => {
            let g = load_graph(input)?;
            match check {
                None => {
                    g.check_vertex(*root)?;
                    let t = dfs_normal_tree(&g, *root)?;
                    let mut text = format!("depth-first tree from {root}\n");
                    for &v in t.preorder() {
                        let _ = writeln!(text, "{}{v}", "  ".repeat(t.depth(v)));
                    }
                    Ok(Outcome { json: io::save_tree(&t)?, table: text, code: EXIT_OK })
                }
                Some(path) => {
                    let t = io::load_tree(&read(path)?, g.n())?;
                    let violation = t.normality_violation(&g);
                    let value = json!({
                        "normal": violation.is_none(),
                        "witness_edge": violation.map(|(u, v)| [u, v]),
                    });
                    let text = match violation {
                        None => "tree is normal\n".to_owned(),
                        Some((u, v)) => format!("tree is not normal: edge {u}-{v} joins incomparable vertices\n"),
                    };
                    let code = if violation.is_none() { EXIT_OK } else { EXIT_VERIFY_FAILED };
                    Ok(Outcome { json: to_json(&value)?, table: text, code })
                }
            }
        }
        Command::Detect { input } => {
            let p = load_presentation(input)?;
            let w = presentation::detect_alternating_ray(&p);
            let text = match &w {
                None => "no alternating ray\n".to_owned(),
                Some(w) => format!("alternating ray: stem {} then cycle ({})\n", w.stem.join(" -> "), w.cycle.join(" -> ")),
            };
            Ok(Outcome { json: to_json(&json!({ "witness": w }))?, table: text, code: EXIT_OK })
        }
        Command::Truncate { input, depth } => {
            let p = load_presentation(input)?;
            let g = presentation::truncate(&p, *depth)?;
            let text = format!("depth {depth}: {} vertices, {} edges\n", g.n(), g.edge_count());
            Ok(Outcome { json: io::save_graph(&g)?, table: text, code: EXIT_OK })
        }
        Command::Ladder { input, depths, mode } => {
            let p = load_presentation(input)?;
            let mode = match mode {
                CliLadderMode::Independent => LadderMode::Independent,
                CliLadderMode::WarmStart => LadderMode::WarmStart,
            };
            let report = ladder_run(&p, depths, mode)?;
            let failed = report.guarantees.iter().any(|d| !d.passed) || !report.determined_pass;
            let code = if report.truncated.is_some() {
                EXIT_CAPACITY
            } else if failed {
                EXIT_VERIFY_FAILED
            } else {
                EXIT_OK
            };
            if cli.verbose > 0 {
                let _ = writeln!(err, "ladder: {} stable vertices", report.stable_prefix.len());
            }
            Ok(Outcome { json: to_json(&report)?, table: ladder_table(&report), code })
        }
    }
}

#[derive(Serialize)]
struct GreedyCheck {
    unfriendly: bool,
    non_unfriendly: Vec<usize>,
    flips: usize,
}

fn solve(cli: &Cli, input: &Path, frozen: Option<&Path>, mode: SolveMode, err: &mut dyn Write) -> anyhow::Result<Outcome> {
    let g = load_graph(input)?;
    let mut k = match frozen {
        Some(path) => load_coloring(path, g.n())?,
        None => PartialColoring::new(g.n()),
    };
    for v in k.domain().iter() {
        if !k.is_frozen(v) {
            k.freeze(v)?;
        }
    }
    let free = g.vertices().difference(&k.domain());
    let (coloring, verification, passed, table) = match mode {
        SolveMode::Greedy => {
            let mut c0 = k.clone();
            for v in free.iter() {
                c0.set(v, false);
            }
            let out = greedy_unfriendly(&g, &c0)?;
            let non_unfriendly: Vec<usize> = free
                .iter()
                .filter(|&v| {
                    let (o, s) = opp_same(&g, &out.coloring, v);
                    o < s
                })
                .collect();
            let check = GreedyCheck { unfriendly: non_unfriendly.is_empty(), non_unfriendly, flips: out.flips };
            let table = format!("greedy: {} flips, unfriendly: {}\n", check.flips, check.unfriendly);
            let passed = check.unfriendly;
            (out.coloring, serde_json::to_value(check)?, passed, table)
        }
        SolveMode::Exact | SolveMode::Driver => {
            let c = if mode == SolveMode::Exact {
                oracle_maxcut(&g, &k, &free)?
            } else {
                let out = recursion_driver_with(&g, &k, &DriverConfig::default())?;
                if cli.verbose > 0 {
                    for t in &out.components {
                        let _ = writeln!(err, "component at root {}: rank {}, {:?}, history {:?}", t.root, t.rank, t.branch, t.history);
                    }
                    let _ = writeln!(err, "final pass recolored {:?}", out.closing_changes);
                }
                out.coloring
            };
            let report = verify_theorem(&g, &c)?;
            let table = theorem_table(&report);
            (c, serde_json::to_value(&report)?, report.passed, table)
        }
    };
    let value = json!({
        "mode": format!("{mode:?}").to_lowercase(),
        "seed": cli.seed,
        "coloring": io::coloring_value(&coloring),
        "verification": verification,
    });
    let mut text = String::new();
    let bits: String = (0..g.n()).map(|v| if coloring.get(v) == Some(true) { '1' } else { '0' }).collect();
    let _ = writeln!(text, "coloring {bits}");
    text.push_str(&table);
    Ok(Outcome {
        json: to_json(&value)?,
        table: text,
        code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}

fn theorem_table(r: &TheoremReport) -> String {
    let mut s = format!("cut {}\nstrongly maximal on Finite vertices: {}\n", r.cut, r.strongly_maximal);
    if let Some(f) = &r.improving_flip {
        let _ = writeln!(s, "  improving flip-set: {f:?}");
    }
    let _ = writeln!(s, "Infinite vertices unfriendly: {}", r.non_unfriendly.is_empty());
    for v in &r.infinite_vertices {
        let _ = writeln!(
            s,
            "  {:>4} opposite {:>3} same {:>3} {}",
            v.vertex,
            v.opposite,
            v.same,
            if v.unfriendly { "ok" } else { "NOT UNFRIENDLY" }
        );
    }
    let _ = writeln!(s, "{}", if r.passed { "PASS" } else { "FAIL" });
    s
}

fn ladder_table(r: &LadderReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>6} {:>9} {:>7} {:>6} {:>7} {:>8}", "depth", "vertices", "edges", "cut", "passed", "closing");
    for d in &r.guarantees {
        let _ = writeln!(
            s,
            "{:>6} {:>9} {:>7} {:>6} {:>7} {:>8}",
            d.depth, d.vertices, d.edges, d.cut, d.passed, d.closing_changes
        );
    }
    if let Some(t) = &r.truncated {
        let _ = writeln!(s, "truncated at depth {}: {}", t.depth, t.reason);
    }
    let _ = writeln!(
        s,
        "first-depth vertices stable throughout: {}/{} ({:.1}%)",
        r.first_depth_stable,
        r.first_depth_vertices,
        100.0 * r.first_depth_coverage
    );
    let determined = r.verdicts.iter().filter(|v| v.status == VerdictStatus::Determined).count();
    let _ = writeln!(
        s,
        "determined verdicts: {determined}, all unfriendly: {}; boundary-undetermined: {}",
        r.determined_pass,
        r.verdicts.len() - determined
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("unfriendly").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["truncate", "--input", "ray"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["detect", "--input", "no_such_family"]).0, EXIT_USAGE);
    }

    #[test]
    fn detect_builtin() {
        let (code, out, _) = run_args(&["detect", "--input", "alternating_comb"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"cycle\""));
        let (code, out, _) = run_args(&["detect", "--input", "ray"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"witness\": null"));
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("ladder"));
    }
}
