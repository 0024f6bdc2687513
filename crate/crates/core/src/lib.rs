//! Unfriendly partitions of labeled graphs.
//!
//! The crate covers the cut algebra over 2-colorings, exact and greedy
//! strongly-maximal coloring solvers with frozen vertices, normal spanning
//! trees and their order calculus, the tree-rank recursion, alternating-ray
//! detection on finitely presented countable graphs, and a truncation ladder
//! that watches colorings stabilize as truncations grow.

pub mod cli;
pub mod coloring;
pub mod error;
pub mod graph;
pub mod io;
pub mod ladder;
pub mod presentation;
pub mod rank;
pub mod solvers;
pub mod tree;

pub use coloring::{PartialColoring, Verdict};
pub use error::{Error, Result};
pub use graph::{DegreeClass, Graph, VertexSet};
pub use tree::TreeOrder;
