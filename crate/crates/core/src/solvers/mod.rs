//! Coloring solvers and the executable forms of the repair, stitching and
//! extension lemmas.

pub mod greedy;
pub mod oracle;
pub mod repair;
pub mod engine;
pub mod stable;
pub mod driver;

pub use greedy::{greedy_unfriendly, GreedyOutcome};
pub use oracle::{oracle_maxcut, OracleConfig};
pub use repair::{grow_domain, grow_domain_total, repair_flip, repair_set, stitch};
pub use driver::{recursion_driver, recursion_driver_with, verify_theorem, verify_theorem_with, DriverConfig, DriverOutcome, TheoremReport};
