//! Non-crossing geometric spanning trees with a prescribed leaf set.
//!
//! Input: red and blue points in general position in the plane, with a
//! degree budget f(x) >= 2 on every red point. Whenever
//! 2 <= |B| <= sum(f(x) - 2) + 2, there is a plane spanning tree whose leaf
//! set is exactly the blue points and whose red degrees lie in [2, f(x)];
//! at equality every red degree meets its budget exactly. The solver builds
//! such a tree combinatorially, then removes crossings one swap at a time.
//! Each swap preserves every vertex degree and strictly shortens total edge
//! length, so the process terminates at a plane tree with the same degrees.
//!
//! Module map:
//! - [`geom`]: exact integer orientation and crossing predicates.
//! - [`instance`]: colored point sets, feasibility, budget reduction.
//! - [`tree`]: degree-constrained tree construction and encoding.
//! - [`uncross`]: crossing detection, the three swap cases, the solver loop.
//! - [`verify`]: independent output checking and exhaustive small-n oracle.
//! - [`gen`]: seeded random instance generation.
//! - [`cli`]: file formats and the command-line front end.

pub mod cli;
pub mod gen;
pub mod geom;
pub mod instance;
pub mod tree;
pub mod uncross;
pub mod verify;

#[cfg(test)]
pub(crate) mod testutil;

pub use geom::{properly_cross, ExactPoint, Segment, COORD_SCALE, MAX_COORD};
pub use instance::{check_feasibility, reduce_budget, Color, FeasibilityReport, FeasibilityStatus, Instance};
pub use tree::{initial_geo_tree, tree_from_degrees, DegreeSequence, GeoTree};
pub use uncross::{default_max_iters, solve, Solution, SolveError, UncrossTrace};
pub use verify::{enumerate_feasible_trees, oracle_check, verify, verify_tree, VerifyReport, ORACLE_MAX_N};
