//! Most-reliable-path solvers for directed acyclic networks whose edge
//! failures are correlated through a hidden discrete state.
//!
//! Each edge of a [`model::Network`] carries one survival probability per
//! value of a hidden variable; conditioned on that value the edges fail
//! independently, so a path's reliability is a mixture over states of
//! per-state products. The crate provides:
//!
//! - [`model`] — the network/path data model and reliability evaluation;
//! - [`oracle`] — exhaustive enumeration, the exact desk-scale reference;
//! - [`bounds`] — the additive Jensen lower bound and its polynomial-time
//!   maximizer, with a sandwich certificate relating it to the optimum;
//! - [`exact_dp`] — the exact dynamic program over per-state integer
//!   log-cost vectors;
//! - [`approx`] — grid coarsening with a `1 - epsilon` guarantee and the
//!   threshold-pruning scheme with an `OPT^(1+epsilon)` guarantee;
//! - [`rounding`] — flow feasibility, greedy path decomposition, and
//!   randomized path selection for the relaxed edge-flow program;
//! - [`reductions`] — constructive hardness gadgets mapping 3-CNF formulas
//!   to string templates and templates to networks.
//!
//! The companion `book/` directory walks through the concepts with runnable
//! examples; those snippets compile and run as part of `cargo test`.

pub mod approx;
pub mod bounds;
pub mod error;
pub mod exact_dp;
pub mod model;
pub mod oracle;
pub mod reductions;
pub mod rounding;

#[cfg(test)]
pub(crate) mod test_util;

pub use error::{Error, Result};
pub use model::{Edge, LogReliability, Network, Path, ValidationReport};
pub use oracle::{brute_force_best, enumerate_paths, Method, SolveResult};
