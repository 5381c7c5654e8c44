//! Induced matchings in graphs of maximum degree 4.
//!
//! [`engine::solve`] returns an induced matching of size at least
//! `(n - i) / 9`, where `i` counts isolated vertices, for every graph of
//! maximum degree 4 without a component isomorphic to the doubled 5-cycle,
//! together with a step-by-step certificate. [`exact`] computes the optimum on
//! small graphs, [`harness`] checks results independently and fuzzes the
//! engine, and [`cli`] wraps everything in a command-line tool.

pub mod cli;
pub mod engine;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod instances;
pub mod io;

pub use engine::{solve, solve_with, SolveError, SolveOptions, SolveResult};
pub use exact::{max_induced_matching, strong_matching_number, SearchBudget};
pub use graph::{Graph, GraphError, Matching, VertexId, VertexSet};
