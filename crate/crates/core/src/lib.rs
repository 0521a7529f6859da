//! Longest paths in single-source single-sink DAGs.
//!
//! * [`dag`], [`paths`], [`prune`]: graph representation and deterministic
//!   oracles (extremal-path dynamic programs, enumeration, uniqueness counts).
//! * [`reduction`]: the edge-stretching map that turns longest paths into
//!   shortest ones.
//! * [`grid`]: degree reduction with marked edges and mark-banded lattice
//!   weights.
//! * [`ulsim`]: run-counting simulation of the inductive-counting algorithm.
//! * [`format`], [`gen`]: the text graph format and seeded instance
//!   generators.

pub mod dag;
pub mod error;
pub mod format;
pub mod gen;
pub mod grid;
pub mod paths;
pub mod prune;
pub mod reduction;
pub mod ulsim;

pub use dag::{validate, Dag, Edge, ValidationReport, VertexId};
pub use error::{Error, Result};
pub use format::GraphDoc;
pub use paths::{
    d_vector, enumerate_paths, extremal_uniqueness, longest_path_dp, shortest_path_dp, DVector,
    Extremum, PathList, UniquenessReport,
};
pub use prune::{prune, prune_to_st, Pruned};
