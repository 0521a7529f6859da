//! Degree reduction with marked edges and the mark-banded grid weighting.
//!
//! A lattice edge `e` at scale `n` weighs `n⁴ + mark(e)·n⁸`, plus
//! `up(e)·col(e)` when vertical, with `col` counted from 1. The marks dominate
//! the total, so a path with `l` marked edges is expected to weigh strictly
//! between `l·n⁸` and `(l+1)·n⁸`; the column perturbation separates paths of
//! equal length. [`check_band`] and [`check_grid_uniqueness`] test both facts
//! by enumeration rather than assuming them.

mod degree;
mod weights;

pub use degree::{degree_reduce, MarkedDag, VertexGadget};
pub use weights::{
    assign_weights, check_band, check_grid_uniqueness, direction, edge_weight, min_edge_weight,
    Band, BandReport, BandTie, Coord, Direction, GridDag, GridPath, GridUniquenessReport,
    WeightedGridDag,
};
