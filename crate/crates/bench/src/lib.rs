//! Fixed, seeded instances shared by the benchmarks.

use longpath_core::gen::{gen_instance, GenKind, GenSpec};
use longpath_core::grid::GridDag;
use longpath_core::{prune, Dag, GraphDoc};

/// Pruned random DAG with `nodes` vertices.
pub fn random_pruned(nodes: usize, density: f64, seed: u64, max_unique: bool) -> Dag {
    let spec = GenSpec::new(GenKind::RandomDag, nodes, density, seed).max_unique(max_unique);
    let doc = gen_instance(&spec).expect("generator");
    prune(doc.dag())
        .expect("generated graphs have an s-t path")
        .dag
}

pub fn grid(rows: usize, cols: usize, seed: u64) -> GridDag {
    let spec = GenSpec::new(GenKind::GridDag, 0, 0.85, seed).shape(rows, cols);
    match gen_instance(&spec).expect("generator") {
        GraphDoc::Grid(g) => g,
        GraphDoc::Dag(_) => unreachable!("grid generator emits grids"),
    }
}
