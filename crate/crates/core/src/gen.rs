//! Seeded instance generators.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so a spec and
//! seed always produce the same instance. Vertex ids are assigned in
//! topological rank order, which makes every generated graph acyclic by
//! construction.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dag::{Dag, Edge, VertexId};
use crate::error::{Error, Result};
use crate::format::GraphDoc;
use crate::grid::{Coord, GridDag};
use crate::paths::{extremal_uniqueness, Extremum};

/// Default number of attempts before giving up on the reachability or
/// max-unique filter.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    RandomDag,
    LayeredDag,
    GridDag,
    Chain,
    Diamond,
}

impl GenKind {
    pub const ALL: [GenKind; 5] = [
        GenKind::RandomDag,
        GenKind::LayeredDag,
        GenKind::GridDag,
        GenKind::Chain,
        GenKind::Diamond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::RandomDag => "random-dag",
            GenKind::LayeredDag => "layered-dag",
            GenKind::GridDag => "grid-dag",
            GenKind::Chain => "chain",
            GenKind::Diamond => "diamond",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown generator kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub nodes: usize,
    /// Edge probability in `[0, 1]`.
    pub density: f64,
    pub seed: u64,
    /// Rejection-sample until every vertex pair has a unique longest path.
    pub max_unique: bool,
    /// Lattice shape for `grid-dag`; defaults to the smallest square holding
    /// `nodes` points.
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub attempts: usize,
}

impl GenSpec {
    pub fn new(kind: GenKind, nodes: usize, density: f64, seed: u64) -> Self {
        GenSpec {
            kind,
            nodes,
            density,
            seed,
            max_unique: false,
            rows: None,
            cols: None,
            attempts: MAX_ATTEMPTS,
        }
    }

    pub fn max_unique(mut self, on: bool) -> Self {
        self.max_unique = on;
        self
    }

    pub fn shape(mut self, rows: usize, cols: usize) -> Self {
        self.rows = Some(rows);
        self.cols = Some(cols);
        self
    }

    fn grid_shape(&self) -> (usize, usize) {
        let side = (1..).find(|s| s * s >= self.nodes.max(1)).unwrap();
        (self.rows.unwrap_or(side), self.cols.unwrap_or(side))
    }
}

pub fn gen_instance(spec: &GenSpec) -> Result<GraphDoc> {
    if !(0.0..=1.0).contains(&spec.density) {
        return Err(Error::Precondition(format!(
            "density {} outside [0, 1]",
            spec.density
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.attempts {
        let doc = match spec.kind {
            GenKind::Chain => GraphDoc::Dag(chain(spec.nodes)?),
            GenKind::Diamond => GraphDoc::Dag(Dag::unit(3, 0, 2, &[(0, 1), (1, 2), (0, 2)])?),
            GenKind::RandomDag => match random_dag(&mut rng, spec.nodes, spec.density)? {
                Some(g) => GraphDoc::Dag(g),
                None => continue,
            },
            GenKind::LayeredDag => GraphDoc::Dag(layered_dag(&mut rng, spec.nodes, spec.density)?),
            GenKind::GridDag => {
                let (rows, cols) = spec.grid_shape();
                match grid_dag(&mut rng, rows, cols, spec.density)? {
                    Some(g) => GraphDoc::Grid(g),
                    None => continue,
                }
            }
        };
        if !spec.max_unique || extremal_uniqueness(doc.dag(), Extremum::Max).is_unique() {
            return Ok(doc);
        }
        if matches!(spec.kind, GenKind::Chain | GenKind::Diamond) {
            break;
        }
    }
    Err(Error::RetriesExhausted(spec.attempts))
}

fn chain(n: usize) -> Result<Dag> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Dag::unit(n, 0, n.saturating_sub(1), &edges)
}

/// Edges `i → j` for `i < j`, each with probability `p`; `None` when the
/// sink is unreachable.
fn random_dag(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Result<Option<Dag>> {
    if n < 2 {
        return Err(Error::Precondition(
            "random-dag needs at least 2 nodes".into(),
        ));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    let g = Dag::unit(n, 0, n - 1, &edges)?;
    Ok(g.reachable_from(0)[n - 1].then_some(g))
}

/// Source alone in the first layer, sink alone in the last, and the rest
/// split in id order into a random number of non-empty layers. Edges join
/// consecutive layers with probability `p`, and every vertex gets at least
/// one edge in and one out.
fn layered_dag(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Result<Dag> {
    if n < 2 {
        return Err(Error::Precondition(
            "layered-dag needs at least 2 nodes".into(),
        ));
    }
    let inner = n - 2;
    let mut layers: Vec<Vec<VertexId>> = vec![vec![0]];
    if inner > 0 {
        let count = rng.gen_range(1..=inner);
        let mut cuts = sample(rng, inner - 1, count - 1).into_vec();
        cuts.sort_unstable();
        let mut start = 1;
        for cut in cuts.into_iter().map(|c| c + 2).chain([n - 1]) {
            layers.push((start..cut).collect());
            start = cut;
        }
    }
    layers.push(vec![n - 1]);

    let mut edges = Vec::new();
    for pair in layers.windows(2) {
        let (upper, lower) = (&pair[0], &pair[1]);
        let mut has_in = vec![false; lower.len()];
        let mut has_out = vec![false; upper.len()];
        for (a, &u) in upper.iter().enumerate() {
            for (b, &v) in lower.iter().enumerate() {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                    has_out[a] = true;
                    has_in[b] = true;
                }
            }
        }
        for (b, &v) in lower.iter().enumerate() {
            if !has_in[b] {
                let a = rng.gen_range(0..upper.len());
                edges.push((upper[a], v));
                has_out[a] = true;
            }
        }
        for (a, &u) in upper.iter().enumerate() {
            if !has_out[a] {
                edges.push((u, lower[rng.gen_range(0..lower.len())]));
            }
        }
    }
    edges.sort_unstable();
    Dag::unit(n, 0, n - 1, &edges)
}

/// Lattice edges kept with probability `p`, oriented along a noisy
/// top-left to bottom-right potential, marked with probability 1/2, and
/// pruned between the two corners. `None` when the corners are disconnected.
fn grid_dag(rng: &mut ChaCha8Rng, rows: usize, cols: usize, p: f64) -> Result<Option<GridDag>> {
    if rows * cols < 2 {
        return Err(Error::Precondition(
            "grid-dag needs at least 2 lattice points".into(),
        ));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let potential: Vec<(usize, VertexId)> = (0..rows * cols)
        .map(|v| ((v / cols + v % cols) * 4 + rng.gen_range(0..6), v))
        .collect();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let neighbours = [(r, c + 1), (r + 1, c)];
            for (r2, c2) in neighbours {
                if r2 >= rows || c2 >= cols || !rng.gen_bool(p) {
                    continue;
                }
                let (a, b) = (id(r, c), id(r2, c2));
                let (u, v) = if potential[a] < potential[b] {
                    (a, b)
                } else {
                    (b, a)
                };
                edges.push(Edge::unit(u, v).with_mark(rng.gen_bool(0.5)));
            }
        }
    }
    let full = Dag::new(rows * cols, 0, id(rows - 1, cols - 1), edges)?;
    let coords = (0..rows * cols)
        .map(|v| Coord::new(v / cols, v % cols))
        .collect();
    match GridDag::new(rows, cols, coords, full)?.pruned() {
        Ok(g) => Ok(Some(g)),
        Err(Error::NoPath { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::emit;
    use crate::paths::longest_path_dp;

    #[test]
    fn chain_of_four() {
        let g = gen_instance(&GenSpec::new(GenKind::Chain, 4, 0.0, 0))
            .unwrap()
            .into_dag();
        assert_eq!(longest_path_dp(&g, 0, 3), Some(3u32.into()));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn diamond_kind() {
        let g = gen_instance(&GenSpec::new(GenKind::Diamond, 0, 0.0, 0))
            .unwrap()
            .into_dag();
        assert_eq!(g, Dag::unit(3, 0, 2, &[(0, 1), (1, 2), (0, 2)]).unwrap());
    }

    #[test]
    fn same_seed_same_bytes() {
        for kind in GenKind::ALL {
            let spec = GenSpec::new(kind, 7, 0.4, 42);
            let a = emit(&gen_instance(&spec).unwrap());
            let b = emit(&gen_instance(&spec).unwrap());
            assert_eq!(a, b, "{kind}");
        }
    }

    #[test]
    fn seeds_differ() {
        let a = emit(&gen_instance(&GenSpec::new(GenKind::RandomDag, 9, 0.5, 1)).unwrap());
        let b = emit(&gen_instance(&GenSpec::new(GenKind::RandomDag, 9, 0.5, 2)).unwrap());
        assert_ne!(a, b);
    }

    #[test]
    fn layered_vertices_all_lie_on_paths() {
        for seed in 0..20 {
            let g = gen_instance(&GenSpec::new(GenKind::LayeredDag, 8, 0.3, seed))
                .unwrap()
                .into_dag();
            assert!(g.is_st_pruned(), "seed {seed}");
        }
    }

    #[test]
    fn grid_is_pruned_and_lattice_shaped() {
        for seed in 0..20 {
            let doc =
                gen_instance(&GenSpec::new(GenKind::GridDag, 0, 0.8, seed).shape(3, 4)).unwrap();
            let GraphDoc::Grid(grid) = doc else { panic!() };
            assert!(grid.dag().is_st_pruned());
            assert_eq!((grid.rows(), grid.cols()), (3, 4));
            assert_eq!(grid.coord(grid.dag().source()), Coord::new(0, 0));
            assert_eq!(grid.coord(grid.dag().sink()), Coord::new(2, 3));
        }
    }

    #[test]
    fn max_unique_filter() {
        for seed in 0..10 {
            let doc =
                gen_instance(&GenSpec::new(GenKind::RandomDag, 7, 0.5, seed).max_unique(true))
                    .unwrap();
            assert!(extremal_uniqueness(doc.dag(), Extremum::Max).is_unique());
        }
    }

    #[test]
    fn filter_gives_up() {
        let mut spec = GenSpec::new(GenKind::RandomDag, 4, 1.0, 0);
        spec.attempts = 0;
        assert_eq!(gen_instance(&spec), Err(Error::RetriesExhausted(0)));
    }

    #[test]
    fn bad_density() {
        assert!(matches!(
            gen_instance(&GenSpec::new(GenKind::RandomDag, 4, 1.5, 0)),
            Err(Error::Precondition(_))
        ));
    }
}
