use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::dag::{Dag, VertexId};
use crate::error::{Error, Result};
use crate::paths::{enumerate_paths, extremal_uniqueness, Extremum, UniquenessReport};
use crate::prune::prune;

/// Lattice position; row 0 is the top row, column 0 the leftmost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub row: usize,
    pub col: usize,
}

impl Coord {
    pub fn new(row: usize, col: usize) -> Self {
        Coord { row, col }
    }
}

/// A DAG drawn on a `rows × cols` lattice: vertices sit on distinct lattice
/// points and every edge joins orthogonal neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDag {
    rows: usize,
    cols: usize,
    coords: Vec<Coord>,
    dag: Dag,
}

impl GridDag {
    pub fn new(rows: usize, cols: usize, coords: Vec<Coord>, dag: Dag) -> Result<Self> {
        if coords.len() != dag.n() {
            return Err(Error::Invariant(format!(
                "{} coordinates for {} vertices",
                coords.len(),
                dag.n()
            )));
        }
        let mut taken = BTreeMap::new();
        for (v, c) in coords.iter().enumerate() {
            if c.row >= rows || c.col >= cols {
                return Err(Error::BadCoordinate {
                    vertex: v,
                    message: format!("({}, {}) outside a {rows}x{cols} grid", c.row, c.col),
                });
            }
            if let Some(other) = taken.insert(*c, v) {
                return Err(Error::BadCoordinate {
                    vertex: v,
                    message: format!("shares ({}, {}) with vertex {other}", c.row, c.col),
                });
            }
        }
        for e in dag.edges() {
            let (a, b) = (coords[e.from], coords[e.to]);
            if a.row.abs_diff(b.row) + a.col.abs_diff(b.col) != 1 {
                return Err(Error::NotLatticeEdge(e.from, e.to));
            }
        }
        Ok(GridDag {
            rows,
            cols,
            coords,
            dag,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn coord(&self, v: VertexId) -> Coord {
        self.coords[v]
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    /// Same lattice placement, different graph on the same vertex ids.
    pub(crate) fn with_dag(&self, dag: Dag) -> GridDag {
        GridDag {
            dag,
            ..self.clone()
        }
    }

    /// Restricts to the vertices on some `s → t` path, keeping their
    /// lattice positions.
    pub fn pruned(&self) -> Result<GridDag> {
        let p = prune(&self.dag)?;
        let coords = p.new_to_old.iter().map(|&v| self.coords[v]).collect();
        GridDag::new(self.rows, self.cols, coords, p.dag)
    }

    /// Smallest scale `n ≥ 2` with `n² ≥ max(rows, cols)`.
    pub fn min_scale(&self) -> u64 {
        let side = self.rows.max(self.cols) as u64;
        (2..).find(|n| n * n >= side).unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Up,
    Down,
}

/// A grid DAG carrying the mark-banded weights for scale `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGridDag {
    grid: GridDag,
    scale: u64,
}

impl WeightedGridDag {
    pub fn grid(&self) -> &GridDag {
        &self.grid
    }

    pub fn dag(&self) -> &Dag {
        self.grid.dag()
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// `n⁸`, the width of one mark band.
    pub fn band_width(&self) -> BigUint {
        BigUint::from(self.scale).pow(8)
    }
}

pub fn direction(grid: &GridDag, from: VertexId, to: VertexId) -> Direction {
    let (a, b) = (grid.coord(from), grid.coord(to));
    match b.row.cmp(&a.row) {
        std::cmp::Ordering::Equal => Direction::Horizontal,
        std::cmp::Ordering::Less => Direction::Up,
        std::cmp::Ordering::Greater => Direction::Down,
    }
}

/// Weight of one lattice edge at scale `n`:
/// `n⁴ + mark·n⁸` horizontally, plus `±col` (1-based, `+` when going up)
/// vertically.
pub fn edge_weight(n: u64, marked: bool, dir: Direction, col: usize) -> BigUint {
    let n = BigUint::from(n);
    let mut w = n.pow(4);
    if marked {
        w += n.pow(8);
    }
    let col = BigUint::from(col + 1);
    match dir {
        Direction::Horizontal => w,
        Direction::Up => w + col,
        Direction::Down => w - col,
    }
}

pub fn assign_weights(grid: &GridDag, n: u64) -> Result<WeightedGridDag> {
    let needed = grid.rows().max(grid.cols());
    if n < 2 || (n as u128) * (n as u128) < needed as u128 {
        return Err(Error::ScaleTooSmall { n, needed });
    }
    let weights = grid
        .dag()
        .edges()
        .iter()
        .map(|e| {
            let dir = direction(grid, e.from, e.to);
            edge_weight(n, e.marked, dir, grid.coord(e.from).col)
        })
        .collect();
    let dag = grid.dag().with_weights(weights)?;
    Ok(WeightedGridDag {
        grid: grid.with_dag(dag),
        scale: n,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPath {
    pub path: Vec<VertexId>,
    pub marks: usize,
    pub weight: BigUint,
}

/// Extremes of one mark band.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    pub marks: usize,
    pub paths: usize,
    pub min: BigUint,
    pub min_count: usize,
    pub max: BigUint,
    pub max_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandReport {
    pub band_width: BigUint,
    pub paths_checked: usize,
    pub bands: Vec<Band>,
    /// Paths whose weight falls outside `(l·n⁸, (l+1)·n⁸)`.
    pub violations: Vec<GridPath>,
    pub truncated: bool,
}

impl BandReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && !self.truncated
    }
}

fn st_paths(wg: &WeightedGridDag, cap: usize) -> (Vec<GridPath>, bool) {
    let g = wg.dag();
    let list = enumerate_paths(g, g.source(), g.sink(), cap);
    let paths = list
        .paths
        .into_iter()
        .filter(|p| p.len() > 1)
        .map(|path| GridPath {
            marks: g.path_marks(&path).unwrap(),
            weight: g.path_weight(&path).unwrap(),
            path,
        })
        .collect();
    (paths, list.truncated)
}

fn summarize(paths: &[GridPath]) -> Vec<Band> {
    let mut by_marks: BTreeMap<usize, Vec<&GridPath>> = BTreeMap::new();
    for p in paths {
        by_marks.entry(p.marks).or_default().push(p);
    }
    by_marks
        .into_iter()
        .map(|(marks, group)| {
            let min = group.iter().map(|p| &p.weight).min().unwrap().clone();
            let max = group.iter().map(|p| &p.weight).max().unwrap().clone();
            Band {
                marks,
                paths: group.len(),
                min_count: group.iter().filter(|p| p.weight == min).count(),
                max_count: group.iter().filter(|p| p.weight == max).count(),
                min,
                max,
            }
        })
        .collect()
}

/// Groups the nonempty `s → t` paths by mark count and checks each weight
/// lies strictly inside its band.
pub fn check_band(wg: &WeightedGridDag, cap: usize) -> BandReport {
    let (paths, truncated) = st_paths(wg, cap);
    let width = wg.band_width();
    let violations = paths
        .iter()
        .filter(|p| {
            let lo = &width * p.marks;
            let hi = &lo + &width;
            !(p.weight > lo && p.weight < hi)
        })
        .cloned()
        .collect();
    BandReport {
        band_width: width,
        paths_checked: paths.len(),
        bands: summarize(&paths),
        violations,
        truncated,
    }
}

/// A band whose lightest or heaviest weight is attained more than once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandTie {
    pub marks: usize,
    pub extremum: Extremum,
    pub weight: BigUint,
    pub paths: Vec<Vec<VertexId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridUniquenessReport {
    pub min: UniquenessReport,
    pub max: UniquenessReport,
    pub band_ties: Vec<BandTie>,
    pub truncated: bool,
}

impl GridUniquenessReport {
    pub fn passed(&self) -> bool {
        self.min.is_unique() && self.max.is_unique() && self.band_ties.is_empty() && !self.truncated
    }
}

/// All-pairs min/max uniqueness by counting, plus uniqueness of the lightest
/// and heaviest `s → t` path inside every mark band by enumeration.
pub fn check_grid_uniqueness(wg: &WeightedGridDag, cap: usize) -> GridUniquenessReport {
    let (paths, truncated) = st_paths(wg, cap);
    let mut band_ties = Vec::new();
    for band in summarize(&paths) {
        for (extremum, weight, count) in [
            (Extremum::Min, &band.min, band.min_count),
            (Extremum::Max, &band.max, band.max_count),
        ] {
            if count > 1 {
                band_ties.push(BandTie {
                    marks: band.marks,
                    extremum,
                    weight: weight.clone(),
                    paths: paths
                        .iter()
                        .filter(|p| p.marks == band.marks && &p.weight == weight)
                        .map(|p| p.path.clone())
                        .collect(),
                });
            }
        }
    }
    GridUniquenessReport {
        min: extremal_uniqueness(wg.dag(), Extremum::Min),
        max: extremal_uniqueness(wg.dag(), Extremum::Max),
        band_ties,
        truncated,
    }
}

/// Smallest weight any single lattice edge can receive at scale `n`.
pub fn min_edge_weight(n: u64, cols: usize) -> BigUint {
    let n4 = BigUint::from(n).pow(4);
    let c = BigUint::from(cols);
    if n4 > c {
        n4 - c
    } else {
        BigUint::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::Edge;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    /// Every lattice point of a `rows × cols` grid, id = row·cols + col.
    fn lattice(rows: usize, cols: usize) -> Vec<Coord> {
        (0..rows * cols)
            .map(|i| Coord::new(i / cols, i % cols))
            .collect()
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(edge_weight(2, false, Direction::Horizontal, 0), big(16));
        assert_eq!(edge_weight(2, true, Direction::Up, 2), big(275));
        assert_eq!(edge_weight(2, false, Direction::Down, 0), big(15));
        assert_eq!(edge_weight(2, true, Direction::Horizontal, 5), big(272));
    }

    #[test]
    fn rejects_non_lattice_edges_and_bad_coords() {
        let dag = Dag::unit(2, 0, 1, &[(0, 1)]).unwrap();
        let far = vec![Coord::new(0, 0), Coord::new(1, 1)];
        assert_eq!(
            GridDag::new(2, 2, far, dag.clone()),
            Err(Error::NotLatticeEdge(0, 1))
        );
        let outside = vec![Coord::new(0, 0), Coord::new(0, 2)];
        assert!(matches!(
            GridDag::new(2, 2, outside, dag.clone()),
            Err(Error::BadCoordinate { vertex: 1, .. })
        ));
        let shared = vec![Coord::new(0, 0), Coord::new(0, 0)];
        assert!(matches!(
            GridDag::new(2, 2, shared, dag),
            Err(Error::BadCoordinate { vertex: 1, .. })
        ));
    }

    #[test]
    fn scale_must_cover_the_grid() {
        let dag = Dag::unit(5, 0, 4, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let grid = GridDag::new(1, 5, lattice(1, 5), dag).unwrap();
        assert_eq!(
            assign_weights(&grid, 2),
            Err(Error::ScaleTooSmall { n: 2, needed: 5 })
        );
        assert_eq!(grid.min_scale(), 3);
        assert!(assign_weights(&grid, 3).is_ok());
        assert!(matches!(
            assign_weights(&grid, 1),
            Err(Error::ScaleTooSmall { .. })
        ));
    }

    #[test]
    fn unmarked_three_step_path_in_band_zero() {
        // (0,0) → (0,1) → (1,1) → (1,2) on a 2x3 grid, n = 3
        let coords = vec![
            Coord::new(0, 0),
            Coord::new(0, 1),
            Coord::new(1, 1),
            Coord::new(1, 2),
        ];
        let dag = Dag::unit(4, 0, 3, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let wg = assign_weights(&GridDag::new(2, 3, coords, dag).unwrap(), 3).unwrap();
        // 81 + (81 − 2) + 81
        assert_eq!(wg.dag().path_weight(&[0, 1, 2, 3]), Some(big(241)));
        let report = check_band(&wg, 10);
        assert!(report.passed());
        assert_eq!(report.bands[0].marks, 0);
        assert!(report.bands[0].max <= big(270));
    }

    /// Two paths that meet at the centre of a 3x3 grid, each taking its only
    /// mark in a different cell. The column perturbations cancel
    /// (−2 − 2 = −1 − 3), so both have weight 316 at n = 2, and swapping
    /// cells to separate them changes the mark count.
    #[test]
    fn in_band_extremes_can_tie() {
        let coords = vec![
            Coord::new(0, 0),
            Coord::new(0, 1),
            Coord::new(1, 0),
            Coord::new(1, 1),
            Coord::new(1, 2),
            Coord::new(2, 1),
            Coord::new(2, 2),
        ];
        let edges = vec![
            Edge::unit(0, 1).with_mark(true),
            Edge::unit(1, 3),
            Edge::unit(0, 2),
            Edge::unit(2, 3),
            Edge::unit(3, 5),
            Edge::unit(5, 6),
            Edge::unit(3, 4).with_mark(true),
            Edge::unit(4, 6),
        ];
        let grid = GridDag::new(3, 3, coords, Dag::new(7, 0, 6, edges).unwrap()).unwrap();
        let wg = assign_weights(&grid, 2).unwrap();
        let a = [0, 1, 3, 5, 6];
        let b = [0, 2, 3, 4, 6];
        assert_eq!(wg.dag().path_weight(&a), Some(big(272 + 14 + 14 + 16)));
        assert_eq!(wg.dag().path_weight(&b), Some(big(15 + 16 + 272 + 13)));

        assert!(check_band(&wg, 100).passed());
        let report = check_grid_uniqueness(&wg, 100);
        assert!(report.min.is_unique() && report.max.is_unique());
        assert_eq!(report.band_ties.len(), 2);
        for tie in &report.band_ties {
            assert_eq!((tie.marks, tie.weight.clone()), (1, big(316)));
            assert_eq!(tie.paths, vec![a.to_vec(), b.to_vec()]);
        }
    }

    #[test]
    fn single_marked_edge_band_one() {
        let coords = vec![Coord::new(0, 0), Coord::new(0, 1)];
        let dag = Dag::new(2, 0, 1, vec![Edge::unit(0, 1).with_mark(true)]).unwrap();
        let wg = assign_weights(&GridDag::new(2, 2, coords, dag).unwrap(), 2).unwrap();
        let report = check_band(&wg, 10);
        assert_eq!(report.bands[0].min, big(272));
        assert!(report.passed());
    }

    #[test]
    fn empty_path_is_excluded() {
        let dag = Dag::unit(1, 0, 0, &[]).unwrap();
        let wg =
            assign_weights(&GridDag::new(1, 1, vec![Coord::new(0, 0)], dag).unwrap(), 2).unwrap();
        let report = check_band(&wg, 10);
        assert_eq!(report.paths_checked, 0);
        assert!(report.passed());
    }

    #[test]
    fn straight_line_is_unique() {
        let dag = Dag::unit(4, 0, 3, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let wg = assign_weights(&GridDag::new(1, 4, lattice(1, 4), dag).unwrap(), 2).unwrap();
        assert!(check_grid_uniqueness(&wg, 10).passed());
    }

    #[test]
    fn two_by_two_square_extremes_differ() {
        // (0,0) → (0,1) → (1,1) and (0,0) → (1,0) → (1,1), no marks
        let dag = Dag::unit(4, 0, 3, &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        let wg = assign_weights(&GridDag::new(2, 2, lattice(2, 2), dag).unwrap(), 2).unwrap();
        // right-then-down: 16 + (16 − 2); down-then-right: (16 − 1) + 16
        assert_eq!(wg.dag().path_weight(&[0, 1, 3]), Some(big(30)));
        assert_eq!(wg.dag().path_weight(&[0, 2, 3]), Some(big(31)));
        let report = check_grid_uniqueness(&wg, 10);
        assert!(report.passed(), "{report:?}");
        let band = check_band(&wg, 10);
        assert_eq!(band.bands.len(), 1);
        assert_eq!((band.bands[0].min_count, band.bands[0].max_count), (1, 1));
    }

    #[test]
    fn weights_stay_positive() {
        for n in 2..6u64 {
            let cols = (n * n) as usize;
            assert!(!min_edge_weight(n, cols).is_zero());
            assert_eq!(
                min_edge_weight(n, cols),
                edge_weight(n, false, Direction::Down, cols - 1)
            );
        }
    }
}
