//! Deterministic path oracles: extremal-weight dynamic programs over a
//! topological order, exhaustive path enumeration, and extremal-path counting.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::dag::{Dag, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extremum {
    Min,
    Max,
}

impl Extremum {
    fn improves(self, candidate: &BigUint, incumbent: &BigUint) -> Ordering {
        match self {
            Extremum::Max => candidate.cmp(incumbent),
            Extremum::Min => incumbent.cmp(candidate),
        }
    }
}

/// Extremal path weight from `from` to every vertex; `None` where unreachable.
pub fn extremal_weights(g: &Dag, from: VertexId, mode: Extremum) -> Vec<Option<BigUint>> {
    let mut best: Vec<Option<BigUint>> = vec![None; g.n()];
    best[from] = Some(BigUint::zero());
    for &u in g.topo_order() {
        let Some(base) = best[u].clone() else {
            continue;
        };
        for &i in g.out_edges(u) {
            let e = g.edge(i);
            let cand = &base + &e.weight;
            let slot = &mut best[e.to];
            match slot {
                Some(cur) if mode.improves(&cand, cur) != Ordering::Greater => {}
                _ => *slot = Some(cand),
            }
        }
    }
    best
}

/// Weight of the heaviest `u → v` path, `None` if `v` is unreachable.
pub fn longest_path_dp(g: &Dag, u: VertexId, v: VertexId) -> Option<BigUint> {
    extremal_weights(g, u, Extremum::Max).swap_remove(v)
}

/// Weight of the lightest `u → v` path, `None` if `v` is unreachable.
pub fn shortest_path_dp(g: &Dag, u: VertexId, v: VertexId) -> Option<BigUint> {
    extremal_weights(g, u, Extremum::Min).swap_remove(v)
}

/// `D(v)`: heaviest path weight from each vertex to the sink, and their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DVector {
    pub values: Vec<BigUint>,
    pub total: BigUint,
}

impl DVector {
    pub fn get(&self, v: VertexId) -> &BigUint {
        &self.values[v]
    }

    /// The values as machine integers; only meaningful for unit-weight graphs
    /// where every `D(v) < n`.
    pub fn lengths(&self) -> Vec<usize> {
        self.values
            .iter()
            .map(|d| usize::try_from(d).expect("path length fits in usize"))
            .collect()
    }
}

pub fn d_vector(g: &Dag) -> Result<DVector> {
    let t = g.sink();
    let mut d: Vec<Option<BigUint>> = vec![None; g.n()];
    d[t] = Some(BigUint::zero());
    for &u in g.topo_order().iter().rev() {
        if u == t {
            continue;
        }
        d[u] = g
            .out_edges(u)
            .iter()
            .filter_map(|&i| {
                let e = g.edge(i);
                d[e.to].as_ref().map(|rest| rest + &e.weight)
            })
            .max();
    }
    let values = d
        .into_iter()
        .enumerate()
        .map(|(v, x)| x.ok_or(Error::UnreachableVertex(v)))
        .collect::<Result<Vec<_>>>()?;
    let total = values.iter().sum();
    Ok(DVector { values, total })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathList {
    pub paths: Vec<Vec<VertexId>>,
    /// Set when enumeration stopped at the cap; `paths` is then a prefix of
    /// the full lexicographic listing.
    pub truncated: bool,
}

impl PathList {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn require_complete(&self, cap: usize) -> Result<&Self> {
        if self.truncated {
            Err(Error::CapExceeded { cap })
        } else {
            Ok(self)
        }
    }
}

/// All `u → v` paths in lexicographic order of their vertex sequences,
/// stopping after `cap` paths.
pub fn enumerate_paths(g: &Dag, u: VertexId, v: VertexId, cap: usize) -> PathList {
    let useful = g.reaching(v);
    let mut out = PathList::default();
    if !useful[u] {
        return out;
    }
    let mut path = vec![u];
    extend(g, v, &useful, cap, &mut path, &mut out);
    out
}

fn extend(
    g: &Dag,
    target: VertexId,
    useful: &[bool],
    cap: usize,
    path: &mut Vec<VertexId>,
    out: &mut PathList,
) {
    let last = *path.last().unwrap();
    if last == target {
        if out.paths.len() == cap {
            out.truncated = true;
        } else {
            out.paths.push(path.clone());
        }
        return;
    }
    for w in g.successors(last) {
        if out.truncated {
            return;
        }
        if useful[w] {
            path.push(w);
            extend(g, target, useful, cap, path, out);
            path.pop();
        }
    }
}

/// Number of extremal-weight paths between one ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCount {
    pub from: VertexId,
    pub to: VertexId,
    pub weight: BigUint,
    pub count: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub mode: Extremum,
    /// One entry per ordered pair `u ≠ v` with `u →* v`, ordered by `(u, v)`.
    pub pairs: Vec<PairCount>,
}

impl UniquenessReport {
    pub fn is_unique(&self) -> bool {
        self.pairs.iter().all(|p| p.count.is_one())
    }

    pub fn violations(&self) -> impl Iterator<Item = &PairCount> {
        self.pairs.iter().filter(|p| !p.count.is_one())
    }

    pub fn pair(&self, from: VertexId, to: VertexId) -> Option<&PairCount> {
        self.pairs.iter().find(|p| p.from == from && p.to == to)
    }
}

/// Counts extremal paths for every reachable ordered pair with a
/// (weight, multiplicity) dynamic program per start vertex.
pub fn extremal_uniqueness(g: &Dag, mode: Extremum) -> UniquenessReport {
    let mut pairs = Vec::new();
    for from in 0..g.n() {
        let mut best: Vec<Option<(BigUint, BigUint)>> = vec![None; g.n()];
        best[from] = Some((BigUint::zero(), BigUint::one()));
        for &u in g.topo_order() {
            let Some((w, c)) = best[u].clone() else {
                continue;
            };
            for &i in g.out_edges(u) {
                let e = g.edge(i);
                let cand = &w + &e.weight;
                match &mut best[e.to] {
                    Some((bw, bc)) => match mode.improves(&cand, bw) {
                        Ordering::Greater => {
                            *bw = cand;
                            *bc = c.clone();
                        }
                        Ordering::Equal => *bc += &c,
                        Ordering::Less => {}
                    },
                    slot @ None => *slot = Some((cand, c.clone())),
                }
            }
        }
        for (to, entry) in best.into_iter().enumerate() {
            if to == from {
                continue;
            }
            if let Some((weight, count)) = entry {
                pairs.push(PairCount {
                    from,
                    to,
                    weight,
                    count,
                });
            }
        }
    }
    UniquenessReport { mode, pairs }
}
