//! Edge stretching that swaps longest and shortest `s → t` paths.
//!
//! For a pruned single-source single-sink DAG with `|E|` edges, every edge
//! `⟨u, v⟩` is replaced by a path of
//!
//! ```text
//! l_uv = 2 · Σ { out-degree(x) : u ∈ P_x, v ∉ P_x } − 1
//! ```
//!
//! unit edges, where `P_x` is the set of vertices that reach `x`. Each `s → t`
//! path crosses every cut `E_x = P_x × (V \ P_x)` exactly once, so a path with
//! `|ρ|` edges becomes a path of exactly `2|E| − |ρ|` edges. Long paths turn
//! into short ones and vice versa, so `(G, k)` is a Long-Path instance iff
//! `(G', 2|E| − k)` is a Distance instance.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::dag::{Dag, Edge, VertexId};
use crate::error::Result;
use crate::paths::{enumerate_paths, longest_path_dp, shortest_path_dp};

/// Ancestor set `P_u` and the cut `E_u` leaving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutStructure {
    pub vertex: VertexId,
    pub ancestors: BTreeSet<VertexId>,
    pub cut: BTreeSet<(VertexId, VertexId)>,
}

/// `P_u = {x : x →* u}`, including `u`.
pub fn ancestors(g: &Dag, u: VertexId) -> Result<BTreeSet<VertexId>> {
    g.require_pruned()?;
    Ok(members(&g.reaching(u)))
}

/// `E_u`: edges from inside `P_u` to outside it.
pub fn cut_edges(g: &Dag, u: VertexId) -> Result<BTreeSet<(VertexId, VertexId)>> {
    g.require_pruned()?;
    Ok(cut_of(g, &g.reaching(u)))
}

pub fn cut_structure(g: &Dag, u: VertexId) -> Result<CutStructure> {
    g.require_pruned()?;
    let inside = g.reaching(u);
    Ok(CutStructure {
        vertex: u,
        ancestors: members(&inside),
        cut: cut_of(g, &inside),
    })
}

fn members(flags: &[bool]) -> BTreeSet<VertexId> {
    flags
        .iter()
        .enumerate()
        .filter_map(|(v, &f)| f.then_some(v))
        .collect()
}

fn cut_of(g: &Dag, inside: &[bool]) -> BTreeSet<(VertexId, VertexId)> {
    g.edges()
        .iter()
        .filter(|e| inside[e.from] && !inside[e.to])
        .map(|e| (e.from, e.to))
        .collect()
}

/// Ancestor indicator rows: `table[x][y]` iff `y ∈ P_x`.
fn ancestor_table(g: &Dag) -> Vec<Vec<bool>> {
    (0..g.n()).map(|x| g.reaching(x)).collect()
}

fn stretch_with(g: &Dag, table: &[Vec<bool>], u: VertexId, v: VertexId) -> usize {
    let weight: usize = (0..g.n())
        .filter(|&x| table[x][u] && !table[x][v])
        .map(|x| g.out_degree(x))
        .sum();
    2 * weight - 1
}

/// Stretch length `l_uv` of the edge `⟨u, v⟩`.
pub fn stretch(g: &Dag, u: VertexId, v: VertexId) -> Result<usize> {
    g.require_pruned()?;
    if g.find_edge(u, v).is_none() {
        return Err(crate::Error::Precondition(format!(
            "{u} -> {v} is not an edge"
        )));
    }
    Ok(stretch_with(g, &ancestor_table(g), u, v))
}

/// Stretch of every edge, in edge order.
pub fn stretches(g: &Dag) -> Result<Vec<usize>> {
    g.require_pruned()?;
    let table = ancestor_table(g);
    Ok(g.edges()
        .iter()
        .map(|e| stretch_with(g, &table, e.from, e.to))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    /// The stretched graph; the first `n` ids are the original vertices.
    pub graph: Dag,
    /// `l_e` for each original edge, in edge order.
    pub stretches: Vec<usize>,
    /// Vertex path in `graph` replacing each original edge.
    pub replacements: Vec<Vec<VertexId>>,
    /// `|E|` of the original graph.
    pub original_edges: usize,
    pub k: u64,
    /// `2|E| − k`; negative when `k > 2|E|`.
    pub k_prime: i128,
}

impl ReducedInstance {
    /// Image in the stretched graph of an original vertex path.
    pub fn image(&self, original: &Dag, path: &[VertexId]) -> Option<Vec<VertexId>> {
        let mut out = vec![*path.first()?];
        for w in path.windows(2) {
            let i = original.find_edge(w[0], w[1])?;
            out.extend_from_slice(&self.replacements[i][1..]);
        }
        Some(out)
    }

    /// `2|E|`, the constant every path length and its image sum to.
    pub fn twice_edges(&self) -> usize {
        2 * self.original_edges
    }
}

/// Builds `(G', 2|E| − k)` from a pruned unit-weight `(G, k)`.
///
/// Replacement vertices are numbered from `n` upward, edge by edge.
pub fn reduce_instance(g: &Dag, k: u64) -> Result<ReducedInstance> {
    g.require_pruned()?;
    g.require_unit()?;
    let stretches = stretches(g)?;
    let mut next = g.n();
    let mut edges = Vec::with_capacity(stretches.iter().sum());
    let mut replacements = Vec::with_capacity(g.edge_count());
    for (e, &len) in g.edges().iter().zip(&stretches) {
        let mut path = Vec::with_capacity(len + 1);
        path.push(e.from);
        for _ in 1..len {
            path.push(next);
            next += 1;
        }
        path.push(e.to);
        for w in path.windows(2) {
            edges.push(Edge::unit(w[0], w[1]));
        }
        replacements.push(path);
    }
    let graph = Dag::new(next, g.source(), g.sink(), edges)?;
    let m = g.edge_count();
    Ok(ReducedInstance {
        graph,
        stretches,
        replacements,
        original_edges: m,
        k,
        k_prime: 2 * m as i128 - k as i128,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityViolation {
    pub path: Vec<VertexId>,
    pub image_length: Option<usize>,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub twice_edges: usize,
    pub paths_checked: usize,
    pub violations: Vec<IdentityViolation>,
    /// Sorting paths by length ascending sorts their images descending.
    pub order_reversed: bool,
    pub truncated: bool,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.order_reversed && !self.truncated
    }
}

/// Checks `|image(ρ)| = 2|E| − |ρ|` for every `s → t` path, walking each
/// image through the stretched graph itself.
pub fn verify_identity(g: &Dag, cap: usize) -> Result<IdentityReport> {
    let reduced = reduce_instance(g, 0)?;
    let twice = reduced.twice_edges();
    let list = enumerate_paths(g, g.source(), g.sink(), cap);
    let mut violations = Vec::new();
    let mut pairs = Vec::with_capacity(list.len());
    for path in &list.paths {
        let len = path.len() - 1;
        let expected = twice - len;
        let image_length = reduced.image(g, path).and_then(|img| {
            let walked = reduced.graph.path_weight(&img)?;
            let summed: usize = path
                .windows(2)
                .map(|w| reduced.stretches[g.find_edge(w[0], w[1]).unwrap()])
                .sum();
            (walked == BigUint::from(summed)).then_some(summed)
        });
        if image_length != Some(expected) {
            violations.push(IdentityViolation {
                path: path.clone(),
                image_length,
                expected,
            });
        }
        pairs.push((len, image_length.unwrap_or(usize::MAX)));
    }
    pairs.sort();
    let order_reversed = pairs.windows(2).all(|w| w[0].1 >= w[1].1);
    Ok(IdentityReport {
        twice_edges: twice,
        paths_checked: list.len(),
        violations,
        order_reversed,
        truncated: list.truncated,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingViolation {
    pub path: Vec<VertexId>,
    pub vertex: VertexId,
    pub crossings: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingReport {
    pub paths_checked: usize,
    pub violations: Vec<CrossingViolation>,
    pub truncated: bool,
}

impl CrossingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && !self.truncated
    }
}

/// Checks `|ρ ∩ E_u| = 1` for every vertex `u ≠ t` and every `s → t` path.
///
/// The sink is skipped: `P_t` is everything, so `E_t` is empty.
pub fn check_crossing(g: &Dag, cap: usize) -> Result<CrossingReport> {
    g.require_pruned()?;
    let table = ancestor_table(g);
    let list = enumerate_paths(g, g.source(), g.sink(), cap);
    let mut violations = Vec::new();
    for path in &list.paths {
        for u in (0..g.n()).filter(|&u| u != g.sink()) {
            let crossings = path
                .windows(2)
                .filter(|w| table[u][w[0]] && !table[u][w[1]])
                .count();
            if crossings != 1 {
                violations.push(CrossingViolation {
                    path: path.clone(),
                    vertex: u,
                    crossings,
                });
            }
        }
    }
    Ok(CrossingReport {
        paths_checked: list.len(),
        violations,
        truncated: list.truncated,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionMismatch {
    pub k: u64,
    /// Which direction failed: `true` for Long-Path → Distance.
    pub long_to_distance: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionReport {
    pub ks_checked: usize,
    pub mismatches: Vec<DecisionMismatch>,
}

/// For every `k ∈ [0, n]`, compares both decision directions of the
/// reduction using the extremal-path dynamic programs on `G` and `G'`.
pub fn check_decision_equivalence(g: &Dag) -> Result<DecisionReport> {
    let reduced = reduce_instance(g, 0)?;
    let (s, t) = (g.source(), g.sink());
    let long_g = longest_path_dp(g, s, t).expect("pruned");
    let short_g = shortest_path_dp(g, s, t).expect("pruned");
    let long_r = longest_path_dp(&reduced.graph, s, t).expect("pruned");
    let short_r = shortest_path_dp(&reduced.graph, s, t).expect("pruned");
    let twice = reduced.twice_edges() as i128;
    let as_i = |x: &BigUint| i128::try_from(x).expect("path length fits");
    let mut mismatches = Vec::new();
    for k in 0..=g.n() as u64 {
        let bound = twice - k as i128;
        if (as_i(&long_g) >= k as i128) != (as_i(&short_r) <= bound) {
            mismatches.push(DecisionMismatch {
                k,
                long_to_distance: true,
            });
        }
        if (as_i(&short_g) <= k as i128) != (as_i(&long_r) >= bound) {
            mismatches.push(DecisionMismatch {
                k,
                long_to_distance: false,
            });
        }
    }
    Ok(DecisionReport {
        ks_checked: g.n() + 1,
        mismatches,
    })
}

/// Longest `s → t` length recovered as `2|E| − shortest(G')`.
pub fn longest_via_reduction(g: &Dag) -> Result<usize> {
    let reduced = reduce_instance(g, 0)?;
    let short = shortest_path_dp(&reduced.graph, g.source(), g.sink()).expect("pruned");
    let short = usize::try_from(&short).expect("path length fits");
    Ok(reduced.twice_edges() - short)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::fixtures::*;
    use crate::Error;

    fn set<T: Ord + Clone>(items: &[T]) -> BTreeSet<T> {
        items.iter().cloned().collect()
    }

    #[test]
    fn diamond_ancestors() {
        let g = diamond();
        assert_eq!(ancestors(&g, 1).unwrap(), set(&[0, 1]));
        assert_eq!(ancestors(&g, 0).unwrap(), set(&[0]));
        assert_eq!(ancestors(&g, 2).unwrap(), set(&[0, 1, 2]));
    }

    #[test]
    fn diamond_cuts() {
        let g = diamond();
        assert_eq!(cut_edges(&g, 0).unwrap(), set(&[(0, 1), (0, 2)]));
        assert_eq!(cut_edges(&g, 1).unwrap(), set(&[(1, 2), (0, 2)]));
        assert!(cut_edges(&g, 2).unwrap().is_empty());
    }

    #[test]
    fn cut_structure_invariants() {
        let g = square();
        for u in 0..g.n() {
            let c = cut_structure(&g, u).unwrap();
            assert!(c.ancestors.contains(&0));
            assert!(c.ancestors.contains(&u));
        }
        // every edge ⟨x, y⟩ lies in E_x
        for e in g.edges() {
            assert!(cut_edges(&g, e.from).unwrap().contains(&(e.from, e.to)));
        }
    }

    #[test]
    fn stretch_values() {
        assert_eq!(stretch(&single_edge(), 0, 1).unwrap(), 1);
        let g = diamond();
        assert_eq!(stretch(&g, 0, 2).unwrap(), 5);
        assert_eq!(stretch(&g, 1, 2).unwrap(), 1);
        assert_eq!(stretch(&g, 0, 1).unwrap(), 3);
        assert!(matches!(stretch(&g, 2, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn reduce_single_edge() {
        let r = reduce_instance(&single_edge(), 1).unwrap();
        assert_eq!(r.graph, single_edge());
        assert_eq!(r.k_prime, 1);
    }

    #[test]
    fn reduce_diamond() {
        let g = diamond();
        let r = reduce_instance(&g, 2).unwrap();
        assert_eq!(r.stretches, vec![3, 1, 5]);
        assert_eq!(r.k_prime, 4);
        assert_eq!(r.graph.edge_count(), 9);
        assert_eq!(r.graph.n(), 3 + 2 + 4);
        assert_eq!(r.replacements[0], vec![0, 3, 4, 1]);
        assert_eq!(r.replacements[1], vec![1, 2]);
        assert_eq!(r.replacements[2], vec![0, 5, 6, 7, 8, 2]);
        assert!(r.graph.is_st_pruned());
    }

    #[test]
    fn reduce_with_k_zero_is_reachability() {
        let g = square();
        let r = reduce_instance(&g, 0).unwrap();
        assert_eq!(r.k_prime, 2 * g.edge_count() as i128);
    }

    #[test]
    fn reduce_requires_pruned_unit_input() {
        let g = Dag::unit(4, 0, 2, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        assert!(matches!(
            reduce_instance(&g, 0),
            Err(Error::Precondition(_))
        ));
        let w = diamond()
            .with_weights(vec![2u32.into(), 1u32.into(), 1u32.into()])
            .unwrap();
        assert!(matches!(
            reduce_instance(&w, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn identity_on_diamond() {
        let g = diamond();
        let r = reduce_instance(&g, 0).unwrap();
        assert_eq!(r.image(&g, &[0, 2]).unwrap().len() - 1, 5);
        assert_eq!(r.image(&g, &[0, 1, 2]).unwrap().len() - 1, 4);
        let report = verify_identity(&g, 100).unwrap();
        assert_eq!(report.paths_checked, 2);
        assert!(report.passed());
    }

    #[test]
    fn identity_on_chains() {
        for m in 1..=6 {
            let g = chain(m + 1);
            let r = reduce_instance(&g, 0).unwrap();
            let img = r.image(&g, &(0..=m).collect::<Vec<_>>()).unwrap();
            assert_eq!(img.len() - 1, m);
            assert!(verify_identity(&g, 10).unwrap().passed());
        }
    }

    #[test]
    fn identity_reports_truncation() {
        let report = verify_identity(&square(), 1).unwrap();
        assert!(report.truncated);
        assert!(!report.passed());
    }

    #[test]
    fn crossing_and_decisions_on_square() {
        let g = square();
        assert!(check_crossing(&g, 100).unwrap().passed());
        assert!(check_decision_equivalence(&g)
            .unwrap()
            .mismatches
            .is_empty());
    }

    #[test]
    fn longest_through_reduction() {
        assert_eq!(longest_via_reduction(&diamond()).unwrap(), 2);
        assert_eq!(longest_via_reduction(&chain(5)).unwrap(), 4);
        assert_eq!(longest_via_reduction(&single_edge()).unwrap(), 1);
    }
}
