//! Directed acyclic graphs with a designated source and sink.
//!
//! A [`Dag`] is immutable once built. Construction checks every structural
//! invariant (ids in range, no self-loops, no duplicate edges, no cycles,
//! positive weights); [`validate`] reports the same facts for raw edge lists
//! without failing, so callers can diagnose malformed input.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub weight: BigUint,
    pub marked: bool,
}

impl Edge {
    pub fn unit(from: VertexId, to: VertexId) -> Self {
        Edge {
            from,
            to,
            weight: BigUint::one(),
            marked: false,
        }
    }

    pub fn weighted(from: VertexId, to: VertexId, weight: impl Into<BigUint>) -> Self {
        Edge {
            from,
            to,
            weight: weight.into(),
            marked: false,
        }
    }

    pub fn with_mark(mut self, marked: bool) -> Self {
        self.marked = marked;
        self
    }
}

/// Everything [`validate`] found wrong (or right) with an edge list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub acyclic: bool,
    /// Vertices with in-degree zero, ascending.
    pub sources: Vec<VertexId>,
    /// Vertices with out-degree zero, ascending.
    pub sinks: Vec<VertexId>,
    pub self_loops: Vec<VertexId>,
    pub duplicates: Vec<(VertexId, VertexId)>,
    pub out_of_range: Vec<(VertexId, VertexId)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.acyclic
            && self.self_loops.is_empty()
            && self.duplicates.is_empty()
            && self.out_of_range.is_empty()
    }
}

/// Reports acyclicity, sources, sinks and malformed edges of a raw edge list.
///
/// Out-of-range edges and self-loops are left out of the degree and cycle
/// analysis; duplicates count once.
pub fn validate(n: usize, edges: &[(VertexId, VertexId)]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut seen = BTreeSet::new();
    let mut succ = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            report.out_of_range.push((u, v));
            continue;
        }
        if u == v {
            report.self_loops.push(u);
            continue;
        }
        if !seen.insert((u, v)) {
            report.duplicates.push((u, v));
            continue;
        }
        succ[u].push(v);
        indeg[v] += 1;
    }
    report.sources = (0..n).filter(|&v| indeg[v] == 0).collect();
    report.sinks = (0..n).filter(|&v| succ[v].is_empty()).collect();

    let mut queue: VecDeque<_> = report.sources.iter().copied().collect();
    let mut visited = 0;
    while let Some(u) = queue.pop_front() {
        visited += 1;
        for &v in &succ[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    report.acyclic = visited == n;
    report
}

#[derive(Debug, Clone)]
pub struct Dag {
    n: usize,
    source: VertexId,
    sink: VertexId,
    edges: Vec<Edge>,
    // edge indices, sorted by the opposite endpoint
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    topo: Vec<VertexId>,
}

impl PartialEq for Dag {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.source == other.source
            && self.sink == other.sink
            && self.edges == other.edges
    }
}

impl Eq for Dag {}

impl Dag {
    pub fn new(n: usize, source: VertexId, sink: VertexId, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        for v in [source, sink] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        let pairs: Vec<_> = edges.iter().map(|e| (e.from, e.to)).collect();
        let report = validate(n, &pairs);
        if let Some(&(u, v)) = report.out_of_range.first() {
            let vertex = if u >= n { u } else { v };
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        if let Some(&v) = report.self_loops.first() {
            return Err(Error::SelfLoop(v));
        }
        if let Some(&(u, v)) = report.duplicates.first() {
            return Err(Error::DuplicateEdge(u, v));
        }
        if !report.acyclic {
            return Err(Error::Cycle);
        }
        if let Some(e) = edges.iter().find(|e| e.weight.is_zero()) {
            return Err(Error::ZeroWeight(e.from, e.to));
        }

        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out[e.from].push(i);
            inc[e.to].push(i);
        }
        for list in &mut out {
            list.sort_by_key(|&i| edges[i].to);
        }
        for list in &mut inc {
            list.sort_by_key(|&i| edges[i].from);
        }
        let topo = topological_order(n, &edges, &out);
        Ok(Dag {
            n,
            source,
            sink,
            edges,
            out,
            inc,
            topo,
        })
    }

    /// Unit-weight, unmarked graph from an edge list.
    pub fn unit(
        n: usize,
        source: VertexId,
        sink: VertexId,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self> {
        Dag::new(
            n,
            source,
            sink,
            edges.iter().map(|&(u, v)| Edge::unit(u, v)).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    /// Indices of the edges leaving `v`, ordered by head id.
    pub fn out_edges(&self, v: VertexId) -> &[usize] {
        &self.out[v]
    }

    /// Indices of the edges entering `v`, ordered by tail id.
    pub fn in_edges(&self, v: VertexId) -> &[usize] {
        &self.inc[v]
    }

    pub fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out[v].iter().map(move |&i| self.edges[i].to)
    }

    pub fn predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.inc[v].iter().map(move |&i| self.edges[i].from)
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.inc[v].len()
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.out[u].iter().copied().find(|&i| self.edges[i].to == v)
    }

    /// A topological order, smallest available id first.
    pub fn topo_order(&self) -> &[VertexId] {
        &self.topo
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    pub fn report(&self) -> ValidationReport {
        let pairs: Vec<_> = self.edges.iter().map(|e| (e.from, e.to)).collect();
        validate(self.n, &pairs)
    }

    /// `reach[x]` is true iff `from →* x`.
    pub fn reachable_from(&self, from: VertexId) -> Vec<bool> {
        self.sweep(from, |g, v| g.successors(v).collect())
    }

    /// `reach[x]` is true iff `x →* to`.
    pub fn reaching(&self, to: VertexId) -> Vec<bool> {
        self.sweep(to, |g, v| g.predecessors(v).collect())
    }

    fn sweep(&self, start: VertexId, next: impl Fn(&Dag, VertexId) -> Vec<VertexId>) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for w in next(self, v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// True when the source is the only in-degree-zero vertex, the sink the
    /// only out-degree-zero vertex, and every vertex lies on a source→sink path.
    pub fn is_st_pruned(&self) -> bool {
        let fwd = self.reachable_from(self.source);
        let bwd = self.reaching(self.sink);
        (0..self.n).all(|v| fwd[v] && bwd[v])
            && (0..self.n).all(|v| (self.in_degree(v) == 0) == (v == self.source))
            && (0..self.n).all(|v| (self.out_degree(v) == 0) == (v == self.sink))
    }

    pub(crate) fn require_pruned(&self) -> Result<()> {
        if self.is_st_pruned() {
            Ok(())
        } else {
            Err(Error::Precondition(
                "graph is not pruned to a single-source single-sink instance".into(),
            ))
        }
    }

    pub(crate) fn require_unit(&self) -> Result<()> {
        if self.is_unit_weight() {
            Ok(())
        } else {
            Err(Error::Precondition("graph must have unit weights".into()))
        }
    }

    /// Same vertices and edges with every weight reset to one.
    pub fn unweighted(&self) -> Dag {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::unit(e.from, e.to).with_mark(e.marked))
            .collect();
        Dag::new(self.n, self.source, self.sink, edges).expect("structure unchanged")
    }

    /// Same structure with replacement weights, one per edge in edge order.
    pub fn with_weights(&self, weights: Vec<BigUint>) -> Result<Dag> {
        assert_eq!(weights.len(), self.edges.len());
        let edges = self
            .edges
            .iter()
            .zip(weights)
            .map(|(e, w)| Edge {
                weight: w,
                ..e.clone()
            })
            .collect();
        Dag::new(self.n, self.source, self.sink, edges)
    }

    /// Total weight of a vertex path, or `None` if some step is not an edge.
    pub fn path_weight(&self, path: &[VertexId]) -> Option<BigUint> {
        let mut total = BigUint::zero();
        for w in path.windows(2) {
            total += &self.edges[self.find_edge(w[0], w[1])?].weight;
        }
        Some(total)
    }

    /// Number of marked edges along a vertex path.
    pub fn path_marks(&self, path: &[VertexId]) -> Option<usize> {
        let mut marks = 0;
        for w in path.windows(2) {
            if self.edges[self.find_edge(w[0], w[1])?].marked {
                marks += 1;
            }
        }
        Some(marks)
    }
}

fn topological_order(n: usize, edges: &[Edge], out: &[Vec<usize>]) -> Vec<VertexId> {
    let mut indeg = vec![0usize; n];
    for e in edges {
        indeg[e.to] += 1;
    }
    let mut ready: BTreeSet<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = ready.pop_first() {
        order.push(u);
        for &i in &out[u] {
            let v = edges[i].to;
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.insert(v);
            }
        }
    }
    order
}
