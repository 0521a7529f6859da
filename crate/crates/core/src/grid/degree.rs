use crate::dag::{Dag, Edge, VertexId};
use crate::error::Result;
use crate::paths::enumerate_paths;

/// Replacement structure for one original vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGadget {
    /// Keeps the original id.
    pub core: VertexId,
    /// Merge vertices, farthest from the core first; empty when in-degree ≤ 1.
    pub in_chain: Vec<VertexId>,
    /// Split vertices, nearest to the core first; empty when out-degree ≤ 1.
    pub out_chain: Vec<VertexId>,
}

/// Degree-reduced graph in which each original edge has one marked
/// representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedDag {
    pub dag: Dag,
    /// Index in `dag` of the marked edge standing for each original edge.
    pub responsible: Vec<usize>,
    pub gadgets: Vec<VertexGadget>,
}

impl MarkedDag {
    pub fn max_total_degree(&self) -> usize {
        (0..self.dag.n())
            .map(|v| self.dag.in_degree(v) + self.dag.out_degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn marked_edges(&self) -> usize {
        self.dag.edges().iter().filter(|e| e.marked).count()
    }

    /// Largest number of marked edges on a source→sink path, by enumeration.
    /// `None` if the enumeration hit `cap`.
    pub fn max_marked_on_paths(&self, cap: usize) -> Option<usize> {
        let list = enumerate_paths(&self.dag, self.dag.source(), self.dag.sink(), cap);
        if list.truncated {
            return None;
        }
        list.paths
            .iter()
            .map(|p| self.dag.path_marks(p).expect("enumerated path"))
            .max()
    }
}

/// Splits every vertex into an in-chain, a core and an out-chain so that no
/// vertex has total degree above three.
///
/// Vertex `v` with in-degree `d` gets `d − 1` merge vertices (the first takes
/// two original in-edges, each later one takes one more) and symmetrically
/// `d' − 1` split vertices for out-degree `d'`. Original edges become single
/// marked edges between the corresponding chain ends; chain edges are
/// unmarked. Original ids are kept for the cores and new ids are appended.
pub fn degree_reduce(g: &Dag) -> Result<MarkedDag> {
    g.require_pruned()?;
    let mut next = g.n();
    let mut edges = Vec::new();
    let mut gadgets = Vec::with_capacity(g.n());
    // attachment point of each original edge at its tail and head
    let mut tail_at = vec![0; g.edge_count()];
    let mut head_at = vec![0; g.edge_count()];

    for v in 0..g.n() {
        let mut alloc = |count: usize| -> Vec<VertexId> {
            let ids = (next..next + count).collect();
            next += count;
            ids
        };
        let ins = g.in_edges(v);
        let outs = g.out_edges(v);
        let in_chain = alloc(ins.len().saturating_sub(1));
        let out_chain = alloc(outs.len().saturating_sub(1));

        if in_chain.is_empty() {
            for &i in ins {
                head_at[i] = v;
            }
        } else {
            for (j, &i) in ins.iter().enumerate() {
                head_at[i] = in_chain[j.saturating_sub(1)];
            }
            for w in in_chain.windows(2) {
                edges.push(Edge::unit(w[0], w[1]));
            }
            edges.push(Edge::unit(*in_chain.last().unwrap(), v));
        }

        if out_chain.is_empty() {
            for &i in outs {
                tail_at[i] = v;
            }
        } else {
            edges.push(Edge::unit(v, out_chain[0]));
            for w in out_chain.windows(2) {
                edges.push(Edge::unit(w[0], w[1]));
            }
            let last = out_chain.len() - 1;
            for (j, &i) in outs.iter().enumerate() {
                tail_at[i] = out_chain[j.min(last)];
            }
        }

        gadgets.push(VertexGadget {
            core: v,
            in_chain,
            out_chain,
        });
    }

    let mut responsible = Vec::with_capacity(g.edge_count());
    for i in 0..g.edge_count() {
        responsible.push(edges.len());
        edges.push(Edge::unit(tail_at[i], head_at[i]).with_mark(true));
    }
    let dag = Dag::new(next, g.source(), g.sink(), edges)?;
    Ok(MarkedDag {
        dag,
        responsible,
        gadgets,
    })
}
