use crate::dag::{Dag, Edge, VertexId};
use crate::error::{Error, Result};

/// A pruned graph together with the dense relabelling that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pruned {
    pub dag: Dag,
    /// New id of each original vertex, `None` for dropped vertices.
    pub old_to_new: Vec<Option<VertexId>>,
    /// Original id of each kept vertex; ascending.
    pub new_to_old: Vec<VertexId>,
}

impl Pruned {
    pub fn dropped(&self) -> usize {
        self.old_to_new.len() - self.new_to_old.len()
    }
}

/// Restricts `g` to the vertices lying on some `s → t` path.
///
/// Kept vertices are renumbered `0..n'` preserving their relative order, and
/// kept edges keep their relative order too.
pub fn prune_to_st(g: &Dag, s: VertexId, t: VertexId) -> Result<Pruned> {
    for v in [s, t] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
    }
    let fwd = g.reachable_from(s);
    let bwd = g.reaching(t);
    if !fwd[t] {
        return Err(Error::NoPath { s, t });
    }
    let keep: Vec<bool> = (0..g.n()).map(|v| fwd[v] && bwd[v]).collect();

    let mut old_to_new = vec![None; g.n()];
    let mut new_to_old = Vec::new();
    for v in (0..g.n()).filter(|&v| keep[v]) {
        old_to_new[v] = Some(new_to_old.len());
        new_to_old.push(v);
    }
    let relabel = |v: VertexId| old_to_new[v].expect("kept vertex");
    let edges = g
        .edges()
        .iter()
        .filter(|e| keep[e.from] && keep[e.to])
        .map(|e| Edge {
            from: relabel(e.from),
            to: relabel(e.to),
            ..e.clone()
        })
        .collect();
    let dag = Dag::new(new_to_old.len(), relabel(s), relabel(t), edges)?;
    Ok(Pruned {
        dag,
        old_to_new,
        new_to_old,
    })
}

/// Prunes between the graph's own designated source and sink.
pub fn prune(g: &Dag) -> Result<Pruned> {
    prune_to_st(g, g.source(), g.sink())
}
