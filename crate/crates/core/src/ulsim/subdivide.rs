use num_bigint::BigUint;
use num_traits::One;

use crate::dag::{Dag, Edge, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivided {
    pub dag: Dag,
    /// Vertex path replacing each original edge.
    pub chains: Vec<Vec<VertexId>>,
}

/// Replaces each weight-`w` edge by a path of `w` unit edges.
///
/// Fails when the result would exceed `budget` vertices. A marked edge keeps
/// its mark on the first edge of its chain.
pub fn subdivide(g: &Dag, budget: usize) -> Result<Subdivided> {
    let extra: BigUint = g.edges().iter().map(|e| &e.weight - BigUint::one()).sum();
    let needed = extra + g.n();
    let total = match usize::try_from(&needed) {
        Ok(t) if t <= budget => t,
        _ => return Err(Error::BudgetExceeded { needed, budget }),
    };
    let mut next = g.n();
    let mut edges = Vec::with_capacity(total);
    let mut chains = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let w = usize::try_from(&e.weight).expect("bounded by budget");
        let mut chain = Vec::with_capacity(w + 1);
        chain.push(e.from);
        chain.extend(next..next + w - 1);
        next += w - 1;
        chain.push(e.to);
        for (i, pair) in chain.windows(2).enumerate() {
            edges.push(Edge::unit(pair[0], pair[1]).with_mark(e.marked && i == 0));
        }
        chains.push(chain);
    }
    Ok(Subdivided {
        dag: Dag::new(next, g.source(), g.sink(), edges)?,
        chains,
    })
}
