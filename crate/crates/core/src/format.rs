//! Line-oriented text format for graphs.
//!
//! ```text
//! # comment
//! dag <n> <s> <t>                  or   grid <rows> <cols> <n> <s> <t>
//! v <id> <row> <col>               (one per vertex, grid files only)
//! e <u> <v> [w=<weight>] [m=<0|1>]
//! ```
//!
//! Weights default to 1 and marks to 0. `v` lines in a `dag` file are
//! accepted and ignored. [`emit`] writes `w=` and `m=` only when they differ
//! from the defaults, so emitting a parsed canonical file reproduces it.

use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::dag::{Dag, Edge, VertexId};
use crate::error::{Error, Result};
use crate::grid::{Coord, GridDag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphDoc {
    Dag(Dag),
    Grid(GridDag),
}

impl GraphDoc {
    pub fn dag(&self) -> &Dag {
        match self {
            GraphDoc::Dag(g) => g,
            GraphDoc::Grid(g) => g.dag(),
        }
    }

    pub fn into_dag(self) -> Dag {
        match self {
            GraphDoc::Dag(g) => g,
            GraphDoc::Grid(g) => g.dag().clone(),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, what: &str, tok: Option<&str>) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

enum Header {
    Dag {
        n: usize,
        s: VertexId,
        t: VertexId,
    },
    Grid {
        rows: usize,
        cols: usize,
        n: usize,
        s: VertexId,
        t: VertexId,
    },
}

impl Header {
    fn n(&self) -> usize {
        match *self {
            Header::Dag { n, .. } | Header::Grid { n, .. } => n,
        }
    }
}

pub fn parse_graph(text: &str) -> Result<GraphDoc> {
    let mut header = None;
    let mut coords: Vec<Option<Coord>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let kind = toks.next().unwrap();
        match (kind, &header) {
            ("dag", None) => {
                let n = number(ln, "vertex count", toks.next())?;
                let s = number(ln, "source", toks.next())?;
                let t = number(ln, "sink", toks.next())?;
                header = Some(Header::Dag { n, s, t });
            }
            ("grid", None) => {
                let rows = number(ln, "row count", toks.next())?;
                let cols = number(ln, "column count", toks.next())?;
                let n = number(ln, "vertex count", toks.next())?;
                let s = number(ln, "source", toks.next())?;
                let t = number(ln, "sink", toks.next())?;
                coords = vec![None; n];
                header = Some(Header::Grid {
                    rows,
                    cols,
                    n,
                    s,
                    t,
                });
            }
            ("dag" | "grid", Some(_)) => return Err(parse_err(ln, "second header line")),
            (_, None) => return Err(parse_err(ln, "expected a `dag` or `grid` header")),
            ("v", Some(h)) => {
                let id: usize = number(ln, "vertex id", toks.next())?;
                let row = number(ln, "row", toks.next())?;
                let col = number(ln, "column", toks.next())?;
                if id >= h.n() {
                    return Err(parse_err(ln, format!("vertex {id} out of range")));
                }
                if let Header::Grid { .. } = h {
                    if coords[id].replace(Coord::new(row, col)).is_some() {
                        return Err(parse_err(ln, format!("vertex {id} placed twice")));
                    }
                }
            }
            ("e", Some(h)) => {
                let u: usize = number(ln, "edge tail", toks.next())?;
                let v: usize = number(ln, "edge head", toks.next())?;
                for x in [u, v] {
                    if x >= h.n() {
                        return Err(parse_err(ln, format!("vertex {x} out of range")));
                    }
                }
                let mut edge = Edge::unit(u, v);
                for tok in toks.by_ref() {
                    match tok.split_once('=') {
                        Some(("w", w)) => {
                            edge.weight = w
                                .parse::<BigUint>()
                                .map_err(|_| parse_err(ln, format!("bad weight `{w}`")))?;
                        }
                        Some(("m", "0")) => edge.marked = false,
                        Some(("m", "1")) => edge.marked = true,
                        _ => return Err(parse_err(ln, format!("unknown edge attribute `{tok}`"))),
                    }
                }
                edges.push(edge);
            }
            (other, Some(_)) => return Err(parse_err(ln, format!("unknown line kind `{other}`"))),
        }
        if let Some(extra) = toks.next() {
            return Err(parse_err(ln, format!("trailing token `{extra}`")));
        }
    }
    match header.ok_or_else(|| parse_err(0, "empty graph file"))? {
        Header::Dag { n, s, t } => Ok(GraphDoc::Dag(Dag::new(n, s, t, edges)?)),
        Header::Grid {
            rows,
            cols,
            n,
            s,
            t,
        } => {
            let coords = coords
                .into_iter()
                .enumerate()
                .map(|(v, c)| {
                    c.ok_or_else(|| Error::BadCoordinate {
                        vertex: v,
                        message: "no `v` line".into(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let dag = Dag::new(n, s, t, edges)?;
            Ok(GraphDoc::Grid(GridDag::new(rows, cols, coords, dag)?))
        }
    }
}

fn emit_edges(out: &mut String, g: &Dag) {
    for e in g.edges() {
        write!(out, "e {} {}", e.from, e.to).unwrap();
        if e.weight != BigUint::from(1u32) {
            write!(out, " w={}", e.weight).unwrap();
        }
        if e.marked {
            out.push_str(" m=1");
        }
        out.push('\n');
    }
}

pub fn emit_dag(g: &Dag) -> String {
    let mut out = format!("dag {} {} {}\n", g.n(), g.source(), g.sink());
    emit_edges(&mut out, g);
    out
}

pub fn emit_grid(grid: &GridDag) -> String {
    let g = grid.dag();
    let mut out = format!(
        "grid {} {} {} {} {}\n",
        grid.rows(),
        grid.cols(),
        g.n(),
        g.source(),
        g.sink()
    );
    for (v, c) in grid.coords().iter().enumerate() {
        writeln!(out, "v {v} {} {}", c.row, c.col).unwrap();
    }
    emit_edges(&mut out, g);
    out
}

pub fn emit(doc: &GraphDoc) -> String {
    match doc {
        GraphDoc::Dag(g) => emit_dag(g),
        GraphDoc::Grid(g) => emit_grid(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::fixtures::*;

    #[test]
    fn single_edge_file() {
        let doc = parse_graph("dag 2 0 1\ne 0 1\n").unwrap();
        assert_eq!(doc, GraphDoc::Dag(single_edge()));
    }

    #[test]
    fn comments_attributes_and_ignored_vertex_lines() {
        let text = "# diamond\ndag 3 0 2\nv 1 5 5\ne 0 1 w=2 m=1\n\ne 1 2 m=0\ne 0 2\n";
        let g = parse_graph(text).unwrap().into_dag();
        assert_eq!(g.edge(0).weight, BigUint::from(2u32));
        assert!(g.edge(0).marked);
        assert!(!g.edge(1).marked);
        assert_eq!(emit_dag(&g), "dag 3 0 2\ne 0 1 w=2 m=1\ne 1 2\ne 0 2\n");
    }

    #[test]
    fn self_loop_is_rejected() {
        assert_eq!(parse_graph("dag 2 0 1\ne 0 0\n"), Err(Error::SelfLoop(0)));
    }

    #[test]
    fn cycle_is_rejected() {
        assert_eq!(parse_graph("dag 2 0 1\ne 0 1\ne 1 0\n"), Err(Error::Cycle));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_graph("dag 2 0 1\n# fine\ne 0 7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse_graph("dag 2 0 1\ne 0 1 w=x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_graph("e 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(matches!(parse_graph(""), Err(Error::Parse { line: 0, .. })));
    }

    #[test]
    fn grid_round_trip() {
        let text =
            "grid 2 2 4 0 3\nv 0 0 0\nv 1 0 1\nv 2 1 0\nv 3 1 1\ne 0 1 m=1\ne 0 2\ne 1 3\ne 2 3\n";
        let doc = parse_graph(text).unwrap();
        assert!(matches!(doc, GraphDoc::Grid(_)));
        assert_eq!(emit(&doc), text);
    }

    #[test]
    fn grid_rejects_diagonal_edge() {
        let text = "grid 2 2 4 0 3\nv 0 0 0\nv 1 0 1\nv 2 1 0\nv 3 1 1\ne 0 3\n";
        assert_eq!(parse_graph(text), Err(Error::NotLatticeEdge(0, 3)));
    }

    #[test]
    fn grid_requires_every_coordinate() {
        let text = "grid 1 2 2 0 1\nv 0 0 0\ne 0 1\n";
        assert!(matches!(
            parse_graph(text),
            Err(Error::BadCoordinate { vertex: 1, .. })
        ));
    }
}
