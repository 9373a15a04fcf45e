//! Text format, version 1:
//!
//! ```text
//! planar-graph 1
//! V <n>
//! E <m>
//! edge <id> <u> <v> [weight]
//! rot <v> <edge id>:<0|1> ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Dart, EdgeId, EdgeWeights, GraphError, PlanarGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: PlanarGraph,
    /// Present when at least one edge line carries a weight; missing
    /// weights default to 0.
    pub weights: Option<EdgeWeights>,
}

fn err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { line, message: message.into() }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, GraphError> {
    tok.ok_or_else(|| err(line, format!("missing {what}")))?.parse().map_err(|_| err(line, format!("bad {what}")))
}

pub fn parse_graph(text: &str) -> Result<GraphFile, GraphError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, header) = lines.next().ok_or_else(|| err(0, "empty input"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["planar-graph", "1"] {
        return Err(err(ln, "expected header `planar-graph 1`"));
    }
    let mut n = None;
    let mut m = None;
    let mut edges = Vec::new();
    let mut weights = BTreeMap::new();
    let mut any_weight = false;
    let mut rot = Vec::new();
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("V") => n = Some(num::<usize>(toks.next(), ln, "vertex count")?),
            Some("E") => m = Some(num::<usize>(toks.next(), ln, "edge count")?),
            Some("edge") => {
                let e = EdgeId(num(toks.next(), ln, "edge id")?);
                let u = VertexId(num(toks.next(), ln, "endpoint")?);
                let v = VertexId(num(toks.next(), ln, "endpoint")?);
                if let Some(w) = toks.next() {
                    weights.insert(e, w.parse::<u64>().map_err(|_| err(ln, "bad weight"))?);
                    any_weight = true;
                } else {
                    weights.insert(e, 0);
                }
                edges.push((e, u, v));
            }
            Some("rot") => {
                let v = VertexId(num(toks.next(), ln, "vertex id")?);
                let mut darts = Vec::new();
                for t in toks {
                    let (e, k) = t.split_once(':').ok_or_else(|| err(ln, format!("bad end `{t}`")))?;
                    let e = EdgeId(e.parse().map_err(|_| err(ln, format!("bad end `{t}`")))?);
                    let k: u8 = k.parse().map_err(|_| err(ln, format!("bad end `{t}`")))?;
                    if k > 1 {
                        return Err(err(ln, format!("bad end `{t}`")));
                    }
                    darts.push(Dart::new(e, k));
                }
                rot.push((v, darts));
            }
            Some(other) => return Err(err(ln, format!("unknown directive `{other}`"))),
            None => {}
        }
    }
    if n != Some(rot.len()) {
        return Err(err(0, format!("V says {:?}, found {} rot lines", n, rot.len())));
    }
    if m != Some(edges.len()) {
        return Err(err(0, format!("E says {:?}, found {} edge lines", m, edges.len())));
    }
    let graph = PlanarGraph::build(edges, rot)?;
    Ok(GraphFile { graph, weights: any_weight.then_some(weights) })
}

pub fn write_graph(g: &PlanarGraph, weights: Option<&EdgeWeights>) -> String {
    let mut s = String::new();
    writeln!(s, "planar-graph 1").unwrap();
    writeln!(s, "V {}", g.vertex_count()).unwrap();
    writeln!(s, "E {}", g.edge_count()).unwrap();
    for (e, u, v) in g.edges() {
        match weights {
            Some(w) => writeln!(s, "edge {e} {u} {v} {}", w.get(&e).copied().unwrap_or(0)).unwrap(),
            None => writeln!(s, "edge {e} {u} {v}").unwrap(),
        }
    }
    for v in g.vertices() {
        write!(s, "rot {v}").unwrap();
        for d in g.rotation(v) {
            write!(s, " {d}").unwrap();
        }
        writeln!(s).unwrap();
    }
    s
}

/// Weight files hold one `<edge id> <weight>` pair per line.
pub fn parse_weights(text: &str) -> Result<EdgeWeights, GraphError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let e = EdgeId(num(toks.next(), i + 1, "edge id")?);
        let w: u64 = num(toks.next(), i + 1, "weight")?;
        out.insert(e, w);
    }
    Ok(out)
}

pub fn write_weights(w: &EdgeWeights) -> String {
    w.iter().map(|(e, x)| format!("{e} {x}\n")).collect()
}
