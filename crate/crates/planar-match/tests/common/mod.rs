#![allow(dead_code)]

use std::collections::BTreeSet;

use planar_match::graph::{EdgeId, EdgeWeights, PlanarGraph, VertexId};
use planar_match::Rational;
use proptest::prelude::*;

pub fn draw(points: &[(f64, f64)], edges: &[(usize, usize)]) -> PlanarGraph {
    PlanarGraph::from_drawing(points, edges).unwrap()
}

pub fn cycle(n: usize) -> PlanarGraph {
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    draw(&pts, &edges)
}

pub fn grid(rows: usize, cols: usize) -> PlanarGraph {
    let pts: Vec<(f64, f64)> = (0..rows * cols).map(|i| ((i % cols) as f64, (i / cols) as f64)).collect();
    let mut edges = Vec::new();
    for v in 0..rows * cols {
        if v % cols + 1 < cols {
            edges.push((v, v + 1));
        }
        if v / cols + 1 < rows {
            edges.push((v, v + cols));
        }
    }
    draw(&pts, &edges)
}

/// Triangles 0-1-2 and 3-4-5 with rungs 0-3 (edge 6), 1-4 (7), 2-5 (8).
pub fn prism() -> PlanarGraph {
    draw(
        &[(0.0, 0.0), (4.0, 0.0), (2.0, 3.5), (1.5, 1.0), (2.5, 1.0), (2.0, 2.0)],
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
}

pub fn k4() -> PlanarGraph {
    draw(&[(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)], &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
}

pub fn weights(pairs: &[(usize, u64)]) -> EdgeWeights {
    pairs.iter().map(|&(e, w)| (EdgeId(e as u32), w)).collect()
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// A grid whose cells get one of the two diagonals, with edges dropped
/// according to `choices`: byte `k` decides the `k`-th offered edge (kept
/// when below `keep`) and, for diagonals, which one.
pub fn triangulated(rows: usize, cols: usize, choices: &[u8], keep: u8) -> PlanarGraph {
    let pts: Vec<(f64, f64)> = (0..rows * cols).map(|i| ((i % cols) as f64, (i / cols) as f64)).collect();
    let mut k = 0;
    let mut next = || {
        let c = choices[k % choices.len()];
        k += 1;
        c
    };
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols && next() < keep {
                edges.push((v, v + 1));
            }
            if r + 1 < rows && next() < keep {
                edges.push((v, v + cols));
            }
            if c + 1 < cols && r + 1 < rows {
                let pick = next();
                if pick < keep {
                    if pick % 2 == 0 {
                        edges.push((v, v + cols + 1));
                    } else {
                        edges.push((v + 1, v + cols));
                    }
                }
            }
        }
    }
    draw(&pts, &edges)
}

/// Random embedded graphs on at most `max_vertices` vertices.
pub fn small_graph(max_vertices: usize) -> impl Strategy<Value = PlanarGraph> {
    (2usize..=4, 2usize..=4, prop::collection::vec(any::<u8>(), 48), 150u8..=255)
        .prop_filter("size", move |(r, c, _, _)| r * c <= max_vertices)
        .prop_map(|(r, c, ch, keep)| triangulated(r, c, &ch, keep))
}

/// Random weights in `0..=max` for every edge of `g`, drawn from `raw`.
pub fn weights_from(g: &PlanarGraph, raw: &[u8], max: u64) -> EdgeWeights {
    g.edge_ids().enumerate().map(|(i, e)| (e, raw[i % raw.len()] as u64 % (max + 1))).collect()
}

pub fn odd_subsets(g: &PlanarGraph) -> Vec<BTreeSet<VertexId>> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    (1u32..(1 << n))
        .filter(|m| m.count_ones() % 2 == 1)
        .map(|m| ids.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, v)| *v).collect())
        .collect()
}
