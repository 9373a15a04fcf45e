//! Small embedded graphs for unit tests.

use crate::graph::{EdgeId, EdgeWeights, PlanarGraph};

pub fn draw(points: &[(f64, f64)], edges: &[(usize, usize)]) -> PlanarGraph {
    PlanarGraph::from_drawing(points, edges).unwrap()
}

pub fn cycle(n: usize) -> PlanarGraph {
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    draw(&pts, &edges)
}

pub fn path(n: usize) -> PlanarGraph {
    let pts: Vec<(f64, f64)> = (0..n).map(|i| (i as f64, 0.0)).collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    draw(&pts, &edges)
}

pub fn k4() -> PlanarGraph {
    draw(&[(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)], &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
}

/// Triangles 0-1-2 and 3-4-5 with rungs 0-3 (edge 6), 1-4 (7), 2-5 (8).
pub fn prism() -> PlanarGraph {
    draw(
        &[(0.0, 0.0), (6.0, 0.0), (3.0, 5.0), (2.0, 1.0), (4.0, 1.0), (3.0, 3.0)],
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
}

pub fn grid(rows: usize, cols: usize) -> PlanarGraph {
    let pts: Vec<(f64, f64)> = (0..rows * cols).map(|i| ((i % cols) as f64, (i / cols) as f64)).collect();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    draw(&pts, &edges)
}

/// Triangles 0-1-2 and 0-3-4 sharing vertex 0.
pub fn bowtie() -> PlanarGraph {
    draw(
        &[(0.0, 0.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, 1.0), (1.0, -1.0)],
        &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)],
    )
}

/// Triangles 0-1-2 and 3-4-5 joined by the bridge 2-3 (edge 6).
pub fn bridged_triangles() -> PlanarGraph {
    draw(
        &[(0.0, 1.0), (0.0, -1.0), (1.0, 0.0), (2.0, 0.0), (3.0, 1.0), (3.0, -1.0)],
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)],
    )
}

pub fn weights(pairs: &[(u32, u64)]) -> EdgeWeights {
    pairs.iter().map(|&(e, w)| (EdgeId(e), w)).collect()
}

/// Grid with one diagonal in every square.
pub fn triangulated_grid(rows: usize, cols: usize) -> PlanarGraph {
    let pts: Vec<(f64, f64)> = (0..rows * cols).map(|i| ((i % cols) as f64, (i / cols) as f64)).collect();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
            if c + 1 < cols && r + 1 < rows {
                edges.push((v, v + cols + 1));
            }
        }
    }
    draw(&pts, &edges)
}
