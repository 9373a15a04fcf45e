//! Embedded graph generators. Every generator draws its graph with straight
//! lines and reads the rotation system off the drawing, so the embedding is
//! planar by construction.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use planar_match::graph::{AbstractGraph, EdgeWeights, GraphError, PlanarGraph, VertexId};
use planar_match::uncross::IntersectionParityGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad parameters for `{name}`: {message}")]
    BadParams { name: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A generated graph and, for weighted instances, its edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: PlanarGraph,
    pub weights: Option<EdgeWeights>,
}

impl Instance {
    fn plain(graph: PlanarGraph) -> Self {
        Instance { graph, weights: None }
    }
}

pub const GENERATORS: &[&str] = &[
    "grid",
    "cylinder",
    "triangular",
    "random-triangulated",
    "stacked",
    "cycle",
    "path",
    "k4",
    "prism",
    "bowtie",
    "bridged-triangles",
    "blk-1",
    "same-block",
    "triangle-cuts",
];

/// Builds the named instance. Randomized generators draw from a ChaCha
/// stream seeded with `seed`; the others ignore it.
pub fn generate(name: &str, params: &[usize], seed: u64) -> Result<Instance, GenError> {
    let want = |k: usize| -> Result<(), GenError> {
        if params.len() == k {
            Ok(())
        } else {
            Err(GenError::BadParams {
                name: name.into(),
                message: format!("expected {k} parameters, got {}", params.len()),
            })
        }
    };
    let bad = |message: &str| GenError::BadParams { name: name.into(), message: message.into() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match name {
        "grid" => {
            want(2)?;
            grid(params[0], params[1])?
        }
        "cylinder" => {
            want(2)?;
            if params[1] < 3 || params[0] == 0 {
                return Err(bad("need at least one ring of at least 3 vertices"));
            }
            cylinder(params[0], params[1])?
        }
        "triangular" => {
            want(2)?;
            triangular(params[0], params[1])?
        }
        "random-triangulated" => {
            want(3)?;
            if params[2] > 100 {
                return Err(bad("keep percentage above 100"));
            }
            random_triangulated(params[0], params[1], params[2], &mut rng)?
        }
        "stacked" => {
            want(1)?;
            if params[0] < 3 {
                return Err(bad("need at least 3 vertices"));
            }
            stacked(params[0], &mut rng)?
        }
        "cycle" => {
            want(1)?;
            if params[0] < 3 {
                return Err(bad("need at least 3 vertices"));
            }
            cycle(params[0])?
        }
        "path" => {
            want(1)?;
            if params[0] < 2 {
                return Err(bad("need at least 2 vertices"));
            }
            path(params[0])?
        }
        "k4" => {
            want(0)?;
            k4()?
        }
        "prism" => {
            want(0)?;
            prism()?
        }
        "bowtie" => {
            want(0)?;
            bowtie()?
        }
        "bridged-triangles" => {
            want(0)?;
            bridged_triangles()?
        }
        "blk-1" => {
            want(0)?;
            return blk_one();
        }
        "same-block" => {
            if params.len() > 1 {
                return Err(bad("expected at most 1 parameter"));
            }
            return same_block(params.first().copied().unwrap_or(0));
        }
        "triangle-cuts" => {
            want(4)?;
            if params[2] > 100 {
                return Err(bad("keep percentage above 100"));
            }
            return triangle_cuts(params[0], params[1], params[2], params[3], &mut rng);
        }
        other => return Err(GenError::UnknownGenerator(other.into())),
    };
    Ok(Instance::plain(g))
}

fn draw(points: &[(f64, f64)], edges: &[(usize, usize)]) -> Result<PlanarGraph, GenError> {
    Ok(PlanarGraph::from_drawing(points, edges)?)
}

fn lattice(rows: usize, cols: usize) -> Vec<(f64, f64)> {
    (0..rows * cols).map(|i| ((i % cols) as f64, (i / cols) as f64)).collect()
}

/// `rows x cols` grid; vertex `r * cols + c` sits at `(c, r)`.
pub fn grid(rows: usize, cols: usize) -> Result<PlanarGraph, GenError> {
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
    draw(&lattice(rows, cols), &edges)
}

/// Grid with the diagonal from `(c, r)` to `(c + 1, r + 1)` in every cell.
pub fn triangular(rows: usize, cols: usize) -> Result<PlanarGraph, GenError> {
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
    draw(&lattice(rows, cols), &edges)
}

/// `rings` concentric cycles of `len` vertices joined by radial edges.
pub fn cylinder(rings: usize, len: usize) -> Result<PlanarGraph, GenError> {
    let points: Vec<(f64, f64)> = (0..rings * len)
        .map(|i| {
            let (r, k) = (i / len, i % len);
            let a = TAU * k as f64 / len as f64;
            ((r + 1) as f64 * a.cos(), (r + 1) as f64 * a.sin())
        })
        .collect();
    let mut edges = Vec::new();
    for r in 0..rings {
        for k in 0..len {
            let v = r * len + k;
            edges.push((v, r * len + (k + 1) % len));
            if r + 1 < rings {
                edges.push((v, v + len));
            }
        }
    }
    draw(&points, &edges)
}

/// Grid cells each split by a random diagonal, then every edge kept with
/// probability `keep / 100`. A perfect matching of horizontal (or, for an
/// odd column count, vertical) neighbours is always kept when one exists.
pub fn random_triangulated(rows: usize, cols: usize, keep: usize, rng: &mut impl Rng) -> Result<PlanarGraph, GenError> {
    let planted = |u: usize, v: usize| -> bool {
        let (r, c) = (u / cols, u % cols);
        if cols.is_multiple_of(2) {
            v == u + 1 && c % 2 == 0
        } else {
            rows.is_multiple_of(2) && v == u + cols && r % 2 == 0
        }
    };
    let mut edges = Vec::new();
    let mut offer = |u: usize, v: usize, rng: &mut dyn rand::RngCore| {
        if planted(u, v) || rng.gen_range(0..100) < keep {
            edges.push((u, v));
        }
    };
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                offer(v, v + 1, rng);
            }
            if r + 1 < rows {
                offer(v, v + cols, rng);
            }
            if c + 1 < cols && r + 1 < rows {
                if rng.gen_bool(0.5) {
                    offer(v, v + cols + 1, rng);
                } else {
                    offer(v + 1, v + cols, rng);
                }
            }
        }
    }
    draw(&lattice(rows, cols), &edges)
}

/// Stacked triangulation: starting from a triangle, repeatedly place a new
/// vertex at the centroid of a random inner face and join it to the face's
/// corners.
pub fn stacked(n: usize, rng: &mut impl Rng) -> Result<PlanarGraph, GenError> {
    let mut points = vec![(0.0, 0.0), (1.0, 0.0), (0.5, 0.9)];
    let mut edges = vec![(0, 1), (1, 2), (2, 0)];
    let mut faces = vec![[0usize, 1, 2]];
    while points.len() < n {
        let [a, b, c] = faces.swap_remove(rng.gen_range(0..faces.len()));
        let v = points.len();
        let (pa, pb, pc) = (points[a], points[b], points[c]);
        points.push(((pa.0 + pb.0 + pc.0) / 3.0, (pa.1 + pb.1 + pc.1) / 3.0));
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    draw(&points, &edges)
}

/// Cycle with edge `i` joining `i` and `i + 1 mod n`.
pub fn cycle(n: usize) -> Result<PlanarGraph, GenError> {
    let points: Vec<(f64, f64)> =
        (0..n).map(|i| ((TAU * i as f64 / n as f64).cos(), (TAU * i as f64 / n as f64).sin())).collect();
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    draw(&points, &edges)
}

pub fn path(n: usize) -> Result<PlanarGraph, GenError> {
    let points: Vec<(f64, f64)> = (0..n).map(|i| (i as f64, 0.0)).collect();
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    draw(&points, &edges)
}

pub fn k4() -> Result<PlanarGraph, GenError> {
    draw(&[(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)], &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
}

type Drawing = (Vec<(f64, f64)>, Vec<(usize, usize)>);

fn prism_drawing() -> Drawing {
    let points = vec![(0.0, 0.0), (4.0, 0.0), (2.0, 3.5), (1.5, 1.0), (2.5, 1.0), (2.0, 2.0)];
    // outer triangle, inner triangle, then the rungs as edges 6, 7, 8
    let edges = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)];
    (points, edges)
}

/// Triangular prism: two triangles joined by the rungs 6, 7 and 8.
pub fn prism() -> Result<PlanarGraph, GenError> {
    let (p, e) = prism_drawing();
    draw(&p, &e)
}

/// Two triangles sharing vertex 2.
pub fn bowtie() -> Result<PlanarGraph, GenError> {
    draw(
        &[(0.0, 0.0), (0.0, 2.0), (1.0, 1.0), (2.0, 0.0), (2.0, 2.0)],
        &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)],
    )
}

/// Two triangles joined by the bridge 2-3 (edge 6).
pub fn bridged_triangles() -> Result<PlanarGraph, GenError> {
    draw(
        &[(0.0, 0.0), (0.0, 2.0), (1.0, 1.0), (2.0, 1.0), (3.0, 2.0), (3.0, 0.0)],
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)],
    )
}

fn weigh(edges: impl IntoIterator<Item = usize>, g: &PlanarGraph) -> EdgeWeights {
    let heavy: BTreeSet<usize> = edges.into_iter().collect();
    g.edge_ids().map(|e| (e, heavy.contains(&(e.0 as usize)) as u64)).collect()
}

/// The prism with weight 1 on its rungs. Its minimum-weight matchings use
/// exactly one rung each, so their average is 1/3 on every edge and the
/// inner triangle is a tight odd set crossed twice by each square face.
pub fn blk_one() -> Result<Instance, GenError> {
    let g = prism()?;
    let w = weigh([6, 7, 8], &g);
    Ok(Instance { graph: g, weights: Some(w) })
}

/// A triangle `0 1 2` inside a pentagon `3..8` with five spokes carrying
/// weight 1. The two square faces `0 4 5 1` and `1 6 7 2` share no edge and
/// are both blocked by the triangle. With `pad > 0` a separate `4 x pad`
/// grid of weight 0 is drawn to the right, which leaves the first component
/// and its average point unchanged but makes the triangle small.
pub fn same_block(pad: usize) -> Result<Instance, GenError> {
    let outer: Vec<(f64, f64)> = (0..5)
        .map(|k| {
            let a = TAU * k as f64 / 5.0;
            (3.0 * a.cos(), 3.0 * a.sin())
        })
        .collect();
    let inner: Vec<(f64, f64)> = (0..3)
        .map(|k| {
            let a = TAU * (k as f64 * 5.0 / 3.0 + 0.5) / 5.0;
            (a.cos(), a.sin())
        })
        .collect();
    let mut points = inner;
    points.extend(outer);
    let mut edges =
        vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 7), (7, 3), (0, 3), (0, 4), (1, 5), (1, 6), (2, 7)];
    for (i, (x, y)) in lattice(4, pad).into_iter().enumerate() {
        points.push((x + 5.0, y - 1.5));
        let v = 8 + i;
        if i % pad + 1 < pad {
            edges.push((v, v + 1));
        }
        if i / pad + 1 < 4 {
            edges.push((v, v + pad));
        }
    }
    let g = draw(&points, &edges)?;
    let w = weigh(8..13, &g);
    Ok(Instance { graph: g, weights: Some(w) })
}

/// A random triangulated grid whose weights count, for each edge, how many
/// of `sets` randomly chosen triangles it leaves. Minimum-weight matchings
/// then tend to cross those triangles once, so the triangles show up as
/// tight odd sets of the average point.
pub fn triangle_cuts(
    rows: usize,
    cols: usize,
    keep: usize,
    sets: usize,
    rng: &mut impl Rng,
) -> Result<Instance, GenError> {
    let g = random_triangulated(rows, cols, keep, rng)?;
    let verts: Vec<VertexId> = g.vertices().collect();
    let mut w: EdgeWeights = g.edge_ids().map(|e| (e, 0)).collect();
    for _ in 0..sets {
        let v = verts[rng.gen_range(0..verts.len())];
        let nb: BTreeSet<VertexId> = g.incident(v).map(|e| g.other_end(e, v)).collect();
        let triangle = nb
            .iter()
            .flat_map(|&a| nb.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| a < b && g.incident(a).any(|e| g.other_end(e, a) == b));
        if let Some((a, b)) = triangle {
            for e in g.cut_edges(&BTreeSet::from([v, a, b])) {
                *w.get_mut(&e).unwrap() += 1;
            }
        }
    }
    Ok(Instance { graph: g, weights: Some(w) })
}

/// Intersection parity graph with even total parity and a single odd
/// block: a 4-cycle with a pendant node. Node `i` is realized as a vertex
/// set holding one shared vertex per incident edge, plus a private vertex
/// when that makes its size odd.
pub fn even_one() -> IntersectionParityGraph {
    let shape = AbstractGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]);
    let mut sets: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); 5];
    let mut next = 0u32;
    for (a, b) in shape.edges() {
        sets[a].insert(VertexId(next));
        sets[b].insert(VertexId(next));
        next += 1;
    }
    for s in sets.iter_mut() {
        if s.len() % 2 == 0 {
            s.insert(VertexId(next));
            next += 1;
        }
    }
    IntersectionParityGraph::new(sets)
}

/// Uniform random weights in `0..=max` on every edge.
pub fn random_weights(g: &PlanarGraph, max: u64, seed: u64) -> EdgeWeights {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    g.edge_ids().map(|e| (e, rng.gen_range(0..=max))).collect::<BTreeMap<_, _>>()
}
