//! Embedded planar multigraphs.
//!
//! A [`PlanarGraph`] stores, for each vertex, the cyclic order of the edge
//! ends ("darts") around it. Faces are the orbits of the permutation that
//! walks along a dart and then turns to the next dart in the rotation at the
//! far vertex. Vertex and edge ids are stable: contraction allocates a fresh
//! vertex id and surviving edges keep theirs.

mod abstract_graph;
mod format;
mod vertex_map;

pub use abstract_graph::{AbstractGraph, Block, BlockCutNode, BlockCutTree};
pub use format::{parse_graph, parse_weights, write_graph, write_weights, GraphFile};
pub use vertex_map::VertexMap;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One end of an edge. `end` is 0 or 1 and selects the endpoint the dart
/// leaves from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub end: u8,
}

impl Dart {
    pub fn new(edge: EdgeId, end: u8) -> Self {
        Dart { edge, end }
    }

    pub fn twin(self) -> Self {
        Dart { edge: self.edge, end: 1 - self.end }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.edge, self.end)
    }
}

/// Non-negative integer edge weights.
pub type EdgeWeights = BTreeMap<EdgeId, u64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed rotation: {0}")]
    MalformedRotation(String),
    #[error("edge {0} is a loop")]
    LoopEdge(EdgeId),
    #[error(
        "rotation system is not a planar embedding (component containing vertex {vertex}: V-E+F = {value}, expected 2)"
    )]
    EulerViolation { vertex: VertexId, value: i64 },
    #[error("invalid vertex set for contraction: {0}")]
    InvalidSet(String),
    #[error("vertex set cannot be contracted within the embedding: parts share no face")]
    NotContractible,
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A face as the cyclic sequence of darts along its boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.darts.iter().map(|d| d.edge)
    }

    /// Vertices visited, in boundary order (the tail of each dart).
    pub fn vertices(&self, g: &PlanarGraph) -> Vec<VertexId> {
        self.darts.iter().map(|&d| g.dart_tail(d)).collect()
    }

    /// True when the boundary visits no vertex twice.
    pub fn is_simple_cycle(&self, g: &PlanarGraph) -> bool {
        let vs = self.vertices(g);
        let set: BTreeSet<_> = vs.iter().collect();
        set.len() == vs.len() && vs.len() >= 2
    }
}

/// Dual multigraph. Loops (duals of bridges) are not stored as edges and
/// are listed in `loops` instead.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub faces: Vec<Face>,
    /// primal edge -> (face, face), face indices in ascending order.
    pub edges: BTreeMap<EdgeId, (usize, usize)>,
    pub loops: Vec<(EdgeId, usize)>,
}

impl DualGraph {
    pub fn node_count(&self) -> usize {
        self.faces.len()
    }

    /// Number of dual edge ends at a face, counting parallel edges and loops
    /// (a loop counts twice), i.e. the face length.
    pub fn degree(&self, face: usize) -> usize {
        self.faces[face].len()
    }

    /// The simple graph underlying the dual.
    pub fn simple(&self) -> AbstractGraph {
        let mut h = AbstractGraph::new(self.faces.len());
        for &(a, b) in self.edges.values() {
            h.add_edge(a, b);
        }
        h
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarGraph {
    ends: BTreeMap<EdgeId, [VertexId; 2]>,
    rotation: BTreeMap<VertexId, Vec<Dart>>,
    next_vertex: u32,
}

impl PlanarGraph {
    /// Builds and validates an embedded graph.
    pub fn build(
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
        rotation: impl IntoIterator<Item = (VertexId, Vec<Dart>)>,
    ) -> Result<Self, GraphError> {
        let mut ends = BTreeMap::new();
        for (e, u, v) in edges {
            if u == v {
                return Err(GraphError::LoopEdge(e));
            }
            if ends.insert(e, [u, v]).is_some() {
                return Err(GraphError::MalformedRotation(format!("edge {e} listed twice")));
            }
        }
        let mut rot = BTreeMap::new();
        for (v, darts) in rotation {
            if rot.insert(v, darts).is_some() {
                return Err(GraphError::MalformedRotation(format!("vertex {v} listed twice")));
            }
        }
        let next_vertex = rot.keys().next_back().map_or(0, |v: &VertexId| v.0 + 1);
        let g = PlanarGraph { ends, rotation: rot, next_vertex };
        g.validate()?;
        Ok(g)
    }

    /// Checks rotation consistency, absence of loops and Euler's relation on
    /// every component.
    pub fn validate(&self) -> Result<(), GraphError> {
        let mut seen = BTreeSet::new();
        for (&v, darts) in &self.rotation {
            for &d in darts {
                let Some(ends) = self.ends.get(&d.edge) else {
                    return Err(GraphError::MalformedRotation(format!("vertex {v} lists unknown edge {}", d.edge)));
                };
                if d.end > 1 {
                    return Err(GraphError::MalformedRotation(format!("bad end in {d}")));
                }
                if ends[d.end as usize] != v {
                    return Err(GraphError::MalformedRotation(format!(
                        "end {d} belongs to vertex {}, listed at {v}",
                        ends[d.end as usize]
                    )));
                }
                if !seen.insert(d) {
                    return Err(GraphError::MalformedRotation(format!("end {d} duplicated")));
                }
            }
        }
        for (&e, ends) in &self.ends {
            if ends[0] == ends[1] {
                return Err(GraphError::LoopEdge(e));
            }
            for k in 0..2u8 {
                if !seen.contains(&Dart::new(e, k)) {
                    return Err(GraphError::MalformedRotation(format!("end {e}:{k} missing")));
                }
            }
        }
        let faces = self.faces();
        let comps = self.components();
        let mut comp_of = BTreeMap::new();
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of.insert(v, i);
            }
        }
        let mut per_comp = vec![0i64; comps.len()];
        for f in &faces {
            per_comp[comp_of[&self.dart_tail(f.darts[0])]] += 1;
        }
        for (i, c) in comps.iter().enumerate() {
            let vcount = c.len() as i64;
            let ecount = c.iter().map(|v| self.rotation[v].len() as i64).sum::<i64>() / 2;
            let fcount = if ecount == 0 { 1 } else { per_comp[i] };
            let value = vcount - ecount + fcount;
            if value != 2 {
                return Err(GraphError::EulerViolation { vertex: c[0], value });
            }
        }
        Ok(())
    }

    /// Embedding of a straight-line drawing: vertex `i` sits at
    /// `points[i]`, edge `k` is `edges[k]`, and each rotation lists edges
    /// counterclockwise by angle. Crossing drawings fail validation.
    pub fn from_drawing(points: &[(f64, f64)], edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut rot: Vec<Vec<(f64, Dart)>> = vec![Vec::new(); points.len()];
        let mut list = Vec::with_capacity(edges.len());
        for (k, &(u, v)) in edges.iter().enumerate() {
            let e = EdgeId(k as u32);
            list.push((e, VertexId(u as u32), VertexId(v as u32)));
            for (end, (a, b)) in [(0u8, (u, v)), (1u8, (v, u))] {
                let (pa, pb) = (points[a], points[b]);
                rot[a].push(((pb.1 - pa.1).atan2(pb.0 - pa.0), Dart::new(e, end)));
            }
        }
        let rotation = rot.into_iter().enumerate().map(|(i, mut darts)| {
            darts.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
            (VertexId(i as u32), darts.into_iter().map(|(_, d)| d).collect())
        });
        PlanarGraph::build(list, rotation)
    }

    pub fn empty() -> Self {
        PlanarGraph { ends: BTreeMap::new(), rotation: BTreeMap::new(), next_vertex: 0 }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.rotation.keys().copied().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.ends.iter().map(|(&e, &[u, v])| (e, u, v))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ends.keys().copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.rotation.contains_key(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.ends.contains_key(&e)
    }

    /// Endpoints `[end 0, end 1]`.
    ///
    /// # Panics
    /// If `e` is not an edge of the graph.
    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.ends[&e]
    }

    pub fn try_endpoints(&self, e: EdgeId) -> Option<[VertexId; 2]> {
        self.ends.get(&e).copied()
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.ends[&e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotation[&v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[&v].len()
    }

    /// Incident edges in rotation order.
    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.rotation[&v].iter().map(|d| d.edge)
    }

    pub fn dart_tail(&self, d: Dart) -> VertexId {
        self.ends[&d.edge][d.end as usize]
    }

    pub fn dart_head(&self, d: Dart) -> VertexId {
        self.ends[&d.edge][1 - d.end as usize]
    }

    /// Smallest id never used by this graph or its ancestors.
    pub fn next_vertex_id(&self) -> VertexId {
        VertexId(self.next_vertex)
    }

    /// Edges with exactly one endpoint in `s`.
    pub fn cut_edges(&self, s: &BTreeSet<VertexId>) -> Vec<EdgeId> {
        self.edges().filter(|&(_, u, v)| s.contains(&u) != s.contains(&v)).map(|(e, _, _)| e).collect()
    }

    fn successor_map(&self) -> HashMap<Dart, Dart> {
        let mut next = HashMap::with_capacity(2 * self.ends.len());
        for darts in self.rotation.values() {
            for (i, &d) in darts.iter().enumerate() {
                next.insert(d, darts[(i + 1) % darts.len()]);
            }
        }
        next
    }

    /// Face orbits, discovered from darts in ascending `(edge, end)` order.
    pub fn faces(&self) -> Vec<Face> {
        let next = self.successor_map();
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for &e in self.ends.keys() {
            for k in 0..2u8 {
                let start = Dart::new(e, k);
                if seen.contains(&start) {
                    continue;
                }
                let mut darts = Vec::new();
                let mut d = start;
                loop {
                    seen.insert(d);
                    darts.push(d);
                    d = next[&d.twin()];
                    if d == start {
                        break;
                    }
                }
                faces.push(Face { darts });
            }
        }
        faces
    }

    /// Face count of the plane embedding: isolated components share the
    /// outer face, so `|V| - |E| + |F| = 1 + #components`.
    pub fn face_count(&self) -> usize {
        let orbits = self.faces().len();
        let nontrivial = self.components().iter().filter(|c| self.degree(c[0]) > 0).count();
        1 + orbits - nontrivial
    }

    pub fn dual(&self) -> DualGraph {
        let faces = self.faces();
        let mut face_of = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            for &d in &f.darts {
                face_of.insert(d, i);
            }
        }
        let mut edges = BTreeMap::new();
        let mut loops = Vec::new();
        for &e in self.ends.keys() {
            let a = face_of[&Dart::new(e, 0)];
            let b = face_of[&Dart::new(e, 1)];
            if a == b {
                loops.push((e, a));
            } else {
                edges.insert(e, (a.min(b), a.max(b)));
            }
        }
        DualGraph { faces, edges, loops }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in self.rotation.keys() {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for d in &self.rotation[&v] {
                    let u = self.dart_head(*d);
                    if seen.insert(u) {
                        comp.push(u);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// BFS spanning forest; roots are the smallest vertex of each component
    /// and edges are scanned in rotation order.
    pub fn spanning_forest(&self) -> BTreeSet<EdgeId> {
        let mut seen = BTreeSet::new();
        let mut tree = BTreeSet::new();
        for &s in self.rotation.keys() {
            if !seen.insert(s) {
                continue;
            }
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for d in &self.rotation[&v] {
                    let u = self.dart_head(*d);
                    if seen.insert(u) {
                        tree.insert(d.edge);
                        queue.push_back(u);
                    }
                }
            }
        }
        tree
    }

    /// Underlying simple graph on indices `0..n` (vertex order ascending).
    pub fn to_abstract(&self) -> (AbstractGraph, Vec<VertexId>) {
        let ids: Vec<VertexId> = self.vertices().collect();
        let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut h = AbstractGraph::new(ids.len());
        for (_, u, v) in self.edges() {
            h.add_edge(index[&u], index[&v]);
        }
        (h, ids)
    }

    /// Deletes edges; the embedding of the rest is inherited.
    pub fn remove_edges(&self, remove: &BTreeSet<EdgeId>) -> PlanarGraph {
        let mut g = self.clone();
        for e in remove {
            g.ends.remove(e);
        }
        for darts in g.rotation.values_mut() {
            darts.retain(|d| !remove.contains(&d.edge));
        }
        g
    }

    /// Subgraph induced by `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> PlanarGraph {
        let ends: BTreeMap<_, _> = self
            .ends
            .iter()
            .filter(|(_, [u, v])| keep.contains(u) && keep.contains(v))
            .map(|(&e, &uv)| (e, uv))
            .collect();
        let rotation = self
            .rotation
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, darts)| (v, darts.iter().copied().filter(|d| ends.contains_key(&d.edge)).collect()))
            .collect();
        PlanarGraph { ends, rotation, next_vertex: self.next_vertex }
    }

    /// Replaces `s` by a single fresh vertex. Edges inside `s` are deleted,
    /// all others keep their ids. Each connected part of `s` is contracted
    /// along a spanning tree; parts are then merged in ascending order of
    /// their smallest vertex, each through a face shared with the vertex
    /// built so far.
    pub fn contract_set(
        &self,
        s: &BTreeSet<VertexId>,
        f: &VertexMap,
    ) -> Result<(PlanarGraph, VertexMap, VertexId), GraphError> {
        if s.is_empty() {
            return Err(GraphError::InvalidSet("empty set".into()));
        }
        if s.len() >= self.vertex_count() {
            return Err(GraphError::InvalidSet("set contains every vertex".into()));
        }
        if let Some(&v) = s.iter().find(|v| !self.has_vertex(**v)) {
            return Err(GraphError::UnknownVertex(v));
        }
        let mut g = self.clone();
        let parts = self.induced(s).components();
        let mut reps = Vec::with_capacity(parts.len());
        for part in &parts {
            reps.push(g.contract_connected(part));
        }
        let acc = reps[0];
        let mut pending: Vec<VertexId> = reps[1..].to_vec();
        while !pending.is_empty() {
            let pos = pending.iter().position(|&b| g.merge_through_face(acc, b)).ok_or(GraphError::NotContractible)?;
            pending.remove(pos);
        }
        let fresh = VertexId(g.next_vertex);
        g.next_vertex += 1;
        let darts = g.rotation.remove(&acc).unwrap_or_default();
        for d in &darts {
            g.ends.get_mut(&d.edge).unwrap()[d.end as usize] = fresh;
        }
        g.rotation.insert(fresh, darts);
        let f2 = f.contract(s, fresh);
        Ok((g, f2, fresh))
    }

    /// Contracts a connected vertex set onto its smallest vertex and returns
    /// that vertex.
    fn contract_connected(&mut self, part: &[VertexId]) -> VertexId {
        let acc = part[0];
        let mut rest: BTreeSet<VertexId> = part[1..].iter().copied().collect();
        while !rest.is_empty() {
            let (dart_acc, v) = self.rotation[&acc]
                .iter()
                .filter_map(|&d| {
                    let h = self.dart_head(d);
                    rest.contains(&h).then_some((d, h))
                })
                .min_by_key(|(d, _)| d.edge)
                .expect("part is connected");
            self.contract_edge(acc, dart_acc, v);
            rest.remove(&v);
        }
        acc
    }

    /// Contracts the edge of `dart_acc` (leaving `acc`, entering `v`) and
    /// deletes the loops this creates.
    fn contract_edge(&mut self, acc: VertexId, dart_acc: Dart, v: VertexId) {
        let ra = self.rotation.remove(&acc).unwrap();
        let rv = self.rotation.remove(&v).unwrap();
        let ia = ra.iter().position(|&d| d == dart_acc).unwrap();
        let iv = rv.iter().position(|&d| d == dart_acc.twin()).unwrap();
        let mut merged = Vec::with_capacity(ra.len() + rv.len() - 2);
        for k in 1..ra.len() {
            merged.push(ra[(ia + k) % ra.len()]);
        }
        for k in 1..rv.len() {
            merged.push(rv[(iv + k) % rv.len()]);
        }
        for d in &merged {
            let ends = self.ends.get_mut(&d.edge).unwrap();
            if ends[d.end as usize] == v {
                ends[d.end as usize] = acc;
            }
        }
        self.ends.remove(&dart_acc.edge);
        let loops: BTreeSet<EdgeId> = merged
            .iter()
            .filter(|d| {
                let [a, b] = self.ends[&d.edge];
                a == b
            })
            .map(|d| d.edge)
            .collect();
        merged.retain(|d| !loops.contains(&d.edge));
        for e in &loops {
            self.ends.remove(e);
        }
        self.rotation.insert(acc, merged);
    }

    fn same_component(&self, a: VertexId, b: VertexId) -> bool {
        let mut seen = BTreeSet::from([a]);
        let mut stack = vec![a];
        while let Some(v) = stack.pop() {
            if v == b {
                return true;
            }
            for d in &self.rotation[&v] {
                let u = self.dart_head(*d);
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        false
    }

    /// Identifies `b` with `a` if they lie on a common face (or either is
    /// isolated). Returns false when no such face exists.
    fn merge_through_face(&mut self, a: VertexId, b: VertexId) -> bool {
        let ra = &self.rotation[&a];
        let rb = &self.rotation[&b];
        let (start_a, start_b) = if ra.is_empty() || rb.is_empty() {
            (0, 0)
        } else {
            let mut found = None;
            for face in self.faces() {
                let da = face.darts.iter().position(|&d| self.dart_tail(d) == a);
                let db = face.darts.iter().position(|&d| self.dart_tail(d) == b);
                if let (Some(i), Some(j)) = (da, db) {
                    found = Some((face.darts[i], face.darts[j]));
                    break;
                }
            }
            match found {
                Some((da, db)) => {
                    (ra.iter().position(|&d| d == da).unwrap(), rb.iter().position(|&d| d == db).unwrap())
                }
                // different components: any corner of each will do
                None if !self.same_component(a, b) => (0, 0),
                None => return false,
            }
        };
        let ra = self.rotation.remove(&a).unwrap();
        let rb = self.rotation.remove(&b).unwrap();
        let mut merged = Vec::with_capacity(ra.len() + rb.len());
        for k in 0..ra.len() {
            merged.push(ra[(start_a + k) % ra.len()]);
        }
        for k in 0..rb.len() {
            merged.push(rb[(start_b + k) % rb.len()]);
        }
        for d in &merged {
            let ends = self.ends.get_mut(&d.edge).unwrap();
            if ends[d.end as usize] == b {
                ends[d.end as usize] = a;
            }
        }
        self.rotation.insert(a, merged);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: u32) -> PlanarGraph {
        let edges = (0..n).map(|i| (EdgeId(i), VertexId(i), VertexId((i + 1) % n)));
        let rot = (0..n).map(|i| (VertexId(i), vec![Dart::new(EdgeId(i), 0), Dart::new(EdgeId((i + n - 1) % n), 1)]));
        PlanarGraph::build(edges, rot).unwrap()
    }

    #[test]
    fn cycle_faces() {
        let g = cycle(4);
        let faces = g.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 4));
        assert_eq!(g.face_count(), 2);
    }

    #[test]
    fn single_edge() {
        let g = PlanarGraph::build(
            [(EdgeId(0), VertexId(0), VertexId(1))],
            [(VertexId(0), vec![Dart::new(EdgeId(0), 0)]), (VertexId(1), vec![Dart::new(EdgeId(0), 1)])],
        )
        .unwrap();
        let faces = g.faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 2);
        let dual = g.dual();
        assert_eq!(dual.node_count(), 1);
        assert!(dual.edges.is_empty());
        assert_eq!(dual.loops, vec![(EdgeId(0), 0)]);
    }

    #[test]
    fn loop_rejected() {
        let r = PlanarGraph::build(
            [(EdgeId(0), VertexId(0), VertexId(0))],
            [(VertexId(0), vec![Dart::new(EdgeId(0), 0), Dart::new(EdgeId(0), 1)])],
        );
        assert_eq!(r, Err(GraphError::LoopEdge(EdgeId(0))));
    }

    #[test]
    fn missing_end_rejected() {
        let r = PlanarGraph::build(
            [(EdgeId(0), VertexId(0), VertexId(1))],
            [(VertexId(0), vec![Dart::new(EdgeId(0), 0)]), (VertexId(1), vec![])],
        );
        assert!(matches!(r, Err(GraphError::MalformedRotation(_))));
    }

    #[test]
    fn contract_pair_in_cycle() {
        let g = cycle(4);
        let f = VertexMap::identity(&g);
        let s: BTreeSet<_> = [VertexId(0), VertexId(1)].into();
        let (h, f2, v) = g.contract_set(&s, &f).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);
        h.validate().unwrap();
        assert_eq!(f2.preimage_size(v), 2);
        assert_eq!(v, VertexId(4));
        let all: BTreeSet<_> = g.vertices().collect();
        assert_eq!(g.contract_set(&all, &f).unwrap_err(), GraphError::InvalidSet("set contains every vertex".into()));
    }

    #[test]
    fn contract_disconnected_parts_on_common_face() {
        let g = cycle(6);
        let f = VertexMap::identity(&g);
        let s: BTreeSet<_> = [VertexId(0), VertexId(2), VertexId(4)].into();
        let (h, _, _) = g.contract_set(&s, &f).unwrap();
        h.validate().unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 6);
    }
}
