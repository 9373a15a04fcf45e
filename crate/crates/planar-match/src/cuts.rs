//! Exact maximum flows, minimal minimum cuts, Gomory-Hu trees built by
//! central-vertex splitting, and minimum odd cuts.
//!
//! Rational capacities are scaled to integers by the least common multiple
//! of their denominators. Flows run in `i128` when the scaled total fits,
//! and in `BigInt` otherwise.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{EdgeId, PlanarGraph, VertexId};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("source and sink coincide")]
    SameTerminals,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has an odd number of vertices")]
    OddVertexCount,
    #[error("negative capacity on edge {0}")]
    NegativeCapacity(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
}

pub type Capacities = BTreeMap<EdgeId, Rational>;

trait FlowNum: Clone + Ord + Zero + AddAssign + SubAssign + Send + Sync {}
impl FlowNum for i128 {}
impl FlowNum for BigInt {}

/// Residual network on nodes `0..n`; every undirected edge is a pair of
/// arcs `2k`, `2k + 1` that both start with the full capacity.
#[derive(Clone)]
struct Network<T> {
    head: Vec<usize>,
    cap: Vec<T>,
    out: Vec<Vec<usize>>,
}

impl<T: FlowNum> Network<T> {
    fn new(n: usize) -> Self {
        Network { head: Vec::new(), cap: Vec::new(), out: vec![Vec::new(); n] }
    }

    fn add_edge(&mut self, a: usize, b: usize, c: T) {
        let k = self.head.len();
        self.head.push(b);
        self.cap.push(c.clone());
        self.out[a].push(k);
        self.head.push(a);
        self.cap.push(c);
        self.out[b].push(k + 1);
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.out.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let v = self.head[a];
                if level[v] == usize::MAX && !self.cap[a].is_zero() {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn push(&mut self, u: usize, t: usize, limit: Option<T>, level: &[usize], next: &mut [usize]) -> T {
        if u == t {
            return limit.expect("source differs from sink");
        }
        while next[u] < self.out[u].len() {
            let a = self.out[u][next[u]];
            let v = self.head[a];
            if !self.cap[a].is_zero() && level[v] == level[u] + 1 {
                let lim = match &limit {
                    Some(l) if *l < self.cap[a] => l.clone(),
                    _ => self.cap[a].clone(),
                };
                let got = self.push(v, t, Some(lim), level, next);
                if !got.is_zero() {
                    self.cap[a] -= got.clone();
                    self.cap[a ^ 1] += got.clone();
                    return got;
                }
            }
            next[u] += 1;
        }
        T::zero()
    }

    /// Dinic's algorithm; returns the flow value.
    fn max_flow(&mut self, s: usize, t: usize) -> T {
        let mut total = T::zero();
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return total;
            }
            let mut next = vec![0; self.out.len()];
            loop {
                let got = self.push(s, t, None, &level, &mut next);
                if got.is_zero() {
                    break;
                }
                total += got;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network.
    fn source_side(&self, s: usize) -> Vec<bool> {
        let level = self.levels(s);
        level.iter().map(|&l| l != usize::MAX).collect()
    }

    /// Nodes from which `t` is reachable in the residual network.
    fn sink_side(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[t] = true;
        let mut queue = VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.out[v] {
                // arc a leaves v, so a ^ 1 enters v from head[a]
                let u = self.head[a];
                if !seen[u] && !self.cap[a ^ 1].is_zero() {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }
}

/// Integer capacities obtained by scaling with a common denominator.
#[derive(Clone, Debug)]
struct Scaled {
    scale: BigInt,
    caps: BTreeMap<EdgeId, BigInt>,
    small: bool,
}

fn scale_caps(g: &PlanarGraph, cap: &Capacities) -> Result<Scaled, CutError> {
    let mut scale = BigInt::one();
    for e in g.edge_ids() {
        if let Some(c) = cap.get(&e) {
            if c.is_negative() {
                return Err(CutError::NegativeCapacity(e));
            }
            scale = scale.lcm(c.denom());
        }
    }
    let caps: BTreeMap<EdgeId, BigInt> = g
        .edge_ids()
        .map(|e| (e, cap.get(&e).map_or_else(BigInt::zero, |c| c.numer() * (&scale / c.denom()))))
        .collect();
    let total: BigInt = caps.values().sum();
    Ok(Scaled { scale, small: total.bits() < 120, caps })
}

/// A flow problem on `g` with vertices grouped into nodes.
struct Problem<'a> {
    g: &'a PlanarGraph,
    scaled: &'a Scaled,
    node_of: HashMap<VertexId, usize>,
    nodes: usize,
}

impl Problem<'_> {
    fn network<T: FlowNum>(&self, conv: impl Fn(&BigInt) -> T) -> Network<T> {
        let mut net = Network::new(self.nodes);
        for (e, u, v) in self.g.edges() {
            let (a, b) = (self.node_of[&u], self.node_of[&v]);
            let c = &self.scaled.caps[&e];
            if a != b && !c.is_zero() {
                net.add_edge(a, b, conv(c));
            }
        }
        net
    }

    /// Flow value and (source side, sink side) node masks; the sink side is
    /// the inclusion-minimal one.
    fn solve(&self, s: usize, t: usize) -> (Rational, Vec<bool>, Vec<bool>) {
        if self.scaled.small {
            let mut net = self.network(|c| c.to_i128().unwrap());
            let f = net.max_flow(s, t);
            let value = Rational::new(BigInt::from(f), self.scaled.scale.clone());
            (value, net.source_side(s), net.sink_side(t))
        } else {
            let mut net = self.network(|c| c.clone());
            let f = net.max_flow(s, t);
            let value = Rational::new(f, self.scaled.scale.clone());
            (value, net.source_side(s), net.sink_side(t))
        }
    }
}

fn identity_nodes(g: &PlanarGraph) -> (HashMap<VertexId, usize>, Vec<VertexId>) {
    let ids: Vec<VertexId> = g.vertices().collect();
    (ids.iter().enumerate().map(|(i, &v)| (v, i)).collect(), ids)
}

fn check_terminals(g: &PlanarGraph, s: VertexId, t: VertexId) -> Result<(), CutError> {
    for v in [s, t] {
        if !g.has_vertex(v) {
            return Err(CutError::UnknownVertex(v));
        }
    }
    if s == t {
        return Err(CutError::SameTerminals);
    }
    Ok(())
}

/// Maximum `s`-`t` flow value and a minimum cut side containing `s`.
pub fn max_flow_min_cut(
    g: &PlanarGraph,
    cap: &Capacities,
    s: VertexId,
    t: VertexId,
) -> Result<(Rational, BTreeSet<VertexId>), CutError> {
    check_terminals(g, s, t)?;
    let scaled = scale_caps(g, cap)?;
    let (node_of, ids) = identity_nodes(g);
    let p = Problem { g, scaled: &scaled, nodes: ids.len(), node_of };
    let (value, src, _) = p.solve(p.node_of[&s], p.node_of[&t]);
    Ok((value, ids.iter().zip(src).filter(|(_, b)| *b).map(|(v, _)| *v).collect()))
}

/// Inclusion-minimal minimum `r`-`v` cut side containing `v`, with its
/// value.
pub fn minimal_min_cut(
    g: &PlanarGraph,
    cap: &Capacities,
    r: VertexId,
    v: VertexId,
) -> Result<(Rational, BTreeSet<VertexId>), CutError> {
    check_terminals(g, r, v)?;
    let scaled = scale_caps(g, cap)?;
    let (node_of, ids) = identity_nodes(g);
    let p = Problem { g, scaled: &scaled, nodes: ids.len(), node_of };
    let (value, _, sink) = p.solve(p.node_of[&r], p.node_of[&v]);
    Ok((value, ids.iter().zip(sink).filter(|(_, b)| *b).map(|(v, _)| *v).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GomoryHuEdge {
    pub a: usize,
    pub b: usize,
    pub weight: Rational,
    /// `(u, v)` with `u` in class `a`, `v` in class `b` and min cut
    /// `f(u, v) = weight`.
    pub witness: (VertexId, VertexId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GomoryHuTree {
    pub classes: Vec<BTreeSet<VertexId>>,
    pub edges: Vec<GomoryHuEdge>,
    pub rounds: usize,
}

impl GomoryHuTree {
    fn class_of(&self) -> HashMap<VertexId, usize> {
        let mut out = HashMap::new();
        for (i, c) in self.classes.iter().enumerate() {
            for &v in c {
                out.insert(v, i);
            }
        }
        out
    }

    /// Classes on the side of `self.edges[k]` that contains class `a`.
    pub fn side_of_edge(&self, k: usize) -> BTreeSet<VertexId> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.classes.len()];
        for (j, e) in self.edges.iter().enumerate() {
            if j != k {
                adj[e.a].push(e.b);
                adj[e.b].push(e.a);
            }
        }
        let start = self.edges[k].a;
        let mut seen = vec![false; self.classes.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = BTreeSet::new();
        while let Some(c) = stack.pop() {
            out.extend(self.classes[c].iter().copied());
            for &d in &adj[c] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        out
    }

    /// Minimum edge weight on the tree path between `u` and `v`.
    pub fn path_min(&self, u: VertexId, v: VertexId) -> Option<Rational> {
        let class = self.class_of();
        let (a, b) = (*class.get(&u)?, *class.get(&v)?);
        if a == b {
            return None;
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.classes.len()];
        for (j, e) in self.edges.iter().enumerate() {
            adj[e.a].push((e.b, j));
            adj[e.b].push((e.a, j));
        }
        let mut via: Vec<Option<(usize, usize)>> = vec![None; self.classes.len()];
        let mut seen = vec![false; self.classes.len()];
        seen[a] = true;
        let mut stack = vec![a];
        while let Some(c) = stack.pop() {
            for &(d, j) in &adj[c] {
                if !seen[d] {
                    seen[d] = true;
                    via[d] = Some((c, j));
                    stack.push(d);
                }
            }
        }
        let mut best: Option<Rational> = None;
        let mut c = b;
        while c != a {
            let (p, j) = via[c]?;
            let w = &self.edges[j].weight;
            if best.as_ref().is_none_or(|x| w < x) {
                best = Some(w.clone());
            }
            c = p;
        }
        best
    }
}

/// A class of the tree under construction together with the vertex groups
/// (one per incident tree edge) that are shrunk when the class is split.
struct ClassView {
    class: BTreeSet<VertexId>,
    groups: Vec<BTreeSet<VertexId>>,
}

struct Split {
    r: VertexId,
    /// maximal minimal cuts: (representative v_j, value, side in G').
    parts: Vec<(VertexId, Rational, BTreeSet<VertexId>)>,
}

fn class_problem<'a>(g: &'a PlanarGraph, scaled: &'a Scaled, view: &ClassView) -> (Problem<'a>, Vec<VertexId>) {
    let members: Vec<VertexId> = view.class.iter().copied().collect();
    let mut node_of: HashMap<VertexId, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for (k, grp) in view.groups.iter().enumerate() {
        for &v in grp {
            node_of.insert(v, members.len() + k);
        }
    }
    let nodes = members.len() + view.groups.len();
    (Problem { g, scaled, node_of, nodes }, members)
}

/// All minimal minimum `r`-`v` cuts for the class members `v`, aborting as
/// soon as one holds more than half of the class.
fn try_center(p: &Problem, members: &[VertexId], ri: usize) -> Option<Vec<(usize, Rational, Vec<bool>)>> {
    let half = members.len() / 2;
    let mut cuts = Vec::new();
    for vi in 0..members.len() {
        if vi == ri {
            continue;
        }
        let (value, _, sink) = p.solve(ri, vi);
        if sink[..members.len()].iter().filter(|b| **b).count() > half {
            return None;
        }
        cuts.push((vi, value, sink));
    }
    Some(cuts)
}

fn split_class(g: &PlanarGraph, scaled: &Scaled, view: &ClassView) -> Split {
    let (p, members) = class_problem(g, scaled, view);
    let (ri, cuts) = (0..members.len())
        .find_map(|ri| try_center(&p, &members, ri).map(|c| (ri, c)))
        .expect("a central vertex exists in every class");
    // maximal sets of the laminar family
    let mut order: Vec<usize> = (0..cuts.len()).collect();
    order.sort_by_key(|&k| (std::cmp::Reverse(cuts[k].2.iter().filter(|b| **b).count()), cuts[k].0));
    let mut covered = vec![false; p.nodes];
    let mut parts = Vec::new();
    for k in order {
        let (vi, value, sink) = &cuts[k];
        if covered[*vi] {
            continue;
        }
        for (i, &b) in sink.iter().enumerate() {
            if b {
                assert!(!covered[i], "minimal cuts to a fixed vertex must be laminar");
                covered[i] = true;
            }
        }
        let mut side = BTreeSet::new();
        for (i, &b) in sink.iter().enumerate() {
            if b {
                if i < members.len() {
                    side.insert(members[i]);
                } else {
                    side.extend(view.groups[i - members.len()].iter().copied());
                }
            }
        }
        parts.push((members[*vi], value.clone(), side));
    }
    parts.sort_by_key(|(v, _, _)| *v);
    Split { r: members[ri], parts }
}

/// Central vertex of `class` in `g` with each of `groups` shrunk to a node:
/// every minimal minimum cut to another class member holds at most half of
/// the class. The smallest qualifying vertex is returned.
pub fn central_vertex(
    g: &PlanarGraph,
    cap: &Capacities,
    class: &BTreeSet<VertexId>,
    groups: &[BTreeSet<VertexId>],
) -> Result<VertexId, CutError> {
    let scaled = scale_caps(g, cap)?;
    let view = ClassView { class: class.clone(), groups: groups.to_vec() };
    Ok(split_class(g, &scaled, &view).r)
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Gomory-Hu tree of a connected graph. Each round splits every class
/// around a central vertex, so class sizes at least halve per round.
pub fn gomory_hu_tree(g: &PlanarGraph, cap: &Capacities) -> Result<GomoryHuTree, CutError> {
    if !g.is_connected() {
        return Err(CutError::Disconnected);
    }
    let scaled = scale_caps(g, cap)?;
    let mut tree = GomoryHuTree { classes: vec![g.vertex_set()], edges: Vec::new(), rounds: 0 };
    if g.vertex_count() == 0 {
        tree.classes.clear();
        return Ok(tree);
    }
    while tree.classes.iter().any(|c| c.len() > 1) {
        tree.rounds += 1;
        let todo: Vec<usize> = (0..tree.classes.len()).filter(|&i| tree.classes[i].len() > 1).collect();
        let views: Vec<(usize, ClassView, Vec<usize>)> = todo
            .iter()
            .map(|&i| {
                let incident: Vec<usize> =
                    (0..tree.edges.len()).filter(|&k| tree.edges[k].a == i || tree.edges[k].b == i).collect();
                let groups = incident
                    .iter()
                    .map(|&k| {
                        let e = &tree.edges[k];
                        let side = tree.side_of_edge(k);
                        if e.a == i {
                            g.vertex_set().difference(&side).copied().collect()
                        } else {
                            side
                        }
                    })
                    .collect();
                (i, ClassView { class: tree.classes[i].clone(), groups }, incident)
            })
            .collect();
        let splits: Vec<Split> = views.par_iter().map(|(_, v, _)| split_class(g, &scaled, v)).collect();
        for ((i, view, incident), split) in views.into_iter().zip(splits) {
            apply_split(&mut tree, i, &view, &incident, split);
        }
        assert!(tree.rounds <= ceil_log2(g.vertex_count()), "Gomory-Hu construction exceeded the round bound");
    }
    Ok(tree)
}

fn apply_split(tree: &mut GomoryHuTree, i: usize, view: &ClassView, incident: &[usize], split: Split) {
    let r = split.r;
    let mut part_classes = Vec::new();
    let mut rest = view.class.clone();
    for (v, value, side) in &split.parts {
        let members: BTreeSet<VertexId> = side.intersection(&view.class).copied().collect();
        rest.retain(|x| !members.contains(x));
        let idx = tree.classes.len();
        tree.classes.push(members);
        tree.edges.push(GomoryHuEdge { a: i, b: idx, weight: value.clone(), witness: (r, *v) });
        part_classes.push((idx, *v, side));
    }
    debug_assert_eq!(rest, BTreeSet::from([r]));
    tree.classes[i] = rest;
    for (&k, grp) in incident.iter().zip(&view.groups) {
        let any = *grp.iter().next().expect("shrunk groups are nonempty");
        let target = part_classes.iter().find(|(_, _, side)| side.contains(&any));
        let (new_class, terminal) = match target {
            Some(&(idx, v, _)) => (idx, v),
            None => (i, r),
        };
        let e = &mut tree.edges[k];
        let ours_first = e.a == i;
        let u = if ours_first { e.witness.0 } else { e.witness.1 };
        let keeps = match target {
            Some((_, _, side)) => side.contains(&u),
            None => u == r,
        };
        let w = if keeps { u } else { terminal };
        if ours_first {
            e.a = new_class;
            e.witness.0 = w;
        } else {
            e.b = new_class;
            e.witness.1 = w;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCut {
    pub side: BTreeSet<VertexId>,
    pub weight: Rational,
}

/// The smaller side, or the lexicographically smaller one on equal sizes.
fn canonical_side(a: BTreeSet<VertexId>, b: BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    if a.len() < b.len() || (a.len() == b.len() && a.iter().lt(b.iter())) {
        a
    } else {
        b
    }
}

fn better(candidate: &OddCut, best: &Option<OddCut>) -> bool {
    match best {
        None => true,
        Some(b) => {
            candidate.weight < b.weight || (candidate.weight == b.weight && candidate.side.iter().lt(b.side.iter()))
        }
    }
}

/// Minimum odd cut of a graph with an even number of vertices. A component
/// with an odd number of vertices is a cut of weight 0. Otherwise the answer
/// is the lightest fundamental cut of a Gomory-Hu tree with odd sides. Each
/// cut is reported by its smaller side within the component (the
/// lexicographically smaller one on equal sizes), and ties between cuts go
/// to the lexicographically smallest side.
pub fn min_odd_cut(g: &PlanarGraph, cap: &Capacities) -> Result<OddCut, CutError> {
    if g.vertex_count() % 2 == 1 {
        return Err(CutError::OddVertexCount);
    }
    let comps = g.components();
    if let Some(c) = comps.iter().find(|c| c.len() % 2 == 1) {
        return Ok(OddCut { side: c.iter().copied().collect(), weight: Rational::zero() });
    }
    let per_comp: Vec<Result<Option<OddCut>, CutError>> = comps
        .par_iter()
        .map(|c| {
            let set: BTreeSet<VertexId> = c.iter().copied().collect();
            let sub = g.induced(&set);
            let tree = gomory_hu_tree(&sub, cap)?;
            let mut best: Option<OddCut> = None;
            for (k, e) in tree.edges.iter().enumerate() {
                let side = tree.side_of_edge(k);
                if side.len() % 2 == 0 {
                    continue;
                }
                let other: BTreeSet<VertexId> = set.difference(&side).copied().collect();
                let cand = OddCut { side: canonical_side(side, other), weight: e.weight.clone() };
                if better(&cand, &best) {
                    best = Some(cand);
                }
            }
            Ok(best)
        })
        .collect();
    let mut best = None;
    for r in per_comp {
        if let Some(c) = r? {
            if better(&c, &best) {
                best = Some(c);
            }
        }
    }
    best.ok_or(CutError::OddVertexCount)
}

/// Minimum odd cut for any vertex count: with an odd total some component
/// is odd and is a cut of weight 0. `None` only for the empty graph.
pub fn min_odd_cut_any(g: &PlanarGraph, cap: &Capacities) -> Option<OddCut> {
    if g.vertex_count() == 0 {
        return None;
    }
    if g.vertex_count() % 2 == 1 {
        let c = g.components().into_iter().find(|c| c.len() % 2 == 1)?;
        return Some(OddCut { side: c.into_iter().collect(), weight: Rational::zero() });
    }
    min_odd_cut(g, cap).ok()
}

/// Cut weight `cap(δ(S))`.
pub fn cut_weight(g: &PlanarGraph, cap: &Capacities, s: &BTreeSet<VertexId>) -> Rational {
    g.cut_edges(s).into_iter().filter_map(|e| cap.get(&e).cloned()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn unit(g: &PlanarGraph) -> Capacities {
        g.edge_ids().map(|e| (e, r(1, 1))).collect()
    }

    fn set(ids: &[u32]) -> BTreeSet<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn flows() {
        let g = path(2);
        let (v, side) = max_flow_min_cut(&g, &[(EdgeId(0), r(3, 2))].into(), VertexId(0), VertexId(1)).unwrap();
        assert_eq!((v, side), (r(3, 2), set(&[0])));
        // s=0, t=2 on C4: paths through 1 (caps 1) and 3 (caps 2)
        let c4 = cycle(4);
        let caps = [(EdgeId(0), r(1, 1)), (EdgeId(1), r(1, 1)), (EdgeId(2), r(2, 1)), (EdgeId(3), r(2, 1))].into();
        assert_eq!(max_flow_min_cut(&c4, &caps, VertexId(0), VertexId(2)).unwrap().0, r(3, 1));
        let g = grid(4, 4);
        assert_eq!(max_flow_min_cut(&g, &unit(&g), VertexId(0), VertexId(15)).unwrap().0, r(2, 1));
        assert_eq!(max_flow_min_cut(&g, &unit(&g), VertexId(3), VertexId(3)), Err(CutError::SameTerminals));
    }

    #[test]
    fn minimal_cuts() {
        let g = path(3);
        assert_eq!(minimal_min_cut(&g, &unit(&g), VertexId(0), VertexId(2)).unwrap().1, set(&[2]));
        let c4 = cycle(4);
        assert_eq!(minimal_min_cut(&c4, &unit(&c4), VertexId(0), VertexId(2)).unwrap().1, set(&[2]));
    }

    #[test]
    fn central_vertices() {
        let g = path(3);
        assert_eq!(central_vertex(&g, &unit(&g), &g.vertex_set(), &[]).unwrap(), VertexId(1));
        let star = PlanarGraph::from_drawing(
            &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)],
            &[(0, 1), (0, 2), (0, 3), (0, 4)],
        )
        .unwrap();
        assert_eq!(central_vertex(&star, &unit(&star), &star.vertex_set(), &[]).unwrap(), VertexId(0));
        let c8 = cycle(8);
        assert_eq!(central_vertex(&c8, &unit(&c8), &c8.vertex_set(), &[]).unwrap(), VertexId(0));
    }

    #[test]
    fn gomory_hu_on_path_and_cycle() {
        let g = path(4);
        let caps = [(EdgeId(0), r(5, 1)), (EdgeId(1), r(3, 1)), (EdgeId(2), r(7, 1))].into();
        let t = gomory_hu_tree(&g, &caps).unwrap();
        assert!(t.classes.iter().all(|c| c.len() == 1));
        let mut ws: Vec<Rational> = t.edges.iter().map(|e| e.weight.clone()).collect();
        ws.sort();
        assert_eq!(ws, vec![r(3, 1), r(5, 1), r(7, 1)]);
        assert_eq!(t.path_min(VertexId(0), VertexId(3)), Some(r(3, 1)));
        assert_eq!(t.path_min(VertexId(2), VertexId(3)), Some(r(7, 1)));

        let c4 = cycle(4);
        let t = gomory_hu_tree(&c4, &unit(&c4)).unwrap();
        assert!(t.edges.iter().all(|e| e.weight == r(2, 1)));
        assert!(t.rounds <= 2);
    }

    #[test]
    fn tree_values_and_witnesses() {
        let g = grid(3, 4);
        let caps: Capacities = g.edge_ids().map(|e| (e, r(1 + (e.0 as i64 * 5) % 4, 2))).collect();
        let t = gomory_hu_tree(&g, &caps).unwrap();
        for (k, e) in t.edges.iter().enumerate() {
            let side = t.side_of_edge(k);
            assert_eq!(cut_weight(&g, &caps, &side), e.weight);
            let (u, v) = e.witness;
            assert!(t.classes[e.a].contains(&u) && t.classes[e.b].contains(&v));
            assert_eq!(max_flow_min_cut(&g, &caps, u, v).unwrap().0, e.weight);
        }
        for u in g.vertices() {
            for v in g.vertices().filter(|v| *v > u) {
                assert_eq!(t.path_min(u, v).unwrap(), max_flow_min_cut(&g, &caps, u, v).unwrap().0);
            }
        }
        assert!(t.rounds <= 4);
    }

    #[test]
    fn odd_cuts() {
        let g = bridged_triangles();
        let caps: Capacities = [(EdgeId(0), r(1, 1)), (EdgeId(4), r(1, 1)), (EdgeId(6), r(1, 1))].into();
        let c = min_odd_cut(&g, &caps).unwrap();
        assert_eq!(c.weight, r(1, 1));
        // both triangles and every singleton are minimum odd cuts here
        assert_eq!(cut_weight(&g, &caps, &c.side), r(1, 1));
        assert_eq!(c.side.len() % 2, 1);
        let c4 = cycle(4);
        let half: Capacities = c4.edge_ids().map(|e| (e, r(1, 2))).collect();
        let c = min_odd_cut(&c4, &half).unwrap();
        assert_eq!((c.side.len(), c.weight), (1, r(1, 1)));
        let c6 = cycle(6);
        assert_eq!(min_odd_cut(&c6, &unit(&c6)).unwrap().weight, r(2, 1));
        assert_eq!(min_odd_cut(&path(3), &unit(&path(3))), Err(CutError::OddVertexCount));
    }
}
