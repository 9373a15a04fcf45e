//! Tight odd sets blocking even walks, and their uncrossing into a family
//! of pairwise disjoint tight odd sets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use thiserror::Error;

use crate::cuts::{min_odd_cut_any, Capacities};
use crate::graph::{AbstractGraph, BlockCutNode, BlockCutTree, PlanarGraph, VertexId, VertexMap};
use crate::observer::Observer;
use crate::polytope::{alternating_vector, rotate, rotation_epsilon, EvenWalk, FractionalPoint};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UncrossError {
    #[error("rotation violates no odd-set constraint")]
    NoViolation,
    #[error("walk leaves the support of the point")]
    WalkOutsideSupport,
    #[error("component has even parity required, found odd")]
    BadParity,
}

/// Odd vertex set with `x(δ(S)) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightOddSet {
    pub set: BTreeSet<VertexId>,
    pub certificate: Rational,
}

impl TightOddSet {
    pub fn min_vertex(&self) -> VertexId {
        *self.set.iter().next().expect("tight odd sets are nonempty")
    }
}

/// A balanced viable set found while uncrossing. `current` lives in the
/// contracted graph and `original` is its preimage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarlyExit {
    pub current: BTreeSet<VertexId>,
    pub original: BTreeSet<VertexId>,
}

pub fn is_tight_odd(g: &PlanarGraph, x: &FractionalPoint, s: &BTreeSet<VertexId>) -> bool {
    s.len() % 2 == 1 && x.cut_value(g, s).is_one()
}

/// Sign of the rotation `x ± χ_W / (4nm)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Direction {
    #[default]
    Forward,
    Backward,
}

impl Direction {
    pub fn epsilon(self, n: usize, m: &BigUint) -> Rational {
        let eps = rotation_epsilon(n, m);
        match self {
            Direction::Forward => eps,
            Direction::Backward => -eps,
        }
    }
}

/// Tight odd set crossed by the walk, read off a minimum odd cut of the
/// rotated point `x + χ_W / (4nm)`.
pub fn find_blocking_odd_set(
    g: &PlanarGraph,
    x: &FractionalPoint,
    walk: &EvenWalk,
    m: &BigUint,
) -> Result<TightOddSet, UncrossError> {
    find_blocking_odd_set_toward(g, x, walk, m, Direction::Forward)
}

/// As [`find_blocking_odd_set`], rotating in the given direction.
pub fn find_blocking_odd_set_toward(
    g: &PlanarGraph,
    x: &FractionalPoint,
    walk: &EvenWalk,
    m: &BigUint,
    dir: Direction,
) -> Result<TightOddSet, UncrossError> {
    let eps = dir.epsilon(g.vertex_count(), m);
    let y = rotate(x, walk, &eps).map_err(|_| UncrossError::WalkOutsideSupport)?;
    let caps: Capacities = g.edge_ids().map(|e| (e, y.get(e))).collect();
    let cut = min_odd_cut_any(g, &caps).ok_or(UncrossError::NoViolation)?;
    if cut.weight >= Rational::one() {
        return Err(UncrossError::NoViolation);
    }
    let chi = alternating_vector(walk).map_err(|_| UncrossError::WalkOutsideSupport)?;
    let certificate = x.cut_value(g, &cut.side);
    assert!(certificate.is_one(), "minimum odd cut of the rotated point is not tight");
    assert!(chi.cut_value(g, &cut.side) != 0, "blocking set does not cross the walk");
    Ok(TightOddSet { set: cut.side, certificate })
}

/// Nodes are vertex sets; edges join sets with an odd intersection.
#[derive(Clone, Debug)]
pub struct IntersectionParityGraph {
    pub sets: Vec<BTreeSet<VertexId>>,
    pub graph: AbstractGraph,
}

impl IntersectionParityGraph {
    pub fn new(sets: Vec<BTreeSet<VertexId>>) -> Self {
        let mut graph = AbstractGraph::new(sets.len());
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i].intersection(&sets[j]).count() % 2 == 1 {
                    graph.add_edge(i, j);
                }
            }
        }
        IntersectionParityGraph { sets, graph }
    }

    /// `|V_U| + |E_U| mod 2` for the sub-collection `U`.
    pub fn parity(&self, nodes: &BTreeSet<usize>) -> usize {
        (nodes.len() + self.graph.induced_edge_count(nodes)) % 2
    }

    pub fn union(&self, nodes: &BTreeSet<usize>) -> BTreeSet<VertexId> {
        nodes.iter().flat_map(|&i| self.sets[i].iter().copied()).collect()
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.graph.node_count();
        let mut color = vec![usize::MAX; n];
        for s in 0..n {
            if color[s] != usize::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in self.graph.neighbors(v) {
                    if color[u] == usize::MAX {
                        color[u] = 1 - color[v];
                        queue.push_back(u);
                    } else if color[u] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_triangle_free(&self) -> bool {
        self.graph.edges().iter().all(|&(a, b)| self.graph.neighbors(a).is_disjoint(self.graph.neighbors(b)))
    }

    /// No vertex lies in three of the sets.
    pub fn has_no_triple_intersections(&self) -> bool {
        let mut count: BTreeMap<VertexId, usize> = BTreeMap::new();
        for s in &self.sets {
            for &v in s {
                *count.entry(v).or_default() += 1;
            }
        }
        count.values().all(|&c| c <= 2)
    }
}

/// Two connected sub-collections of odd parity covering `nodes`, which must
/// induce a connected sub-collection of even parity.
///
/// Blocks of the block-cut tree are labelled with their inverse parity
/// `|V_B| + |E_B| + 1`, cut vertices with 0; the label sum over a subtree is
/// the inverse parity of its union. With at least three odd blocks the tree
/// is cut next to the two odd blocks farthest apart. With a single odd block
/// `B`, one node of even degree in `B` (or two adjacent nodes from the last
/// ear of `B` with more than one edge) is split off and every other block
/// follows its cut vertex.
pub fn even_split(
    h: &IntersectionParityGraph,
    nodes: &BTreeSet<usize>,
) -> Result<(BTreeSet<usize>, BTreeSet<usize>), UncrossError> {
    if h.parity(nodes) != 0 || !h.graph.is_connected_subset(nodes) {
        return Err(UncrossError::BadParity);
    }
    let local: Vec<usize> = nodes.iter().copied().collect();
    let index: BTreeMap<usize, usize> = local.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let sub = AbstractGraph::from_edges(
        local.len(),
        h.graph.edges().into_iter().filter_map(|(a, b)| Some((*index.get(&a)?, *index.get(&b)?))),
    );
    let (p, q) = split_local(&sub);
    let lift = |s: BTreeSet<usize>| -> BTreeSet<usize> { s.into_iter().map(|i| local[i]).collect() };
    let (p, q) = (lift(p), lift(q));
    let ok = |s: &BTreeSet<usize>| h.graph.is_connected_subset(s) && h.parity(s) == 1;
    assert!(ok(&p) && ok(&q) && p.union(&q).count() == nodes.len(), "even split failed validation");
    Ok((p, q))
}

fn split_local(sub: &AbstractGraph) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let blocks = sub.biconnected_components();
    let tree = sub.block_cut_tree();
    let odd: Vec<usize> =
        (0..blocks.len()).filter(|&b| (blocks[b].nodes.len() + blocks[b].edges.len() + 1) % 2 == 1).collect();
    // graph nodes covered by the part of the tree reached from `via`
    // without passing through `from`
    let hanging = |from: BlockCutNode, via: BlockCutNode| -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([from, via]);
        let mut stack = vec![via];
        let mut out = BTreeSet::new();
        while let Some(t) = stack.pop() {
            match t {
                BlockCutNode::Block(b) => out.extend(blocks[b].nodes.iter().copied()),
                BlockCutNode::Cut(c) => {
                    out.insert(c);
                }
            }
            for u in tree.neighbors(t) {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        out
    };
    if odd.len() >= 3 {
        let mut best: Option<Vec<BlockCutNode>> = None;
        for (i, &a) in odd.iter().enumerate() {
            for &b in &odd[i + 1..] {
                let path = tree_path(&tree, BlockCutNode::Block(a), BlockCutNode::Block(b));
                if best.as_ref().is_none_or(|p| path.len() > p.len()) {
                    best = Some(path);
                }
            }
        }
        let path = best.unwrap();
        let n = path.len();
        return (hanging(path[0], path[1]), hanging(path[n - 1], path[n - 2]));
    }
    assert_eq!(odd.len(), 1, "an even component has an odd number of odd blocks");
    let b = odd[0];
    let bnodes: BTreeSet<usize> = blocks[b].nodes.iter().copied().collect();
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &(u, v) in &blocks[b].edges {
        *degree.entry(u).or_default() += 1;
        *degree.entry(v).or_default() += 1;
    }
    let piece: BTreeSet<usize> = match bnodes.iter().find(|v| degree.get(v).copied().unwrap_or(0) % 2 == 0) {
        Some(&v) => BTreeSet::from([v]),
        None => {
            let ears = block_ears(&blocks[b].edges, &bnodes);
            let ear = ears.iter().rev().find(|e| e.len() >= 3).expect("an odd block is not a single edge");
            BTreeSet::from([ear[0], ear[1]])
        }
    };
    let mut rest: BTreeSet<usize> = bnodes.difference(&piece).copied().collect();
    let mut part = piece.clone();
    for &c in &bnodes {
        if !tree.cut_vertices.contains(&c) {
            continue;
        }
        for nb in tree.neighbors(BlockCutNode::Cut(c)) {
            if nb != BlockCutNode::Block(b) {
                let hang = hanging(BlockCutNode::Cut(c), nb);
                if piece.contains(&c) {
                    part.extend(hang);
                } else {
                    rest.extend(hang);
                }
            }
        }
    }
    (rest, part)
}

fn block_ears(edges: &[(usize, usize)], bnodes: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let local: Vec<usize> = bnodes.iter().copied().collect();
    let index: BTreeMap<usize, usize> = local.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let g = AbstractGraph::from_edges(local.len(), edges.iter().map(|(a, b)| (index[a], index[b])));
    let ears = g.open_ear_decomposition().expect("blocks with a cycle are biconnected");
    ears.into_iter().map(|e| e.into_iter().map(|i| local[i]).collect()).collect()
}

fn tree_path(tree: &BlockCutTree, a: BlockCutNode, b: BlockCutNode) -> Vec<BlockCutNode> {
    let mut prev: BTreeMap<BlockCutNode, BlockCutNode> = BTreeMap::from([(a, a)]);
    let mut queue = VecDeque::from([a]);
    while let Some(t) = queue.pop_front() {
        for u in tree.neighbors(t) {
            if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(u) {
                e.insert(t);
                queue.push_back(u);
            }
        }
    }
    let mut path = vec![b];
    let mut t = b;
    while t != a {
        t = prev[&t];
        path.push(t);
    }
    path.reverse();
    path
}

/// Shared state for one uncrossing run.
pub struct UncrossContext<'a> {
    pub g: &'a PlanarGraph,
    pub x: &'a FractionalPoint,
    pub f: &'a VertexMap,
    pub c1: Rational,
    pub observer: &'a dyn Observer,
}

impl UncrossContext<'_> {
    fn n0(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.f.original_count()))
    }

    fn preimage(&self, s: &BTreeSet<VertexId>) -> Rational {
        Rational::from_integer(BigInt::from(self.f.set_preimage_size(s)))
    }

    fn below(&self, s: &BTreeSet<VertexId>, factor: &Rational) -> bool {
        self.preimage(s) < factor * &self.c1 * self.n0()
    }

    fn early_exit(&self, s: BTreeSet<VertexId>) -> EarlyExit {
        let original = self.f.lift(&s);
        EarlyExit { current: s, original }
    }

    fn tight(&self, s: BTreeSet<VertexId>) -> TightOddSet {
        let certificate = self.x.cut_value(self.g, &s);
        assert!(s.len() % 2 == 1 && certificate.is_one(), "uncrossing produced a set that is not tight and odd");
        TightOddSet { set: s, certificate }
    }

    /// Passes when the union is small; otherwise returns a balanced viable
    /// set built from it.
    pub fn check_balanced_viable(&self, h: &IntersectionParityGraph, nodes: &BTreeSet<usize>) -> Result<(), EarlyExit> {
        let union = h.union(nodes);
        if self.below(&union, &Rational::one()) {
            return Ok(());
        }
        let one_minus = Rational::one() - &self.c1;
        if self.preimage(&union) <= &one_minus * self.n0() {
            return Err(self.early_exit(union));
        }
        // BFS order keeps every prefix connected; stop once the prefix
        // reaches 2 c1 |V0|
        let start = *nodes.iter().next().unwrap();
        let mut prefix = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        let mut order = vec![start];
        while let Some(v) = queue.pop_front() {
            for &u in h.graph.neighbors(v) {
                if nodes.contains(&u) && prefix.insert(u) {
                    order.push(u);
                    queue.push_back(u);
                }
            }
        }
        let two = Rational::from_integer(BigInt::from(2));
        let mut cur = BTreeSet::new();
        for v in order {
            cur.insert(v);
            if !self.below(&h.union(&cur), &two) {
                let set = if h.parity(&cur) == 1 {
                    h.union(&cur)
                } else {
                    let (a, b) = even_split(h, &cur).expect("connected even prefix splits");
                    let (ua, ub) = (h.union(&a), h.union(&b));
                    if self.f.set_preimage_size(&ua) >= self.f.set_preimage_size(&ub) {
                        ua
                    } else {
                        ub
                    }
                };
                return Err(self.early_exit(set));
            }
        }
        unreachable!("the whole union exceeds 2 c1 |V0|")
    }

    /// Divide and conquer over the sets ordered by smallest vertex; the two
    /// halves run in parallel and the left one wins an early exit.
    pub fn uncross(&self, mut sets: Vec<TightOddSet>) -> Result<Vec<TightOddSet>, EarlyExit> {
        sets.sort_by_key(|s| s.min_vertex());
        self.uncross_sorted(sets)
    }

    fn uncross_sorted(&self, mut sets: Vec<TightOddSet>) -> Result<Vec<TightOddSet>, EarlyExit> {
        if sets.len() <= 1 {
            return Ok(sets);
        }
        let right = sets.split_off(sets.len() / 2);
        let (l, r) = rayon::join(|| self.uncross_sorted(sets), || self.uncross_sorted(right));
        self.merge_uncross(l?, r?)
    }

    /// Uncrosses two families that are each pairwise disjoint.
    pub fn merge_uncross(&self, rs: Vec<TightOddSet>, cs: Vec<TightOddSet>) -> Result<Vec<TightOddSet>, EarlyExit> {
        let mut cs: Vec<BTreeSet<VertexId>> = cs.into_iter().map(|t| t.set).collect();
        let rs: Vec<BTreeSet<VertexId>> = rs.into_iter().map(|t| t.set).collect();
        for c in cs.iter_mut() {
            let even: Vec<&BTreeSet<VertexId>> = rs
                .iter()
                .filter(|r| {
                    let k = r.intersection(c).count();
                    k > 0 && k % 2 == 0
                })
                .collect();
            for r in even {
                c.retain(|v| !r.contains(v));
            }
            self.tight(c.clone());
        }
        let mut all = rs;
        all.extend(cs);
        let h = IntersectionParityGraph::new(all);
        assert!(
            h.is_bipartite() && h.is_triangle_free(),
            "intersection parity graph must be bipartite and triangle-free"
        );
        assert!(h.has_no_triple_intersections(), "sets must not meet three at a time");
        self.observer.parity_graph(&h);
        let mut out = Vec::new();
        for comp in h.graph.connected_components() {
            let nodes: BTreeSet<usize> = comp.into_iter().collect();
            if h.parity(&nodes) == 1 {
                self.check_balanced_viable(&h, &nodes)?;
                out.push(self.tight(h.union(&nodes)));
            } else {
                let (a, b) = even_split(&h, &nodes).expect("even component splits");
                self.check_balanced_viable(&h, &a)?;
                self.check_balanced_viable(&h, &b)?;
                let ua = h.union(&a);
                let ub: BTreeSet<VertexId> = h.union(&b).difference(&ua).copied().collect();
                out.push(self.tight(ua));
                out.push(self.tight(ub));
            }
        }
        Ok(out)
    }
}

/// Checks that sets are pairwise disjoint.
pub fn pairwise_disjoint(sets: &[TightOddSet]) -> bool {
    let mut seen = BTreeSet::new();
    sets.iter().all(|s| s.set.iter().all(|v| seen.insert(*v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::EdgeId;
    use crate::observer::NoopObserver;
    use crate::pfaffian::avg_point_with_counts;

    fn vs(ids: &[u32]) -> BTreeSet<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    fn ns(ids: &[usize]) -> BTreeSet<usize> {
        ids.iter().copied().collect()
    }

    // C8 with the point of the matching {01, 23, 45, 67}
    fn c8_matching() -> (PlanarGraph, FractionalPoint) {
        let g = fixtures::cycle(8);
        let x = FractionalPoint::indicator([0, 2, 4, 6].map(EdgeId));
        (g, x)
    }

    fn tight(g: &PlanarGraph, x: &FractionalPoint, ids: &[u32]) -> TightOddSet {
        let set = vs(ids);
        assert!(is_tight_odd(g, x, &set));
        TightOddSet { certificate: x.cut_value(g, &set), set }
    }

    fn parity_graph(n: usize, edges: &[(usize, usize)]) -> IntersectionParityGraph {
        IntersectionParityGraph {
            sets: vec![BTreeSet::new(); n],
            graph: AbstractGraph::from_edges(n, edges.iter().copied()),
        }
    }

    #[test]
    fn even_split_rejects_odd_parity() {
        let h = parity_graph(2, &[(0, 1)]);
        assert_eq!(even_split(&h, &ns(&[0, 1])), Err(UncrossError::BadParity));
        let h = parity_graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(even_split(&h, &ns(&[0, 1, 2, 3])), Err(UncrossError::BadParity));
    }

    #[test]
    fn even_split_single_odd_block() {
        // a 4-cycle has |V| + |E| = 8
        let h = parity_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let (a, b) = even_split(&h, &ns(&[0, 1, 2, 3])).unwrap();
        assert_eq!(a.union(&b).count(), 4);
    }

    #[test]
    fn even_split_all_small_graphs() {
        // every connected graph of even parity on at most 6 nodes
        for n in 2..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<(usize, usize)> =
                    pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
                let h = parity_graph(n, &edges);
                let all: BTreeSet<usize> = (0..n).collect();
                if !h.graph.is_connected_subset(&all) || h.parity(&all) != 0 {
                    continue;
                }
                let (a, b) = even_split(&h, &all).unwrap();
                assert!(h.graph.is_connected_subset(&a) && h.graph.is_connected_subset(&b));
                assert_eq!((h.parity(&a), h.parity(&b)), (1, 1));
                assert_eq!(a.union(&b).count(), n);
            }
        }
    }

    #[test]
    fn single_set_is_returned() {
        let (g, x) = c8_matching();
        let f = VertexMap::identity(&g);
        let ctx = UncrossContext { g: &g, x: &x, f: &f, c1: Rational::one(), observer: &NoopObserver };
        let s = tight(&g, &x, &[1, 2, 3]);
        assert_eq!(ctx.uncross(vec![s.clone()]).unwrap(), vec![s]);
    }

    #[test]
    fn odd_intersection_gives_union() {
        let (g, x) = c8_matching();
        let f = VertexMap::identity(&g);
        let ctx = UncrossContext { g: &g, x: &x, f: &f, c1: Rational::one(), observer: &NoopObserver };
        let out = ctx.uncross(vec![tight(&g, &x, &[3, 4, 5]), tight(&g, &x, &[1, 2, 3])]).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].set, vs(&[1, 2, 3, 4, 5]));
    }

    #[test]
    fn disjoint_sets_unchanged() {
        let (g, x) = c8_matching();
        let f = VertexMap::identity(&g);
        let ctx = UncrossContext { g: &g, x: &x, f: &f, c1: Rational::one(), observer: &NoopObserver };
        let a = tight(&g, &x, &[1, 2, 3]);
        let b = tight(&g, &x, &[5, 6, 7]);
        let out = ctx.merge_uncross(vec![a.clone()], vec![b.clone()]).unwrap();
        assert_eq!(out, vec![a, b]);
    }

    #[test]
    fn even_intersection_is_subtracted() {
        let (g, x) = c8_matching();
        let f = VertexMap::identity(&g);
        let ctx = UncrossContext { g: &g, x: &x, f: &f, c1: Rational::one(), observer: &NoopObserver };
        let out = ctx.merge_uncross(vec![tight(&g, &x, &[1, 2, 3])], vec![tight(&g, &x, &[2, 3, 4, 5, 6])]).unwrap();
        let sets: Vec<_> = out.into_iter().map(|t| t.set).collect();
        assert_eq!(sets, vec![vs(&[1, 2, 3]), vs(&[4, 5, 6])]);
    }

    #[test]
    fn odd_chain_of_three_merges() {
        let (g, x) = c8_matching();
        let f = VertexMap::identity(&g);
        let ctx = UncrossContext { g: &g, x: &x, f: &f, c1: Rational::one(), observer: &NoopObserver };
        let sets = vec![tight(&g, &x, &[1, 2, 3]), tight(&g, &x, &[3, 4, 5]), tight(&g, &x, &[5, 6, 7])];
        let out = ctx.uncross(sets).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].set, vs(&[1, 2, 3, 4, 5, 6, 7]));
    }

    #[test]
    fn large_union_exits_early() {
        let (g, x) = c8_matching();
        let f = VertexMap::identity(&g);
        // threshold c1 |V0| = 3: the union of five vertices is balanced
        let c1 = Rational::new(BigInt::from(3), BigInt::from(8));
        let ctx = UncrossContext { g: &g, x: &x, f: &f, c1, observer: &NoopObserver };
        let h = IntersectionParityGraph::new(vec![vs(&[1]), vs(&[1, 2, 3])]);
        assert!(ctx.check_balanced_viable(&h, &ns(&[0])).is_ok());
        let err = ctx.uncross(vec![tight(&g, &x, &[1, 2, 3]), tight(&g, &x, &[3, 4, 5])]).unwrap_err();
        assert_eq!(err.original, vs(&[1, 2, 3, 4, 5]));
    }

    #[test]
    fn walk_blocked_by_edge_loss_has_no_violation() {
        let g = fixtures::cycle(4);
        let (x, counts) = avg_point_with_counts(&g, &BTreeMap::new()).unwrap();
        let walk = EvenWalk::cycle(&g, VertexId(0), (0..4).map(EdgeId).collect()).unwrap();
        assert_eq!(find_blocking_odd_set(&g, &x, &walk, &counts.total), Err(UncrossError::NoViolation));
    }

    #[test]
    fn prism_square_blocked_by_triangle() {
        // rungs cost 1: the three cheapest matchings average to 1/3 everywhere
        let g = fixtures::prism();
        let (x, counts) = avg_point_with_counts(&g, &fixtures::weights(&[(6, 1), (7, 1), (8, 1)])).unwrap();
        assert!(g.edge_ids().all(|e| x.get(e) == Rational::new(BigInt::from(1), BigInt::from(3))));
        let walk = EvenWalk::cycle(&g, VertexId(0), [6, 3, 7, 0].map(EdgeId).to_vec()).unwrap();
        let s = find_blocking_odd_set(&g, &x, &walk, &counts.total).unwrap();
        assert_eq!(s.set, vs(&[0, 1, 2]));
        assert!(s.certificate.is_one());
        assert_eq!(alternating_vector(&walk).unwrap().cut_value(&g, &s.set), -2);
    }
}
