//! Edge-disjoint even walks from planar faces.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{AbstractGraph, EdgeId, Face, PlanarGraph, VertexId};
use crate::polytope::EvenWalk;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("odd number of tokens")]
    OddTokenCount,
    #[error("no even walks found")]
    NoWalksFound,
}

/// Faces longer than this are never selected.
pub const MAX_FACE_DEGREE: usize = 24;

/// Greedy maximal independent set, scanning nodes by ascending id.
pub fn maximal_independent_set(h: &AbstractGraph) -> BTreeSet<usize> {
    let mut chosen = BTreeSet::new();
    let mut blocked = vec![false; h.node_count()];
    for v in 0..h.node_count() {
        if !blocked[v] {
            chosen.insert(v);
            blocked[v] = true;
            for &u in h.neighbors(v) {
                blocked[u] = true;
            }
        }
    }
    chosen
}

/// Pairwise edge-disjoint faces: faces of degree at most
/// [`MAX_FACE_DEGREE`] whose boundary is a simple cycle, thinned to an
/// independent set of the dual.
pub fn edge_disjoint_faces(g: &PlanarGraph) -> Result<Vec<Face>, WalkError> {
    if !g.is_connected() {
        return Err(WalkError::PreconditionViolated("graph is disconnected".into()));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 1) {
        return Err(WalkError::PreconditionViolated(format!("vertex {v} has degree 1")));
    }
    let deg2 = g.vertices().filter(|&v| g.degree(v) == 2).count();
    if 2 * deg2 > g.vertex_count() {
        return Err(WalkError::PreconditionViolated(format!("{deg2} vertices of degree 2")));
    }
    Ok(select_disjoint_faces(g))
}

/// [`edge_disjoint_faces`] without the precondition checks.
pub fn select_disjoint_faces(g: &PlanarGraph) -> Vec<Face> {
    let faces: Vec<Face> =
        g.faces().into_iter().filter(|f| f.len() <= MAX_FACE_DEGREE && f.is_simple_cycle(g)).collect();
    let mut by_edge: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for e in f.edges() {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let mut h = AbstractGraph::new(faces.len());
    for list in by_edge.values() {
        if let [a, b] = list[..] {
            if a != b && !h.has_edge(a, b) {
                h.add_edge(a, b);
            }
        }
    }
    let keep = maximal_independent_set(&h);
    faces.into_iter().enumerate().filter(|(i, _)| keep.contains(i)).map(|(_, f)| f).collect()
}

/// Tokens paired along a tree; `paths[k]` runs from the node of token
/// `pairs[k].0` to the node of token `pairs[k].1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenPairing {
    pub pairs: Vec<(usize, usize)>,
    pub paths: Vec<Vec<usize>>,
}

/// Pairs tokens over a forest so that the connecting paths share no edge.
/// Each subtree hands at most one unpaired token to its parent, so a tree
/// edge is used exactly when the subtree below it holds an odd number of
/// tokens. `tokens[i]` is the node holding token `i`.
pub fn tree_pair_tokens(tree: &AbstractGraph, tokens: &[usize]) -> Result<TokenPairing, WalkError> {
    let n = tree.node_count();
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &v) in tokens.iter().enumerate() {
        at[v].push(i);
    }
    let mut pairing = TokenPairing { pairs: Vec::new(), paths: Vec::new() };
    let mut visited = vec![false; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        // iterative post-order
        let mut order = Vec::new();
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![root];
        visited[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &u in tree.neighbors(v) {
                if !visited[u] {
                    visited[u] = true;
                    parent[u] = v;
                    stack.push(u);
                }
            }
        }
        // carry[v]: unpaired token in v's subtree and its path up to v
        let mut carry: BTreeMap<usize, (usize, Vec<usize>)> = BTreeMap::new();
        for &v in order.iter().rev() {
            let mut here: Vec<(usize, Vec<usize>)> = at[v].iter().map(|&t| (t, vec![v])).collect();
            let mut children: Vec<usize> =
                tree.neighbors(v).iter().copied().filter(|&u| parent[u] == v && u != root).collect();
            children.sort();
            for c in children {
                if let Some((t, mut path)) = carry.remove(&c) {
                    path.push(v);
                    here.push((t, path));
                }
            }
            let mut it = here.into_iter();
            while let Some((a, pa)) = it.next() {
                match it.next() {
                    Some((b, pb)) => {
                        let mut path = pa;
                        path.extend(pb.into_iter().rev().skip(1));
                        pairing.pairs.push((a, b));
                        pairing.paths.push(path);
                    }
                    None => {
                        carry.insert(v, (a, pa));
                    }
                }
            }
        }
        if carry.contains_key(&root) {
            return Err(WalkError::OddTokenCount);
        }
    }
    Ok(pairing)
}

fn face_cycle_from(g: &PlanarGraph, f: &Face, v: VertexId) -> Vec<EdgeId> {
    let k = f.darts.iter().position(|&d| g.dart_tail(d) == v).expect("vertex on face");
    (0..f.len()).map(|i| f.darts[(k + i) % f.len()].edge).collect()
}

fn face_walk(g: &PlanarGraph, f: &Face) -> EvenWalk {
    let start = g.dart_tail(f.darts[0]);
    EvenWalk::cycle(g, start, f.edges().collect()).expect("simple even face is an even walk")
}

/// Edge-disjoint even walks. When at least half of the selected faces are
/// even they are returned as cycles. Otherwise odd faces are paired over a
/// spanning forest, each connecting path is cut down to the part between
/// its last visit to the first face and the next visit to the second, and a
/// maximal conflict-free subset of the short walks is kept. Faces whose
/// boundary runs along a bridge are skipped: the bridge would be traversed
/// twice and its two coefficients could cancel.
pub fn find_even_walks(g: &PlanarGraph) -> Result<Vec<EvenWalk>, WalkError> {
    let faces: Vec<Face> =
        select_disjoint_faces(g).into_iter().filter(|f| f.edges().collect::<BTreeSet<_>>().len() == f.len()).collect();
    let (even, odd): (Vec<&Face>, Vec<&Face>) = faces.iter().partition(|f| f.len() % 2 == 0);
    if !even.is_empty() && 2 * even.len() >= faces.len() {
        return Ok(even.iter().map(|f| face_walk(g, f)).collect());
    }
    let candidates = paired_odd_faces(g, &odd);
    if candidates.is_empty() {
        if even.is_empty() {
            return Err(WalkError::NoWalksFound);
        }
        return Ok(even.iter().map(|f| face_walk(g, f)).collect());
    }
    let limit = (4 * g.edge_count()).div_ceil(faces.len().max(1));
    let short: Vec<EvenWalk> = candidates.iter().filter(|w| w.len() <= limit).cloned().collect();
    let pool = if short.is_empty() { candidates } else { short };
    let mut by_edge: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
    for (i, w) in pool.iter().enumerate() {
        for e in w.edge_set() {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let mut h = AbstractGraph::new(pool.len());
    for list in by_edge.values() {
        for (k, &a) in list.iter().enumerate() {
            for &b in &list[k + 1..] {
                if !h.has_edge(a, b) {
                    h.add_edge(a, b);
                }
            }
        }
    }
    let keep = maximal_independent_set(&h);
    Ok(pool.into_iter().enumerate().filter(|(i, _)| keep.contains(i)).map(|(_, w)| w).collect())
}

fn paired_odd_faces(g: &PlanarGraph, odd: &[&Face]) -> Vec<EvenWalk> {
    let (ids, index) = {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        (ids, index)
    };
    let forest = g.spanning_forest();
    let mut tree = AbstractGraph::new(ids.len());
    let mut tree_edge = BTreeMap::new();
    for &e in &forest {
        let [u, v] = g.endpoints(e);
        tree.add_edge(index[&u], index[&v]);
        tree_edge.insert((u.min(v), u.max(v)), e);
    }
    // one token per odd face at its smallest vertex; drop the last face of
    // each component holding an odd number of them
    let comps = tree.connected_components();
    let mut comp_of = vec![0; ids.len()];
    for (c, nodes) in comps.iter().enumerate() {
        for &v in nodes {
            comp_of[v] = c;
        }
    }
    let token_vertex: Vec<VertexId> = odd.iter().map(|f| *f.vertices(g).iter().min().unwrap()).collect();
    let mut per_comp: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, v) in token_vertex.iter().enumerate() {
        per_comp.entry(comp_of[index[v]]).or_default().push(i);
    }
    let mut used: Vec<usize> = Vec::new();
    for list in per_comp.values() {
        let take = list.len() - list.len() % 2;
        used.extend_from_slice(&list[..take]);
    }
    used.sort();
    let tokens: Vec<usize> = used.iter().map(|&i| index[&token_vertex[i]]).collect();
    let pairing = tree_pair_tokens(&tree, &tokens).expect("every component holds an even number of tokens");
    let mut walks = Vec::new();
    for ((a, b), path) in pairing.pairs.iter().zip(&pairing.paths) {
        let (fa, fb) = (odd[used[*a]], odd[used[*b]]);
        let va: BTreeSet<VertexId> = fa.vertices(g).into_iter().collect();
        let vb: BTreeSet<VertexId> = fb.vertices(g).into_iter().collect();
        let verts: Vec<VertexId> = path.iter().map(|&i| ids[i]).collect();
        let i = verts.iter().rposition(|v| va.contains(v)).expect("path starts on the first face");
        let j = (i..verts.len()).find(|&j| vb.contains(&verts[j])).expect("path ends on the second face");
        let mut path_edges = Vec::new();
        for k in i..j {
            let (u, v) = (verts[k], verts[k + 1]);
            path_edges.push(tree_edge[&(u.min(v), u.max(v))]);
        }
        let c1 = face_cycle_from(g, fa, verts[i]);
        let c2 = face_cycle_from(g, fb, verts[j]);
        if let Ok(w) = EvenWalk::two_cycles(g, verts[i], &c1, &path_edges, &c2) {
            walks.push(w);
        }
    }
    walks
}

/// True when no edge is used by two walks.
pub fn pairwise_edge_disjoint(walks: &[EvenWalk]) -> bool {
    let mut seen = BTreeSet::new();
    walks.iter().all(|w| w.edge_set().into_iter().all(|e| seen.insert(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::polytope::{alternating_vector, WalkKind};

    #[test]
    fn independent_sets() {
        assert_eq!(maximal_independent_set(&AbstractGraph::new(5)).len(), 5);
        let mut k5 = AbstractGraph::new(5);
        for a in 0..5 {
            for b in a + 1..5 {
                k5.add_edge(a, b);
            }
        }
        assert_eq!(maximal_independent_set(&k5).len(), 1);
        let p4 = AbstractGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(maximal_independent_set(&p4), BTreeSet::from([0, 2]));
    }

    #[test]
    fn disjoint_faces() {
        assert_eq!(
            edge_disjoint_faces(&cycle(4)),
            Err(WalkError::PreconditionViolated("4 vertices of degree 2".into()))
        );
        assert_eq!(select_disjoint_faces(&cycle(4)).len(), 1);
        let fs = edge_disjoint_faces(&k4()).unwrap();
        assert!(!fs.is_empty());
        let fs = select_disjoint_faces(&grid(5, 5));
        let mut seen = BTreeSet::new();
        assert!(fs.iter().all(|f| f.edges().all(|e| seen.insert(e))));
    }

    #[test]
    fn token_pairing() {
        let path = AbstractGraph::from_edges(3, [(0, 1), (1, 2)]);
        let p = tree_pair_tokens(&path, &[0, 2]).unwrap();
        assert_eq!(p.pairs, vec![(0, 1)]);
        assert_eq!(p.paths, vec![vec![0, 1, 2]]);
        let star = AbstractGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        let p = tree_pair_tokens(&star, &[1, 3]).unwrap();
        assert_eq!(p.paths, vec![vec![1, 0, 3]]);
        assert_eq!(tree_pair_tokens(&star, &[1]), Err(WalkError::OddTokenCount));
    }

    #[test]
    fn walks_on_small_graphs() {
        let w = find_even_walks(&cycle(4)).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].kind, WalkKind::EvenCycle);

        let b = bowtie();
        let w = find_even_walks(&b).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].len(), 6);
        assert!(w[0].path_edges.is_empty());
        alternating_vector(&w[0]).unwrap();

        let g = grid(6, 6);
        let w = find_even_walks(&g).unwrap();
        assert!(w.len() >= 4);
        assert!(pairwise_edge_disjoint(&w));
    }

    #[test]
    fn odd_faces_get_paired() {
        let g = prism();
        for w in find_even_walks(&g).unwrap() {
            w.validate(&g).unwrap();
            let chi = alternating_vector(&w).unwrap();
            assert!(g.vertices().all(|v| chi.degree_value(&g, v) == 0));
        }
    }
}
