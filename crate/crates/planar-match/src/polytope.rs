//! Points of the perfect matching polytope, even walks and rotations.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{EdgeId, EdgeWeights, PlanarGraph, VertexId};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("malformed walk: {0}")]
    MalformedWalk(String),
    #[error("edge {0} is outside the support of the point")]
    EdgeOutsideSupport(EdgeId),
}

/// Exact rational vector over edges. Missing entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FractionalPoint {
    value: BTreeMap<EdgeId, Rational>,
}

impl FractionalPoint {
    pub fn from_map(mut value: BTreeMap<EdgeId, Rational>) -> Self {
        value.retain(|_, v| !v.is_zero());
        FractionalPoint { value }
    }

    /// Indicator vector of an edge set.
    pub fn indicator(edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut value = BTreeMap::new();
        for e in edges {
            *value.entry(e).or_insert_with(Rational::zero) += Rational::one();
        }
        Self::from_map(value)
    }

    pub fn get(&self, e: EdgeId) -> Rational {
        self.value.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn in_support(&self, e: EdgeId) -> bool {
        self.value.contains_key(&e)
    }

    pub fn support(&self) -> BTreeSet<EdgeId> {
        self.value.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, &Rational)> {
        self.value.iter().map(|(&e, v)| (e, v))
    }

    /// `x(δ(v))`.
    pub fn degree_value(&self, g: &PlanarGraph, v: VertexId) -> Rational {
        g.incident(v).map(|e| self.get(e)).sum()
    }

    /// `x(δ(S))`.
    pub fn cut_value(&self, g: &PlanarGraph, s: &BTreeSet<VertexId>) -> Rational {
        g.cut_edges(s).into_iter().map(|e| self.get(e)).sum()
    }

    /// Restriction to the edges present in `g`.
    pub fn restrict(&self, g: &PlanarGraph) -> Self {
        FractionalPoint {
            value: self.value.iter().filter(|(e, _)| g.has_edge(**e)).map(|(&e, v)| (e, v.clone())).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkKind {
    EvenCycle,
    TwoOddCycles,
}

/// Closed walk of even length: a simple even cycle, or an odd cycle, a
/// path, a second odd cycle and the path back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenWalk {
    pub start: VertexId,
    pub edges: Vec<EdgeId>,
    pub kind: WalkKind,
    pub path_edges: BTreeSet<EdgeId>,
}

impl EvenWalk {
    /// Simple even cycle starting at `start` and following `edges`.
    pub fn cycle(g: &PlanarGraph, start: VertexId, edges: Vec<EdgeId>) -> Result<Self, PolytopeError> {
        let w = EvenWalk { start, edges, kind: WalkKind::EvenCycle, path_edges: BTreeSet::new() };
        w.validate(g)?;
        Ok(w)
    }

    /// Odd cycle `c1` closed at `v1`, path from `v1` to `v2`, odd cycle `c2`
    /// closed at `v2`, then the path reversed.
    pub fn two_cycles(
        g: &PlanarGraph,
        v1: VertexId,
        c1: &[EdgeId],
        path: &[EdgeId],
        c2: &[EdgeId],
    ) -> Result<Self, PolytopeError> {
        let mut edges = c1.to_vec();
        edges.extend_from_slice(path);
        edges.extend_from_slice(c2);
        edges.extend(path.iter().rev());
        let w = EvenWalk { start: v1, edges, kind: WalkKind::TwoOddCycles, path_edges: path.iter().copied().collect() };
        w.validate(g)?;
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first_edge(&self) -> EdgeId {
        self.edges[0]
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edges.iter().copied().collect()
    }

    /// Vertices visited, starting and ending at `start`.
    pub fn vertex_sequence(&self, g: &PlanarGraph) -> Result<Vec<VertexId>, PolytopeError> {
        let mut seq = vec![self.start];
        let mut at = self.start;
        for &e in &self.edges {
            let [a, b] =
                g.try_endpoints(e).ok_or_else(|| PolytopeError::MalformedWalk(format!("edge {e} not in graph")))?;
            at = if a == at {
                b
            } else if b == at {
                a
            } else {
                return Err(PolytopeError::MalformedWalk(format!("edge {e} does not touch vertex {at}")));
            };
            seq.push(at);
        }
        Ok(seq)
    }

    pub fn validate(&self, g: &PlanarGraph) -> Result<(), PolytopeError> {
        let bad = |m: &str| Err(PolytopeError::MalformedWalk(m.to_string()));
        if self.edges.is_empty() || self.edges.len() % 2 == 1 {
            return bad("walk length must be positive and even");
        }
        let seq = self.vertex_sequence(g)?;
        if seq.last() != Some(&self.start) {
            return bad("walk does not close");
        }
        let mut uses: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for &e in &self.edges {
            *uses.entry(e).or_default() += 1;
        }
        match self.kind {
            WalkKind::EvenCycle => {
                let inner: BTreeSet<_> = seq[..seq.len() - 1].iter().collect();
                if !self.path_edges.is_empty() || inner.len() != self.edges.len() {
                    return bad("even cycle must be simple");
                }
            }
            WalkKind::TwoOddCycles => {
                for (e, &k) in &uses {
                    let want = if self.path_edges.contains(e) { 2 } else { 1 };
                    if k != want {
                        return bad("path edges must be used twice and cycle edges once");
                    }
                }
                if self.path_edges.iter().any(|e| !uses.contains_key(e)) {
                    return bad("path edge missing from traversal");
                }
                let cycle_len = self.edges.len() - 2 * self.path_edges.len();
                let p = self.path_edges.len();
                // layout: c1, path, c2, path reversed
                let c1 = (1..=cycle_len)
                    .find(|&i| seq[i] == self.start && !self.path_edges.contains(&self.edges[i - 1]))
                    .filter(|&i| i % 2 == 1);
                let Some(c1) = c1 else {
                    return bad("first cycle must be odd and close at the start");
                };
                if self.edges[c1..c1 + p].iter().any(|e| !self.path_edges.contains(e)) {
                    return bad("path must follow the first cycle");
                }
                let c2 = cycle_len - c1;
                if c2.is_multiple_of(2) || seq[c1 + p] != seq[c1 + p + c2] {
                    return bad("second cycle must be odd and closed");
                }
                if self.edges[..c1].iter().any(|e| self.path_edges.contains(e))
                    || self.edges[c1 + p..c1 + p + c2].iter().any(|e| self.path_edges.contains(e))
                {
                    return bad("cycles must avoid path edges");
                }
            }
        }
        Ok(())
    }
}

/// Signed indicator `χ_W`: the `i`-th traversed edge (from 1) contributes
/// `(-1)^i`, so path edges collect `±2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingVector {
    pub coef: BTreeMap<EdgeId, i64>,
}

impl AlternatingVector {
    pub fn get(&self, e: EdgeId) -> i64 {
        self.coef.get(&e).copied().unwrap_or(0)
    }

    pub fn cut_value(&self, g: &PlanarGraph, s: &BTreeSet<VertexId>) -> i64 {
        g.cut_edges(s).into_iter().map(|e| self.get(e)).sum()
    }

    pub fn degree_value(&self, g: &PlanarGraph, v: VertexId) -> i64 {
        g.incident(v).map(|e| self.get(e)).sum()
    }

    pub fn dot(&self, x: &FractionalPoint) -> Rational {
        self.coef.iter().map(|(&e, &c)| x.get(e) * BigInt::from(c)).sum()
    }
}

pub fn alternating_vector(w: &EvenWalk) -> Result<AlternatingVector, PolytopeError> {
    let mut coef: BTreeMap<EdgeId, i64> = BTreeMap::new();
    for (i, &e) in w.edges.iter().enumerate() {
        *coef.entry(e).or_default() += if i % 2 == 0 { -1 } else { 1 };
    }
    for (e, &c) in &coef {
        let want = if w.path_edges.contains(e) { 2 } else { 1 };
        if c.abs() != want {
            return Err(PolytopeError::MalformedWalk(format!("edge {e} has coefficient {c}")));
        }
    }
    Ok(AlternatingVector { coef })
}

/// `<w, χ_W>`.
pub fn circulation(w: &EdgeWeights, walk: &EvenWalk) -> Rational {
    let s: i128 = walk
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let x = w.get(e).copied().unwrap_or(0) as i128;
            if i % 2 == 0 {
                -x
            } else {
                x
            }
        })
        .sum();
    Rational::from_integer(BigInt::from(s))
}

/// `1 / (4 n m)`.
pub fn rotation_epsilon(n: usize, m: &BigUint) -> Rational {
    assert!(n >= 2 && !m.is_zero(), "rotation epsilon needs n >= 2 and m >= 1");
    Rational::new(BigInt::one(), BigInt::from(4u64 * n as u64) * BigInt::from(m.clone()))
}

/// `x + ε χ_W`. The result may leave the polytope.
pub fn rotate(x: &FractionalPoint, walk: &EvenWalk, eps: &Rational) -> Result<FractionalPoint, PolytopeError> {
    if let Some(&e) = walk.edges.iter().find(|e| !x.in_support(**e)) {
        return Err(PolytopeError::EdgeOutsideSupport(e));
    }
    let chi = alternating_vector(walk)?;
    let mut value = x.value.clone();
    for (&e, &c) in &chi.coef {
        let v = value.entry(e).or_insert_with(Rational::zero);
        *v += eps * BigInt::from(c);
    }
    Ok(FractionalPoint::from_map(value))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipMode {
    /// Enumerate every odd vertex subset; at most 16 vertices.
    Exhaustive,
    /// Minimum odd cut over a Gomory-Hu tree.
    CutBased,
}

pub const EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MembershipReport {
    pub negative: Vec<(EdgeId, Rational)>,
    pub degree: Vec<(VertexId, Rational)>,
    pub odd_sets: Vec<(BTreeSet<VertexId>, Rational)>,
    /// Tight odd sets (exhaustive mode only), each given by the smaller of
    /// its two sides, or the side holding the smallest vertex on a tie.
    pub tight_sets: Vec<BTreeSet<VertexId>>,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        self.negative.is_empty() && self.degree.is_empty() && self.odd_sets.is_empty()
    }
}

/// Checks `x >= 0`, the degree equalities and the odd-set inequalities.
pub fn check_membership(x: &FractionalPoint, g: &PlanarGraph, mode: MembershipMode) -> MembershipReport {
    let mut report = MembershipReport::default();
    for e in g.edge_ids() {
        let v = x.get(e);
        if v.is_negative() {
            report.negative.push((e, v));
        }
    }
    for v in g.vertices() {
        let d = x.degree_value(g, v);
        if !d.is_one() {
            report.degree.push((v, d));
        }
    }
    match mode {
        MembershipMode::Exhaustive => exhaustive_odd_sets(x, g, &mut report),
        MembershipMode::CutBased => {
            let caps: BTreeMap<EdgeId, Rational> = g.edge_ids().map(|e| (e, x.get(e).max(Rational::zero()))).collect();
            if let Some(cut) = crate::cuts::min_odd_cut_any(g, &caps) {
                if cut.weight < Rational::one() {
                    report.odd_sets.push((cut.side, cut.weight));
                }
            }
        }
    }
    report
}

fn exhaustive_odd_sets(x: &FractionalPoint, g: &PlanarGraph, report: &mut MembershipReport) {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    assert!(n <= EXHAUSTIVE_LIMIT, "exhaustive membership check limited to {EXHAUSTIVE_LIMIT} vertices");
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize, Rational)> = g.edges().map(|(e, u, v)| (index[&u], index[&v], x.get(e))).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for mask in 1..=full {
        if mask.count_ones() % 2 == 0 {
            continue;
        }
        let cut: Rational =
            edges.iter().filter(|(a, b, _)| ((mask >> a) & 1) != ((mask >> b) & 1)).map(|(_, _, v)| v.clone()).sum();
        let set = |m: u32| -> BTreeSet<VertexId> { (0..n).filter(|i| (m >> i) & 1 == 1).map(|i| ids[i]).collect() };
        if cut < Rational::one() {
            report.odd_sets.push((set(mask), cut));
        } else if cut.is_one() {
            let other = full & !mask;
            let keep = other == 0
                || mask.count_ones() < other.count_ones()
                || (mask.count_ones() == other.count_ones() && mask & 1 == 1);
            if keep {
                report.tight_sets.push(set(mask));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::pfaffian::avg_point;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn e(ids: &[u32]) -> Vec<EdgeId> {
        ids.iter().map(|&i| EdgeId(i)).collect()
    }

    fn set(ids: &[u32]) -> BTreeSet<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn cut_values() {
        let g = prism();
        let x = avg_point(&g, &EdgeWeights::new()).unwrap();
        assert_eq!(x.cut_value(&g, &set(&[0, 1, 2])), r(3, 2));
        assert_eq!(x.cut_value(&g, &g.vertex_set()), r(0, 1));
        let c4 = cycle(4);
        let x = avg_point(&c4, &EdgeWeights::new()).unwrap();
        assert_eq!(x.cut_value(&c4, &set(&[0])), r(1, 1));
        assert_eq!(x.degree_value(&c4, VertexId(2)), r(1, 1));
    }

    #[test]
    fn alternating_vectors() {
        let c4 = cycle(4);
        let w = EvenWalk::cycle(&c4, VertexId(0), e(&[0, 1, 2, 3])).unwrap();
        let chi = alternating_vector(&w).unwrap();
        assert_eq!(chi.coef.values().copied().collect::<Vec<_>>(), vec![-1, 1, -1, 1]);

        let b = bowtie();
        let w = EvenWalk::two_cycles(&b, VertexId(0), &e(&[0, 1, 2]), &[], &e(&[3, 4, 5])).unwrap();
        let chi = alternating_vector(&w).unwrap();
        assert!(chi.coef.values().all(|c| c.abs() == 1));
        assert!(b.vertices().all(|v| chi.degree_value(&b, v) == 0));

        let t = bridged_triangles();
        let w = EvenWalk::two_cycles(&t, VertexId(2), &e(&[2, 0, 1]), &e(&[6]), &e(&[3, 4, 5])).unwrap();
        let chi = alternating_vector(&w).unwrap();
        assert_eq!(chi.get(EdgeId(6)).abs(), 2);
        assert!(t.vertices().all(|v| chi.degree_value(&t, v) == 0));

        assert!(EvenWalk::cycle(&c4, VertexId(0), e(&[0, 1, 2])).is_err());
        assert!(EvenWalk::cycle(&c4, VertexId(0), e(&[0, 2, 1, 3])).is_err());
    }

    #[test]
    fn circulations() {
        let c4 = cycle(4);
        let w = EvenWalk::cycle(&c4, VertexId(0), e(&[0, 1, 2, 3])).unwrap();
        assert_eq!(circulation(&[(EdgeId(0), 1)].into(), &w), r(-1, 1));
        assert_eq!(circulation(&EdgeWeights::new(), &w), r(0, 1));
        assert_eq!(circulation(&[(EdgeId(1), 1)].into(), &w), r(1, 1));
    }

    #[test]
    fn epsilon_formula() {
        assert_eq!(rotation_epsilon(4, &BigUint::from(2u32)), r(1, 32));
        assert_eq!(rotation_epsilon(6, &BigUint::from(4u32)), r(1, 96));
        assert_eq!(rotation_epsilon(2, &BigUint::from(1u32)), r(1, 8));
    }

    #[test]
    fn rotations() {
        let c4 = cycle(4);
        let x = avg_point(&c4, &EdgeWeights::new()).unwrap();
        let w = EvenWalk::cycle(&c4, VertexId(0), e(&[0, 1, 2, 3])).unwrap();
        let y = rotate(&x, &w, &r(1, 32)).unwrap();
        assert_eq!(y.get(EdgeId(0)), r(15, 32));
        assert_eq!(y.get(EdgeId(1)), r(17, 32));
        assert!(c4.vertices().all(|v| y.degree_value(&c4, v) == r(1, 1)));
        assert_eq!(rotate(&x, &w, &r(0, 1)).unwrap(), x);

        let k = k4();
        let x = avg_point(&k, &EdgeWeights::new()).unwrap();
        // 4-cycle 0-1-2-3: edges 0 (01), 1 (12), 5 (23), 3 (03)
        let w = EvenWalk::cycle(&k, VertexId(0), e(&[0, 1, 5, 3])).unwrap();
        let y = rotate(&x, &w, &r(1, 3)).unwrap();
        assert_eq!(y.get(EdgeId(0)), r(0, 1));
        for t in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            assert!(y.cut_value(&k, &set(&t)) >= r(1, 1));
        }
        let z = FractionalPoint::indicator(e(&[0, 2]));
        assert_eq!(rotate(&z, &w, &r(1, 8)), Err(PolytopeError::EdgeOutsideSupport(EdgeId(1))));
    }

    #[test]
    fn membership() {
        let c4 = cycle(4);
        let x = avg_point(&c4, &EdgeWeights::new()).unwrap();
        assert!(check_membership(&x, &c4, MembershipMode::Exhaustive).is_member());
        assert!(check_membership(&x, &c4, MembershipMode::CutBased).is_member());
        let zero = FractionalPoint::default();
        let rep = check_membership(&zero, &c4, MembershipMode::Exhaustive);
        assert_eq!(rep.degree.len(), 4);
        let g = prism();
        let x = avg_point(&g, &EdgeWeights::new()).unwrap();
        let rep = check_membership(&x, &g, MembershipMode::Exhaustive);
        assert!(rep.is_member());
        assert_eq!(rep.tight_sets, (0..6).map(|v| set(&[v])).collect::<Vec<_>>());
    }
}
