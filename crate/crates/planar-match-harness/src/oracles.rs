//! Brute-force oracles. They share only the graph types with the library:
//! matchings are enumerated by backtracking, cuts by trying every vertex
//! subset, and all arithmetic on fractional points is redone here.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use planar_match::graph::{EdgeId, EdgeWeights, PlanarGraph, VertexId};
use planar_match::polytope::{EvenWalk, FractionalPoint};
use planar_match::Rational;
use thiserror::Error;

pub const MATCHING_LIMIT: usize = 20;
pub const SUBSET_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} oracle is limited to {limit} vertices, got {got}")]
    TooLarge { what: &'static str, limit: usize, got: usize },
}

fn limit(what: &'static str, limit: usize, g: &PlanarGraph) -> Result<(), OracleError> {
    if g.vertex_count() > limit {
        Err(OracleError::TooLarge { what, limit, got: g.vertex_count() })
    } else {
        Ok(())
    }
}

/// Everything the enumeration learns about the perfect matchings of a
/// weighted graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub count: u64,
    pub min_weight: Option<u64>,
    pub min_count: u64,
    /// Minimum-weight perfect matchings through each edge.
    pub per_edge: BTreeMap<EdgeId, u64>,
    /// One minimum-weight perfect matching, the first found.
    pub optimum: Option<BTreeSet<EdgeId>>,
}

struct Search<'a> {
    adj: Vec<Vec<(usize, EdgeId)>>,
    w: &'a EdgeWeights,
    covered: Vec<bool>,
    chosen: Vec<EdgeId>,
    out: Enumeration,
}

impl Search<'_> {
    fn run(&mut self, weight: u64) {
        let Some(v) = self.covered.iter().position(|c| !c) else {
            self.record(weight);
            return;
        };
        self.covered[v] = true;
        for k in 0..self.adj[v].len() {
            let (u, e) = self.adj[v][k];
            if self.covered[u] {
                continue;
            }
            self.covered[u] = true;
            self.chosen.push(e);
            self.run(weight + self.w.get(&e).copied().unwrap_or(0));
            self.chosen.pop();
            self.covered[u] = false;
        }
        self.covered[v] = false;
    }

    fn record(&mut self, weight: u64) {
        let out = &mut self.out;
        out.count += 1;
        match out.min_weight {
            Some(m) if weight > m => return,
            Some(m) if weight == m => {}
            _ => {
                out.min_weight = Some(weight);
                out.min_count = 0;
                out.per_edge.values_mut().for_each(|c| *c = 0);
                out.optimum = Some(self.chosen.iter().copied().collect());
            }
        }
        out.min_count += 1;
        for e in &self.chosen {
            *out.per_edge.get_mut(e).unwrap() += 1;
        }
    }
}

/// Enumerates every perfect matching by matching the lowest uncovered
/// vertex in all possible ways.
pub fn enumerate_perfect_matchings(g: &PlanarGraph, w: &EdgeWeights) -> Result<Enumeration, OracleError> {
    limit("matching enumeration", MATCHING_LIMIT, g)?;
    let index: BTreeMap<VertexId, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); index.len()];
    for (e, u, v) in g.edges() {
        adj[index[&u]].push((index[&v], e));
        adj[index[&v]].push((index[&u], e));
    }
    let mut s = Search {
        adj,
        w,
        covered: vec![false; index.len()],
        chosen: Vec::new(),
        out: Enumeration {
            count: 0,
            min_weight: None,
            min_count: 0,
            per_edge: g.edge_ids().map(|e| (e, 0)).collect(),
            optimum: None,
        },
    };
    s.run(0);
    Ok(s.out)
}

fn members(ids: &[VertexId], mask: u32) -> BTreeSet<VertexId> {
    ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect()
}

fn crossing(g: &PlanarGraph, inside: &BTreeSet<VertexId>) -> Vec<EdgeId> {
    g.edges().filter(|(_, u, v)| inside.contains(u) != inside.contains(v)).map(|(e, _, _)| e).collect()
}

/// Value of `cap` summed over the edges leaving `s`.
pub fn cut_value(g: &PlanarGraph, cap: &BTreeMap<EdgeId, Rational>, s: &BTreeSet<VertexId>) -> Rational {
    crossing(g, s).into_iter().filter_map(|e| cap.get(&e)).fold(Rational::zero(), |a, b| a + b)
}

/// Odd vertex subsets `S` (one per complementary pair when the graph has an
/// even number of vertices) with their cut values.
fn odd_cuts(g: &PlanarGraph, cap: &BTreeMap<EdgeId, Rational>) -> Vec<(BTreeSet<VertexId>, Rational)> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        if mask.count_ones() % 2 == 0 || mask == (1u32 << n) - 1 {
            continue;
        }
        // with n even both sides are odd; keep the side without the last vertex
        if n.is_multiple_of(2) && mask >> (n - 1) & 1 == 1 {
            continue;
        }
        let s = members(&ids, mask);
        let value = cut_value(g, cap, &s);
        out.push((s, value));
    }
    out
}

/// Lightest odd cut found by trying every odd subset; ties go to the
/// smallest side, then the lexicographically smallest.
pub fn brute_min_odd_cut(
    g: &PlanarGraph,
    cap: &BTreeMap<EdgeId, Rational>,
) -> Result<Option<(Rational, BTreeSet<VertexId>)>, OracleError> {
    limit("odd cut", SUBSET_LIMIT, g)?;
    let all = g.vertex_set();
    let mut best: Option<(Rational, BTreeSet<VertexId>)> = None;
    for (s, value) in odd_cuts(g, cap) {
        let other: BTreeSet<VertexId> = all.difference(&s).copied().collect();
        let side = if other.len() % 2 == 1 && (other.len() < s.len() || (other.len() == s.len() && other < s)) {
            other
        } else {
            s
        };
        let better = match &best {
            None => true,
            Some((bv, bs)) => {
                value < *bv || (value == *bv && (side.len() < bs.len() || (side.len() == bs.len() && side < *bs)))
            }
        };
        if better {
            best = Some((value, side));
        }
    }
    Ok(best)
}

/// Minimum `s`-`t` cut value, trying every side that holds `s` and not `t`.
pub fn brute_min_st_cut(
    g: &PlanarGraph,
    cap: &BTreeMap<EdgeId, Rational>,
    s: VertexId,
    t: VertexId,
) -> Result<Rational, OracleError> {
    limit("s-t cut", SUBSET_LIMIT, g)?;
    let ids: Vec<VertexId> = g.vertices().collect();
    let (si, ti) = (ids.iter().position(|&v| v == s).unwrap(), ids.iter().position(|&v| v == t).unwrap());
    let mut best: Option<Rational> = None;
    for mask in 0u32..(1u32 << ids.len()) {
        if mask >> si & 1 == 0 || mask >> ti & 1 == 1 {
            continue;
        }
        let value = cut_value(g, cap, &members(&ids, mask));
        if best.as_ref().is_none_or(|b| value < *b) {
            best = Some(value);
        }
    }
    Ok(best.expect("s and t differ"))
}

/// Outcome of checking a point against every constraint of the perfect
/// matching polytope.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolytopeCheck {
    pub negative: Vec<EdgeId>,
    pub bad_degree: Vec<VertexId>,
    /// Odd sets with cut value below 1.
    pub violated: Vec<BTreeSet<VertexId>>,
    /// Odd sets with cut value exactly 1, singletons included.
    pub tight: Vec<BTreeSet<VertexId>>,
    pub min_odd_cut: Option<Rational>,
}

impl PolytopeCheck {
    pub fn is_member(&self) -> bool {
        self.negative.is_empty() && self.bad_degree.is_empty() && self.violated.is_empty()
    }
}

pub fn brute_polytope_check(x: &FractionalPoint, g: &PlanarGraph) -> Result<PolytopeCheck, OracleError> {
    limit("polytope", SUBSET_LIMIT, g)?;
    let cap: BTreeMap<EdgeId, Rational> = g.edge_ids().map(|e| (e, x.get(e))).collect();
    let mut report = PolytopeCheck {
        negative: cap.iter().filter(|(_, v)| v.is_negative()).map(|(e, _)| *e).collect(),
        ..PolytopeCheck::default()
    };
    for v in g.vertices() {
        if !cut_value(g, &cap, &BTreeSet::from([v])).is_one() {
            report.bad_degree.push(v);
        }
    }
    for (s, value) in odd_cuts(g, &cap) {
        if value < Rational::one() {
            report.violated.push(s.clone());
        } else if value.is_one() {
            report.tight.push(s.clone());
        }
        if report.min_odd_cut.as_ref().is_none_or(|m| value < *m) {
            report.min_odd_cut = Some(value);
        }
    }
    Ok(report)
}

/// `χ_W`: coefficient -1 on the first traversed edge, then alternating,
/// summed over repeated edges.
pub fn walk_signs(walk: &EvenWalk) -> BTreeMap<EdgeId, i64> {
    let mut out = BTreeMap::new();
    for (i, &e) in walk.edges.iter().enumerate() {
        *out.entry(e).or_insert(0) += if i % 2 == 0 { -1 } else { 1 };
    }
    out
}

/// `x + eps χ_W` over the edges of `g`.
pub fn rotated(g: &PlanarGraph, x: &FractionalPoint, walk: &EvenWalk, eps: &Rational) -> BTreeMap<EdgeId, Rational> {
    let signs = walk_signs(walk);
    g.edge_ids()
        .map(|e| {
            let c = signs.get(&e).copied().unwrap_or(0);
            (e, x.get(e) + eps * BigInt::from(c))
        })
        .collect()
}

/// Average of the minimum-weight perfect matchings, by enumeration.
pub fn brute_average(g: &PlanarGraph, w: &EdgeWeights) -> Result<Option<BTreeMap<EdgeId, Rational>>, OracleError> {
    let en = enumerate_perfect_matchings(g, w)?;
    if en.min_count == 0 {
        return Ok(None);
    }
    let m = BigInt::from(en.min_count);
    Ok(Some(en.per_edge.iter().map(|(&e, &c)| (e, Rational::new(BigInt::from(c), m.clone()))).collect()))
}

/// Whether `m` is a perfect matching of `g`: every edge exists and every
/// vertex is covered exactly once.
pub fn validate_matching(g: &PlanarGraph, m: &BTreeSet<EdgeId>) -> bool {
    let mut hits: BTreeMap<VertexId, usize> = g.vertices().map(|v| (v, 0)).collect();
    for (e, u, v) in g.edges() {
        if m.contains(&e) {
            *hits.get_mut(&u).unwrap() += 1;
            *hits.get_mut(&v).unwrap() += 1;
        }
    }
    let known = m.iter().all(|&e| g.has_edge(e));
    known && hits.values().all(|&h| h == 1)
}

pub fn matching_weight(m: &BTreeSet<EdgeId>, w: &EdgeWeights) -> u64 {
    m.iter().map(|e| w.get(e).copied().unwrap_or(0)).sum()
}
