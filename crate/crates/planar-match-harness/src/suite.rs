//! Oracle comparisons over a corpus, and an observer that checks every
//! blocking set, parity graph and reduction the driver reports.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use planar_match::cuts::{gomory_hu_tree, min_odd_cut, min_odd_cut_any, Capacities};
use planar_match::driver::{min_weight_perfect_matching, perfect_matching, AlgorithmConfig, DriverError};
use planar_match::graph::{EdgeId, EdgeWeights, PlanarGraph, VertexId};
use planar_match::observer::{BlockingEvent, Observer, ReduceEvent};
use planar_match::pfaffian::{avg_point, count_matchings};
use planar_match::polytope::{check_membership, FractionalPoint, MembershipMode};
use planar_match::uncross::{Direction, IntersectionParityGraph};
use planar_match::Rational;
use rayon::prelude::*;

use crate::corpus::CorpusEntry;
use crate::generators::random_weights;
use crate::oracles::{
    brute_average, brute_min_odd_cut, brute_min_st_cut, brute_polytope_check, cut_value, enumerate_perfect_matchings,
    matching_weight, rotated, validate_matching, walk_signs,
};

/// One comparison of a library result against an oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub check: &'static str,
    pub instance: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl OracleReport {
    fn new(check: &'static str, instance: &str, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        OracleReport { check, instance: instance.to_string(), expected, actual, pass }
    }
}

/// Size limits for the oracle checks.
#[derive(Clone, Debug)]
pub struct SuiteLimits {
    pub count: usize,
    pub weight_vectors: usize,
    pub polytope_brute: usize,
    pub polytope_cuts: usize,
    pub gomory_hu: usize,
    pub odd_cut: usize,
    pub existence: usize,
    pub min_weight: usize,
}

impl Default for SuiteLimits {
    fn default() -> Self {
        SuiteLimits {
            count: 14,
            weight_vectors: 5,
            polytope_brute: 12,
            polytope_cuts: 60,
            gomory_hu: 12,
            odd_cut: 14,
            existence: 20,
            min_weight: 16,
        }
    }
}

/// Graphs above this size only get random weights up to 3: exact counting
/// with weights near `|V|^2` on them takes minutes.
pub const LARGE_WEIGHT_LIMIT: usize = 16;

/// Weight vectors for an instance: all zeros, the instance's own weights
/// and seeded random vectors, alternately bounded by 3 and by `|V|^2` (by 3
/// only above [`LARGE_WEIGHT_LIMIT`] vertices).
pub fn weight_vectors(g: &PlanarGraph, own: Option<&EdgeWeights>, count: usize, seed: u64) -> Vec<EdgeWeights> {
    let mut out = vec![g.edge_ids().map(|e| (e, 0)).collect::<EdgeWeights>()];
    if let Some(w) = own {
        out.push(w.clone());
    }
    let n = g.vertex_count();
    let max = if n <= LARGE_WEIGHT_LIMIT { (n * n) as u64 } else { 3 };
    let mut k = 0;
    while out.len() < count {
        out.push(random_weights(g, if k % 2 == 0 { 3 } else { max }, seed.wrapping_mul(31).wrapping_add(k)));
        k += 1;
    }
    out
}

fn unit_caps(g: &PlanarGraph) -> Capacities {
    g.edge_ids().map(|e| (e, Rational::one())).collect()
}

fn point_caps(g: &PlanarGraph, x: &FractionalPoint) -> Capacities {
    g.edge_ids().map(|e| (e, x.get(e))).collect()
}

/// Runs every oracle check that fits the size limits, instances in
/// parallel. Reports come back in corpus order.
pub fn run_suite(corpus: &[CorpusEntry], cfg: &AlgorithmConfig, limits: &SuiteLimits) -> Vec<OracleReport> {
    corpus
        .par_iter()
        .map(|entry| check_instance(entry, cfg, limits))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn check_instance(entry: &CorpusEntry, cfg: &AlgorithmConfig, limits: &SuiteLimits) -> Vec<OracleReport> {
    let name = entry.to_string();
    let inst = match entry.build() {
        Ok(i) => i,
        Err(e) => return vec![OracleReport::new("generate", &name, "ok", e)],
    };
    let g = &inst.graph;
    let n = g.vertex_count();
    let mut out = Vec::new();
    let weights = weight_vectors(g, inst.weights.as_ref(), limits.weight_vectors, entry.seed);

    if n <= limits.count {
        for (k, w) in weights.iter().enumerate() {
            let en = enumerate_perfect_matchings(g, w).expect("within limit");
            let expected = format!(
                "d={:?} m={} per_edge={:?}",
                en.min_weight.map(|x| 2 * x),
                en.min_count,
                en.per_edge.values().collect::<Vec<_>>()
            );
            let actual = match count_matchings(g, w) {
                Ok(c) => format!(
                    "d={:?} m={} per_edge={:?}",
                    c.det_degree,
                    c.total,
                    g.edge_ids().map(|e| c.per_edge.get(&e).cloned().unwrap_or_default()).collect::<Vec<BigUint>>()
                ),
                Err(e) => e.to_string(),
            };
            out.push(OracleReport::new("count", &format!("{name} w{k}"), expected, actual));
        }
    }

    let has_pm = if n <= limits.existence {
        Some(enumerate_perfect_matchings(g, &EdgeWeights::new()).expect("within limit").count > 0)
    } else {
        None
    };

    if n <= limits.polytope_cuts && has_pm != Some(false) {
        for (k, w) in weights.iter().enumerate() {
            let Ok(x) = avg_point(g, w) else {
                out.push(OracleReport::new("avg-membership", &format!("{name} w{k}"), "point", "no matching"));
                continue;
            };
            if n <= limits.polytope_brute {
                let check = brute_polytope_check(&x, g).expect("within limit");
                out.push(OracleReport::new("avg-membership", &format!("{name} w{k}"), true, check.is_member()));
                let avg = brute_average(g, w).expect("within limit").expect("has a matching");
                let same = g.edge_ids().all(|e| avg[&e] == x.get(e));
                out.push(OracleReport::new("avg-point", &format!("{name} w{k}"), true, same));
            } else {
                let report = check_membership(&x, g, MembershipMode::CutBased);
                out.push(OracleReport::new("avg-membership", &format!("{name} w{k}"), true, report.is_member()));
            }
        }
    }

    if n <= limits.gomory_hu && n >= 2 && g.is_connected() {
        let caps = match has_pm {
            Some(true) => {
                vec![unit_caps(g), point_caps(g, &avg_point(g, &EdgeWeights::new()).expect("has a matching"))]
            }
            _ => vec![unit_caps(g)],
        };
        for (k, cap) in caps.iter().enumerate() {
            let tree = gomory_hu_tree(g, cap).expect("connected graph");
            let ids: Vec<VertexId> = g.vertices().collect();
            let mut bad = Vec::new();
            for (i, &u) in ids.iter().enumerate() {
                for &v in &ids[i + 1..] {
                    let want = brute_min_st_cut(g, cap, u, v).expect("within limit");
                    if tree.path_min(u, v) != Some(want.clone()) {
                        bad.push((u, v));
                    }
                }
            }
            out.push(OracleReport::new("gomory-hu", &format!("{name} c{k}"), "[]", format!("{bad:?}")));
            let bound = usize::BITS - (n - 1).leading_zeros();
            out.push(OracleReport::new(
                "gomory-hu-rounds",
                &format!("{name} c{k}"),
                true,
                tree.rounds <= bound as usize,
            ));
        }
    }

    if n <= limits.odd_cut && n % 2 == 0 && n >= 2 {
        let mut caps = vec![unit_caps(g)];
        if has_pm == Some(true) {
            for w in &weights {
                caps.push(point_caps(g, &avg_point(g, w).expect("has a matching")));
            }
        }
        for (k, cap) in caps.iter().enumerate() {
            let want = brute_min_odd_cut(g, cap).expect("within limit").map(|(v, _)| v);
            let got = min_odd_cut(g, cap).ok().map(|c| {
                assert_eq!(cut_value(g, cap, &c.side), c.weight, "reported side has the reported weight");
                c.weight
            });
            out.push(OracleReport::new(
                "min-odd-cut",
                &format!("{name} c{k}"),
                format!("{want:?}"),
                format!("{got:?}"),
            ));
        }
    }

    let result = perfect_matching(g, cfg);
    match (&result, has_pm) {
        (Ok(r), _) => out.push(OracleReport::new("matching", &name, true, validate_matching(g, &r.matching))),
        (Err(DriverError::NoPerfectMatching), Some(false)) => {
            out.push(OracleReport::new("matching", &name, "none", "none"))
        }
        (Err(DriverError::NoPerfectMatching), None) => {}
        (Err(e), _) => out.push(OracleReport::new("matching", &name, "matching", e)),
    }

    if n <= limits.min_weight && has_pm == Some(true) {
        for (k, w) in weights.iter().enumerate() {
            let en = enumerate_perfect_matchings(g, w).expect("within limit");
            let actual = match min_weight_perfect_matching(g, w, cfg) {
                Ok(r) if validate_matching(g, &r.matching) => format!("{}", matching_weight(&r.matching, w)),
                Ok(_) => "invalid matching".to_string(),
                Err(e) => e.to_string(),
            };
            out.push(OracleReport::new(
                "min-weight",
                &format!("{name} w{k}"),
                en.min_weight.expect("has a matching"),
                actual,
            ));
        }
    }
    out
}

/// A failed check seen by [`Recorder`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

/// Tallies and failures collected from the driver's observer hooks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub blocking_events: usize,
    pub blocking_exhaustive: usize,
    pub blocking_brute_agreement: usize,
    pub parity_graphs: usize,
    pub reduce_calls: usize,
    pub reduce_with_sets: usize,
    pub reduce_exits: usize,
    pub surviving_walks: usize,
    pub contracted_sets: usize,
    pub violations: Vec<Violation>,
}

/// Observer that checks each event against the oracles as it happens.
#[derive(Default)]
pub struct Recorder {
    tally: Mutex<Tally>,
    pub exhaustive_limit: usize,
    pub agreement_limit: usize,
}

impl Recorder {
    pub fn new() -> Self {
        Recorder { tally: Mutex::new(Tally::default()), exhaustive_limit: 16, agreement_limit: 14 }
    }

    pub fn tally(&self) -> Tally {
        self.tally.lock().unwrap().clone()
    }

    fn fail(t: &mut Tally, check: &'static str, detail: String) {
        t.violations.push(Violation { check, detail });
    }
}

fn odd_intersection_graph_ok(sets: &[BTreeSet<VertexId>]) -> (bool, bool) {
    let k = sets.len();
    let adj = |i: usize, j: usize| sets[i].intersection(&sets[j]).count() % 2 == 1;
    let mut color = vec![None; k];
    let mut bipartite = true;
    for s in 0..k {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if i != j && adj(i, j) {
                    match color[j] {
                        None => {
                            color[j] = Some(!color[i].unwrap());
                            stack.push(j);
                        }
                        Some(c) if c == color[i].unwrap() => bipartite = false,
                        _ => {}
                    }
                }
            }
        }
    }
    let mut triangle_free = true;
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                if adj(a, b) && adj(b, c) && adj(a, c) {
                    triangle_free = false;
                }
            }
        }
    }
    (bipartite, triangle_free)
}

impl Observer for Recorder {
    fn parity_graph(&self, h: &IntersectionParityGraph) {
        let (bipartite, triangle_free) = odd_intersection_graph_ok(&h.sets);
        let mut t = self.tally.lock().unwrap();
        t.parity_graphs += 1;
        if !bipartite || !triangle_free {
            Self::fail(&mut t, "parity-graph", format!("sets {:?}", h.sets));
        }
    }

    fn blocking_set(&self, ev: &BlockingEvent<'_>) {
        let g = ev.graph;
        let n = g.vertex_count();
        let eps = Rational::new(BigInt::one(), BigInt::from(4 * n as u64) * BigInt::from(ev.count.clone()));
        let eps = match ev.direction {
            Direction::Forward => eps,
            Direction::Backward => -eps,
        };
        let y = rotated(g, ev.point, ev.walk, &eps);
        let x_caps: Capacities = g.edge_ids().map(|e| (e, ev.point.get(e))).collect();
        let mut problems = Vec::new();

        // condition 1: degrees stay 1
        if g.vertices().any(|v| !cut_value(g, &y, &BTreeSet::from([v])).is_one()) {
            problems.push(("rotation-degree", String::new()));
        }
        // condition 3: no negative entries
        if y.values().any(|v| v.is_negative()) {
            problems.push(("rotation-nonnegative", String::new()));
        }
        // condition 2 and the violation, exhaustively when small enough
        let exhaustive = n <= self.exhaustive_limit;
        if exhaustive {
            let ids: Vec<VertexId> = g.vertices().collect();
            let mut violated = false;
            for mask in 1u32..(1u32 << n) {
                if mask.count_ones() % 2 == 0 {
                    continue;
                }
                let s: BTreeSet<VertexId> =
                    ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect();
                let xv = cut_value(g, &x_caps, &s);
                let yv = cut_value(g, &y, &s);
                if xv > Rational::one() && yv < Rational::one() {
                    problems.push(("rotation-slack", format!("{s:?}")));
                }
                if yv < Rational::one() {
                    violated = true;
                }
            }
            if !violated {
                problems.push(("rotation-blocked", String::new()));
            }
        } else {
            match min_odd_cut_any(g, &y) {
                Some(c) if c.weight < Rational::one() => {
                    if !cut_value(g, &x_caps, &c.side).is_one() {
                        problems.push(("rotation-slack", format!("{:?}", c.side)));
                    }
                }
                _ => problems.push(("rotation-blocked", String::new())),
            }
        }

        // the blocking set itself
        let s = &ev.set.set;
        let signs = walk_signs(ev.walk);
        let chi: i64 = g.cut_edges(s).iter().map(|e| signs.get(e).copied().unwrap_or(0)).sum();
        if s.len().is_multiple_of(2) || !cut_value(g, &x_caps, s).is_one() || chi == 0 {
            problems.push(("blocking-set", format!("{s:?}")));
        }
        let agree = n <= self.agreement_limit;
        if agree {
            let brute = brute_min_odd_cut(g, &y).expect("within limit").map(|(v, _)| v);
            if brute != Some(cut_value(g, &y, s)) {
                problems.push(("blocking-brute", format!("{s:?} brute {brute:?}")));
            }
        }

        let mut t = self.tally.lock().unwrap();
        t.blocking_events += 1;
        t.blocking_exhaustive += exhaustive as usize;
        t.blocking_brute_agreement += agree as usize;
        for (check, detail) in problems {
            Self::fail(&mut t, check, detail);
        }
    }

    fn reduce(&self, ev: &ReduceEvent<'_>) {
        let g = ev.graph;
        let caps: Capacities = g.edge_ids().map(|e| (e, ev.point.get(e))).collect();
        let mut problems = Vec::new();
        if !ev.ended_early && ev.edges_after >= ev.edges_before {
            problems.push(("reduce-shrink", format!("{} -> {}", ev.edges_before, ev.edges_after)));
        }
        for (i, a) in ev.sets.iter().enumerate() {
            if a.set.len() % 2 == 0 || !cut_value(g, &caps, &a.set).is_one() {
                problems.push(("uncross-tight", format!("{:?}", a.set)));
            }
            for b in &ev.sets[i + 1..] {
                if !a.set.is_disjoint(&b.set) {
                    problems.push(("uncross-disjoint", format!("{:?} {:?}", a.set, b.set)));
                }
            }
        }
        if !ev.sets.is_empty() {
            for w in ev.surviving {
                let inside = w.edges.iter().any(|&e| {
                    let [u, v] = g.endpoints(e);
                    ev.sets.iter().any(|s| s.set.contains(&u) && s.set.contains(&v))
                });
                if !inside {
                    problems.push(("uncross-containment", format!("walk from {}", w.start)));
                }
            }
        }
        let mut t = self.tally.lock().unwrap();
        t.reduce_calls += 1;
        t.reduce_with_sets += !ev.sets.is_empty() as usize;
        t.reduce_exits += ev.ended_early as usize;
        t.surviving_walks += ev.surviving.len();
        t.contracted_sets += ev.sets.iter().filter(|s| s.set.len() > 1).count();
        for (check, detail) in problems {
            Self::fail(&mut t, check, detail);
        }
    }
}

/// Whether `depth <= log_{1/(1-c1)} n + 2`, decided exactly as
/// `(1 / (1 - c1))^(depth - 2) <= n`.
pub fn depth_within_bound(depth: usize, n: usize, c1: &Rational) -> bool {
    if depth <= 2 {
        return true;
    }
    let base = Rational::one() / (Rational::one() - c1);
    let mut p = Rational::one();
    for _ in 0..depth - 2 {
        p *= &base;
    }
    p <= Rational::from_integer(BigInt::from(n))
}

/// Per-edge counts keyed by edge, as the library reports them.
pub fn per_edge_map(g: &PlanarGraph, counts: &BTreeMap<EdgeId, BigUint>) -> Vec<BigUint> {
    g.edge_ids().map(|e| counts.get(&e).cloned().unwrap_or_else(BigUint::zero)).collect()
}
